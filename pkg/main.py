"""
Run the memolab CLI from a source checkout: ``uv run main.py list``.
"""

from memolab.cli.main import main

if __name__ == "__main__":
    main(prog_name="memolab")
