"""
Command-line interface: run scenarios, list them and plot their results.
"""

from .main import main

__all__ = ["main"]
