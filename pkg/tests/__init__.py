"""
Test suite for memolab.
"""
