"""
Tests for hoprep.
"""
