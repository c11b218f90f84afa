"""Corpus-to-classifier toolkit for personality prediction from forum comments."""

__version__ = "0.1.0"
