"""Utility modules for LabelFrag."""

from .cleanup import OutputTransaction
from .generator import generate_books, random_document

__all__ = ['OutputTransaction', 'generate_books', 'random_document']
