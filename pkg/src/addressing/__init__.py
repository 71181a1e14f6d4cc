"""Prefix-based address labels and the label algebra."""

from .address import (ROOT, Address, Relationship, format_address, parse_address,
                      relationship)
from .annotate import (AnnotatedTree, annotate, is_annotated, record_count, recover,
                       select_by_pattern)
from .pattern import AddressPattern, match_pattern
from .schema import TagSchema

__all__ = [
    'ROOT',
    'Address',
    'AddressPattern',
    'AnnotatedTree',
    'Relationship',
    'TagSchema',
    'annotate',
    'format_address',
    'is_annotated',
    'match_pattern',
    'parse_address',
    'record_count',
    'recover',
    'relationship',
    'select_by_pattern',
]
