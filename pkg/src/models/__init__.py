"""Ordered XML element trees: parse, serialize, compare, measure."""

from .parser import parse_document
from .serializer import (child_byte_sizes, serialize_document, serialize_node, subtree_byte_size,
                         to_lxml)
from .tree import (ElementNode, XmlTree, max_fanout, strip_attributes, structural_equal,
                   tree_height)

__all__ = [
    'ElementNode',
    'XmlTree',
    'child_byte_sizes',
    'max_fanout',
    'parse_document',
    'serialize_document',
    'serialize_node',
    'strip_attributes',
    'structural_equal',
    'subtree_byte_size',
    'to_lxml',
    'tree_height',
]
