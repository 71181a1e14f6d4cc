"""Addressing process: one full traversal labels every element."""

import logging
from dataclasses import dataclass, replace
from typing import Dict, Iterator, List, Tuple

from ..config import Config
from ..errors import AddressSyntaxError, InvalidParameterError, LabelingConflictError
from ..models import ElementNode, XmlTree, strip_attributes
from .address import Address, format_address, parse_address
from .pattern import AddressPattern
from .schema import TagSchema

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AnnotatedTree:
    """A tree in which every element carries an address label."""

    tree: XmlTree
    schema: TagSchema
    attr_name: str = Config.ADDRESS_ATTR

    @property
    def root(self) -> ElementNode:
        return self.tree.root

    @property
    def doc_id(self) -> str:
        return self.tree.doc_id

    def address_of(self, node: ElementNode) -> Address:
        label = node.get(self.attr_name)
        if label is None:
            raise AddressSyntaxError(f"<{node.tag}> carries no {self.attr_name!r} label")
        return parse_address(label)

    def labeled(self) -> Iterator[Tuple[ElementNode, Address]]:
        """Yield (element, address) pairs in document order."""
        for node in self.tree.iter():
            yield node, self.address_of(node)

    def strip(self) -> XmlTree:
        """The input document without labels."""
        return XmlTree(strip_attributes(self.tree.root, {self.attr_name}), self.tree.doc_id)

    def with_tree(self, tree: XmlTree) -> 'AnnotatedTree':
        return replace(self, tree=tree)


def _tag_path(tags: List[str]) -> str:
    return '/' + '/'.join(tags)


def annotate(tree: XmlTree, attr_name: str = Config.ADDRESS_ATTR) -> AnnotatedTree:
    """Insert an address label into every element and build the tag schema.

    Tag types are assigned in order of first encounter during a depth-first
    document-order traversal, the root receiving type 0.

    Raises:
        LabelingConflictError: Some element already carries ``attr_name``
    """
    types: Dict[str, int] = {}

    def visit(node: ElementNode, ordinals: Tuple[int, ...], tags: List[str]) -> ElementNode:
        tags = tags + [node.tag]
        if node.has_attribute(attr_name):
            where = '.'.join(map(str, ordinals)) or 'root'
            raise LabelingConflictError(
                f"element {_tag_path(tags)} ({where}) already carries attribute {attr_name!r}")
        tag_type = types.setdefault(node.tag, len(types))
        label = format_address(Address(ordinals, tag_type))
        children = tuple(visit(child, ordinals + (position,), tags)
                         for position, child in enumerate(node.children, start=1))
        return replace(node, attributes=node.attributes + ((attr_name, label),), children=children)

    root = visit(tree.root, (), [])
    schema = TagSchema(tuple(sorted(types, key=types.get)))
    logger.debug("Annotated %s: %d tag types", tree.doc_id, len(schema))
    return AnnotatedTree(XmlTree(root, tree.doc_id), schema, attr_name)


def recover(tree: XmlTree, attr_name: str = Config.ADDRESS_ATTR) -> AnnotatedTree:
    """Rebuild the AnnotatedTree of a document that already carries labels.

    The schema is read back from the tag types in the labels; labels must be
    present on every element, agree with element positions and map tag names
    to types one-to-one.
    """
    names: Dict[int, str] = {}

    def check(node: ElementNode, ordinals: Tuple[int, ...]) -> None:
        label = node.get(attr_name)
        if label is None:
            raise LabelingConflictError(f"<{node.tag}> carries no {attr_name!r} label")
        address = parse_address(label)
        if address.ordinals != ordinals:
            raise LabelingConflictError(f"label {label} on <{node.tag}> does not match its position")
        known = names.setdefault(address.tag_type, node.tag)
        if known != node.tag:
            raise LabelingConflictError(
                f"tag type {address.tag_type} used for both <{known}> and <{node.tag}>")
        for position, child in enumerate(node.children, start=1):
            check(child, ordinals + (position,))

    check(tree.root, ())
    if sorted(names) != list(range(len(names))) or len(set(names.values())) != len(names):
        raise LabelingConflictError("labels do not form a complete tag schema")
    schema = TagSchema(tuple(names[t] for t in range(len(names))))
    return AnnotatedTree(tree, schema, attr_name)


def is_annotated(tree: XmlTree, attr_name: str = Config.ADDRESS_ATTR) -> bool:
    return tree.root.has_attribute(attr_name)


def record_count(t: AnnotatedTree, depth: int, tag_type: int) -> int:
    """Largest leading ordinal among labels at ``depth`` with ``tag_type``.

    Raises:
        InvalidParameterError: ``depth`` is below 1 (the root has no ordinals)
    """
    if depth < 1:
        raise InvalidParameterError(f"record depth must be at least 1, got {depth}")
    best = 0
    for _, address in t.labeled():
        if address.depth == depth and address.tag_type == tag_type:
            best = max(best, address.ordinals[0])
    return best


def select_by_pattern(t: AnnotatedTree, pattern: AddressPattern) -> List[Address]:
    """Addresses matching ``pattern``, in document order."""
    return [address for _, address in t.labeled() if pattern.matches(address)]
