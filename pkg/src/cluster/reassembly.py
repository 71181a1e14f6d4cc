"""Rebuild the annotated document from its fragments."""

import logging
from typing import Dict, Optional, Set, Tuple

from ..addressing import parse_address
from ..database import FragmentStore
from ..errors import LinkResolutionError
from ..fragmentation import Manifest
from ..models import ElementNode, XmlTree

logger = logging.getLogger(__name__)

Ordinals = Tuple[int, ...]


class _Slot:
    """Mutable stand-in for one original element while fragments are merged."""

    __slots__ = ('node', 'refs', 'children', 'source')

    def __init__(self, node: ElementNode, refs: Set[str], source: str):
        self.node = node
        self.refs = refs
        self.children: Dict[int, '_Slot'] = {}
        self.source = source

    def build(self) -> ElementNode:
        children = [self.children[k].build() for k in sorted(self.children)]
        return self.node.with_children(children)


class _Mirror:
    def __init__(self, attr_name: str, ref_attr: Optional[str]):
        self.attr_name = attr_name
        self.ref_attr = ref_attr
        self.slots: Dict[Ordinals, _Slot] = {}

    def ordinals_of(self, node: ElementNode, fragment_id: str) -> Ordinals:
        label = node.get(self.attr_name)
        if label is None:
            raise LinkResolutionError(f"unlabeled <{node.tag}> in fragment {fragment_id}")
        return parse_address(label).ordinals

    def _place(self, node: ElementNode, ordinals: Ordinals, fragment_id: str) -> _Slot:
        refs = set()
        if self.ref_attr and node.has_attribute(self.ref_attr):
            refs = set(node.get(self.ref_attr).split())
            node = node.without_attribute(self.ref_attr)
        slot = self.slots.get(ordinals)
        if slot is None:
            slot = _Slot(node.with_children(()), refs, fragment_id)
            self.slots[ordinals] = slot
            if ordinals:
                parent = self.slots.get(ordinals[:-1])
                if parent is None:
                    raise LinkResolutionError(
                        f"fragment {fragment_id}: no parent for element {node.get(self.attr_name)}")
                parent.children[ordinals[-1]] = slot
        else:
            slot.refs |= refs
        return slot

    def merge(self, node: ElementNode, fragment_id: str) -> None:
        stack = [node]
        while stack:
            current = stack.pop()
            self._place(current, self.ordinals_of(current, fragment_id), fragment_id)
            stack.extend(reversed(current.children))


def reassemble(m: Manifest, store: FragmentStore) -> XmlTree:
    """Merge all fragments of ``m`` back into one annotated tree.

    Root copies and skeletons are merged first, then cut subtrees are
    attached under the element their label names as parent, shallowest
    first. Reference attributes are checked against the manifest links and
    removed.

    Raises:
        IncompleteSetError: Fragments missing from the store
        LinkResolutionError: Dangling or unmatched reference
    """
    store.require_complete()
    mirror = _Mirror(m.attr_name, m.ref_attr)

    units = []
    for fragment in store.fragments():
        if fragment.is_rooted(m.attr_name):
            mirror.merge(fragment.content.root, fragment.fragment_id)
        else:
            units.extend((fragment.fragment_id, unit) for unit in fragment.units)
    if () not in mirror.slots:
        raise LinkResolutionError(f"no fragment of {m.origin} holds the document root")

    units.sort(key=lambda item: len(mirror.ordinals_of(item[1], item[0])))
    for fragment_id, unit in units:
        mirror.merge(unit, fragment_id)

    _check_links(m, mirror)
    root = mirror.slots[()].build()
    logger.info("🧩 Reassembled %s from %d fragments", m.origin, len(m.fragments))
    return XmlTree(root, m.origin)


def _check_links(m: Manifest, mirror: _Mirror) -> None:
    expected = {(link.remainder, link.ref): link.fragment_id for link in m.links}
    found = set()
    for slot in mirror.slots.values():
        label = slot.node.get(m.attr_name)
        for ref in slot.refs:
            if (label, ref) not in expected:
                raise LinkResolutionError(f"reference {ref} on {label} has no manifest link")
            found.add((label, ref))
    for (remainder, ref), fragment_id in expected.items():
        if (remainder, ref) not in found:
            raise LinkResolutionError(f"link {remainder} -> {ref} has no reference in a remainder")
        target = mirror.slots.get(parse_address(ref).ordinals)
        if target is None or target.source != fragment_id:
            raise LinkResolutionError(f"link {remainder} -> {ref} does not resolve in "
                                      f"fragment {fragment_id}")
