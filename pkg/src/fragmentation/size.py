"""Structure-and-size fragmentation: sibling accumulation and SimpleX."""

import logging
from typing import Dict, List, Tuple

from ..addressing import AnnotatedTree
from ..config import Config
from ..errors import InvalidParameterError
from ..models import ElementNode, XmlTree, subtree_byte_size
from .fragment import Fragment, FragmentModel, container_fragment, rooted_fragment
from .manifest import Link, Manifest, build_manifest
from .predicate import SizeConstraints
from .vertical import check_ref_attr

logger = logging.getLogger(__name__)


def fragment_by_size(t: AnnotatedTree, threshold: int) -> Tuple[List[Fragment], Manifest]:
    """Group consecutive record subtrees into buckets of at most ``threshold`` bytes.

    A record larger than the threshold is emitted alone and flagged oversize.
    """
    if threshold <= 0:
        raise InvalidParameterError(f"size threshold must be positive, got {threshold}")

    buckets: List[Tuple[List[ElementNode], bool]] = []
    current: List[ElementNode] = []
    current_bytes = 0
    for record in t.root.children:
        size = subtree_byte_size(record)
        if size > threshold:
            if current:
                buckets.append((current, False))
                current, current_bytes = [], 0
            buckets.append(([record], True))
        elif current_bytes + size <= threshold:
            current.append(record)
            current_bytes += size
        else:
            buckets.append((current, False))
            current, current_bytes = [record], size
    if current or not buckets:
        buckets.append((current, False))

    fragments = [
        rooted_fragment(t.root, records, f"s{index}", FragmentModel.SIZE, t.doc_id,
                        {'bucket': index, 'flagged': flagged})
        for index, (records, flagged) in enumerate(buckets, start=1)
    ]
    oversize = sum(1 for _, flagged in buckets if flagged)
    if oversize:
        logger.info("%d records exceed the %d byte threshold", oversize, threshold)
    return fragments, build_manifest(t, 'size', {'threshold': threshold}, fragments)


class _Shape:
    """Height and fanout of every subtree, bytes on demand."""

    def __init__(self, root: ElementNode):
        self.height: Dict[int, int] = {}
        self.fanout: Dict[int, int] = {}
        self._bytes: Dict[int, int] = {}
        self._measure(root)

    def _measure(self, root: ElementNode) -> None:
        pending = [(root, False)]
        while pending:
            node, expanded = pending.pop()
            if not expanded:
                pending.append((node, True))
                pending.extend((child, False) for child in node.children)
                continue
            height, fanout = 1, len(node.children)
            for child in node.children:
                height = max(height, self.height[id(child)] + 1)
                fanout = max(fanout, self.fanout[id(child)])
            self.height[id(node)] = height
            self.fanout[id(node)] = fanout

    def bytes(self, node: ElementNode) -> int:
        key = id(node)
        if key not in self._bytes:
            self._bytes[key] = subtree_byte_size(node)
        return self._bytes[key]

    def fits(self, node: ElementNode, c: SizeConstraints) -> bool:
        return (self.height[id(node)] <= c.max_depth
                and self.fanout[id(node)] <= c.max_width
                and self.bytes(node) <= c.max_size)


def simplex_fragment(t: AnnotatedTree, c: SizeConstraints,
                     ref_attr: str = Config.REF_ATTR) -> Tuple[List[Fragment], Manifest]:
    """Top-down SimpleX: cut the highest subtrees meeting all three constraints.

    Elements above the cuts form a skeleton fragment whose cut points carry
    ``ref_attr``; it is marked ``skeleton`` and, as it need not meet the
    constraints, flagged when it does not. A leaf that violates the
    constraints is cut anyway and flagged, which bounds the descent.
    """
    check_ref_attr(t, ref_attr)
    shape = _Shape(t.root)
    params = {'max_size': c.max_size, 'max_width': c.max_width, 'max_depth': c.max_depth,
              'ref_attr': ref_attr}

    if shape.fits(t.root, c) or t.root.is_leaf:
        whole = rooted_fragment(t.root, t.root.children, 'x0', FragmentModel.SIZE, t.doc_id,
                                {'flagged': not shape.fits(t.root, c)})
        return [whole], build_manifest(t, 'simplex', params, [whole])

    cuts: List[Tuple[ElementNode, Tuple[str, ...], str, bool]] = []

    def descend(node: ElementNode, tags: Tuple[str, ...]) -> ElementNode:
        kept, refs = [], []
        for child in node.children:
            fits = shape.fits(child, c)
            if fits or child.is_leaf:
                cuts.append((child, tags, node.get(t.attr_name), not fits))
                refs.append(child.get(t.attr_name))
            else:
                kept.append(descend(child, tags + (child.tag,)))
        trimmed = node.with_children(kept)
        return trimmed.with_attribute(ref_attr, ' '.join(refs)) if refs else trimmed

    skeleton_root = descend(t.root, (t.root.tag,))
    skeleton_fits = _Shape(skeleton_root).fits(skeleton_root, c)
    skeleton_meta = {'flagged': not skeleton_fits, 'skeleton': True}
    skeleton = Fragment('x0', FragmentModel.VERTICAL_REMAINDER, XmlTree(skeleton_root, t.doc_id),
                        t.doc_id, (), skeleton_meta)
    fragments = [skeleton]
    links = []
    for index, (node, context, parent_label, flagged) in enumerate(cuts, start=1):
        fragment = container_fragment([node], node.tag, context, f"x{index}", FragmentModel.SIZE,
                                      t.doc_id, {'flagged': flagged})
        fragments.append(fragment)
        links.append(Link(parent_label, node.get(t.attr_name), fragment.fragment_id))

    logger.debug("SimpleX cut %d subtrees out of %s", len(cuts), t.doc_id)
    return fragments, build_manifest(t, 'simplex', params, fragments, links, ref_attr)
