"""Vertical (projection) and hybrid fragmentation."""

import logging
from typing import List, Sequence, Tuple

from ..addressing import AnnotatedTree
from ..config import Config
from ..errors import EmptyProjectionError, LabelingConflictError
from ..models import ElementNode, XmlTree
from .fragment import Fragment, FragmentModel, container_fragment
from .horizontal import horizontal_fragment
from .manifest import Link, Manifest, build_manifest
from .predicate import PathSelector, Selection

logger = logging.getLogger(__name__)


def check_ref_attr(t: AnnotatedTree, ref_attr: str) -> None:
    if ref_attr == t.attr_name:
        raise LabelingConflictError(f"reference attribute {ref_attr!r} is the label attribute")
    for node in t.tree.iter():
        if node.has_attribute(ref_attr):
            raise LabelingConflictError(
                f"element {node.get(t.attr_name)} already carries attribute {ref_attr!r}")


def _project(t: AnnotatedTree, selector: PathSelector,
             ref_attr: str) -> Tuple[ElementNode, List[ElementNode], List[Tuple[str, str]]]:
    """Cut every subtree matching ``selector`` out of ``t``.

    Returns the remainder root, the cut subtrees in document order and
    (parent label, cut label) pairs. Each parent that lost children records
    their labels, space separated, in ``ref_attr``.
    """
    path = selector.path
    units: List[ElementNode] = []
    pairs: List[Tuple[str, str]] = []

    def cut(node: ElementNode, depth: int) -> ElementNode:
        if depth == len(path) - 2:
            kept, removed = [], []
            for child in node.children:
                (removed if child.tag == path[-1] else kept).append(child)
            if not removed:
                return node
            parent_label = node.get(t.attr_name)
            labels = [child.get(t.attr_name) for child in removed]
            units.extend(removed)
            pairs.extend((parent_label, label) for label in labels)
            return node.with_children(kept).with_attribute(ref_attr, ' '.join(labels))
        return node.with_children([cut(child, depth + 1) if child.tag == path[depth + 1] else child
                                   for child in node.children])

    if t.root.tag != path[0]:
        return t.root, units, pairs
    return cut(t.root, 0), units, pairs


def vertical_fragment(t: AnnotatedTree, selector: PathSelector,
                      ref_attr: str = Config.REF_ATTR) -> Tuple[Fragment, Fragment, Manifest]:
    """Project the subtrees matching ``selector`` out of every record, f = E(π ρ).

    The projected subtrees keep their labels and are appended, in document
    order, under a new root named after the selector's last step. Each cut
    point in the remainder gains ``ref_attr`` holding the labels it lost.

    Raises:
        EmptyProjectionError: Selector matches no element
        LabelingConflictError: Some element already carries ``ref_attr``
    """
    check_ref_attr(t, ref_attr)
    remainder_root, units, pairs = _project(t, selector, ref_attr)
    if not units:
        raise EmptyProjectionError(f"selector {selector} matches no element of {t.doc_id}")

    meta = {'selector': str(selector)}
    remainder = Fragment('v0', FragmentModel.VERTICAL_REMAINDER,
                         XmlTree(remainder_root, t.doc_id), t.doc_id, (), dict(meta))
    projected = container_fragment(units, selector.path[-1], selector.path[:-1], 'v1',
                                   FragmentModel.VERTICAL_PROJECTED, t.doc_id, dict(meta))
    links = [Link(parent, label, projected.fragment_id) for parent, label in pairs]
    params = {'selector': str(selector), 'ref_attr': ref_attr}
    manifest = build_manifest(t, 'vertical', params, [remainder, projected], links, ref_attr)
    return remainder, projected, manifest


def hybrid_fragment(t: AnnotatedTree, predicates: Sequence[Selection], selector: PathSelector,
                    ref_attr: str = Config.REF_ATTR) -> Tuple[List[Fragment], Manifest]:
    """Horizontal fragmentation followed by projection inside every horizontal
    fragment, f_i = f_a(π ρ_i): two fragments per horizontal fragment."""
    check_ref_attr(t, ref_attr)
    horizontal, horizontal_manifest = horizontal_fragment(t, predicates)

    fragments: List[Fragment] = []
    links: List[Link] = []
    projected_total = 0
    for part in horizontal:
        remainder_root, units, pairs = _project(t.with_tree(part.content), selector, ref_attr)
        projected_total += len(units)
        meta = dict(part.meta, selector=str(selector))
        remainder = Fragment(f"{part.fragment_id}.v0", FragmentModel.HYBRID,
                             XmlTree(remainder_root, t.doc_id), t.doc_id, (),
                             dict(meta))
        projected = container_fragment(units, selector.path[-1], selector.path[:-1],
                                       f"{part.fragment_id}.v1", FragmentModel.HYBRID,
                                       t.doc_id, dict(meta))
        fragments.extend([remainder, projected])
        links.extend(Link(parent, label, projected.fragment_id) for parent, label in pairs)

    if not projected_total:
        raise EmptyProjectionError(f"selector {selector} matches no element of {t.doc_id}")

    params = {'predicates': horizontal_manifest.params['predicates'],
              'selector': str(selector), 'ref_attr': ref_attr}
    manifest = build_manifest(t, 'hybrid', params, fragments, links, ref_attr,
                              horizontal_manifest.overlaps)
    return fragments, manifest
