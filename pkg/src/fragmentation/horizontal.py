"""Horizontal fragmentation: whole records selected by predicate or label range."""

import logging
from decimal import Decimal
from typing import Dict, List, Optional, Sequence, Tuple

from ..addressing import AnnotatedTree
from ..errors import InvalidParameterError, PredicateSyntaxError, UnknownPathError
from ..models import ElementNode
from .fragment import Fragment, FragmentModel, rooted_fragment
from .manifest import Manifest, build_manifest
from .predicate import (Selection, SimplePredicate, as_decimal, evaluate_predicate,
                        format_path, leaves, parse_path, selection_strings, terms_of)

logger = logging.getLogger(__name__)

REMAINDER_SUFFIX = 'rest'


def _check_record_path(t: AnnotatedTree, selections: Sequence[Selection]) -> Optional[str]:
    """Record tag shared by all path predicates (None when there are none)."""
    record_tags = set()
    for selection in selections:
        for term in terms_of(selection):
            if not isinstance(term, SimplePredicate):
                continue
            if term.path[0] != t.root.tag:
                raise UnknownPathError(f"{format_path(term.path)} does not start at "
                                       f"<{t.root.tag}>")
            record_tags.add(term.record_tag)
    if len(record_tags) > 1:
        raise PredicateSyntaxError(
            f"predicates address different record collections: {sorted(record_tags)}")
    return record_tags.pop() if record_tags else None


def predicate_guards(records: Sequence[ElementNode],
                     selection: Selection) -> Dict[str, Dict[str, bool]]:
    """Per predicate path: are all leaves numeric, and does each record have at most one?"""
    guards = {}
    for term in terms_of(selection):
        if not isinstance(term, SimplePredicate):
            continue
        numeric, single = True, True
        for record in records:
            found = list(leaves(record, term.path[2:]))
            if len(found) > 1:
                single = False
            if any(as_decimal(leaf.text) is None for leaf in found):
                numeric = False
        guards[format_path(term.path)] = {'numeric': numeric, 'single': single}
    return guards


def horizontal_fragment(t: AnnotatedTree,
                        predicates: Sequence[Selection]) -> Tuple[List[Fragment], Manifest]:
    """Select records into one fragment per predicate, f_i = E(σ p_i).

    Records satisfying no predicate go to a remainder fragment. Records
    satisfying several are placed with the lowest-index predicate and their
    addresses are reported in ``manifest.overlaps``.
    """
    selections = list(predicates)
    _check_record_path(t, selections)

    buckets: List[List[ElementNode]] = [[] for _ in selections]
    rest: List[ElementNode] = []
    overlaps: List[str] = []
    for record in t.root.children:
        hits = [i for i, s in enumerate(selections) if evaluate_predicate(record, s, t.attr_name)]
        if not hits:
            rest.append(record)
            continue
        buckets[hits[0]].append(record)
        if len(hits) > 1:
            overlaps.append(record.get(t.attr_name))

    if overlaps:
        logger.warning("Completeness violation: %d records satisfy more than one predicate: %s",
                       len(overlaps), ', '.join(overlaps[:10]))

    fragments = []
    for index, (selection, records) in enumerate(zip(selections, buckets), start=1):
        meta = {'predicates': selection_strings(selection),
                'guards': predicate_guards(records, selection)}
        fragments.append(rooted_fragment(t.root, records, f"h{index}",
                                         FragmentModel.HORIZONTAL, t.doc_id, meta))
    if rest:
        fragments.append(rooted_fragment(t.root, rest, f"h-{REMAINDER_SUFFIX}",
                                         FragmentModel.HORIZONTAL, t.doc_id, {'remainder': True}))

    params = {'predicates': [str(s) for s in selections]}
    return fragments, build_manifest(t, 'horizontal', params, fragments, overlaps=overlaps)


def _split_sizes(total: int, parts: int) -> List[int]:
    base, extra = divmod(total, parts)
    return [base + 1 if i < extra else base for i in range(parts)]


def horizontal_range_fragment(t: AnnotatedTree, n_parts: int) -> Tuple[List[Fragment], Manifest]:
    """Split records into ``n_parts`` contiguous ranges of leading ordinal.

    The record count is read off the labels (the largest leading ordinal at
    depth 1); range sizes differ by at most one and trailing ranges are empty
    when there are fewer records than parts.
    """
    if n_parts < 1:
        raise InvalidParameterError(f"number of parts must be positive, got {n_parts}")
    records = t.root.children
    total = max((t.address_of(r).ordinals[0] for r in records), default=0)

    fragments = []
    start = 1
    for index, size in enumerate(_split_sizes(total, n_parts), start=1):
        ordinal_range = [start, start + size - 1] if size else None
        meta = {'ordinal_range': ordinal_range, 'ranged': True}
        fragments.append(rooted_fragment(t.root, records[start - 1:start - 1 + size],
                                         f"r{index}", FragmentModel.HORIZONTAL, t.doc_id, meta))
        start += size

    return fragments, build_manifest(t, 'range', {'parts': n_parts}, fragments)


def _tie_aware_cuts(values: Sequence[Decimal], parts: int) -> List[int]:
    """Start index of every group but the first, over sorted ``values``.

    Each cut aims at an even share of the values not yet grouped, then moves
    to the nearest index where the value changes so equal values share a group.
    """
    cuts: List[int] = []
    previous = 0
    for remaining in range(parts, 1, -1):
        target = previous + -(-(len(values) - previous) // remaining)
        back = forward = target
        while previous < back < len(values) and values[back] == values[back - 1]:
            back -= 1
        while forward < len(values) and values[forward] == values[forward - 1]:
            forward += 1
        previous = back if back > previous and target - back < forward - target else forward
        cuts.append(previous)
    return cuts


def horizontal_quantile_fragment(t: AnnotatedTree, path: str,
                                 n_parts: int) -> Tuple[List[Fragment], Manifest]:
    """Split records into ``n_parts`` near-equal-count value ranges of the leaf at ``path``.

    Records with exactly one numeric leaf at ``path`` are sorted by value and
    cut only where the value changes, so tied records share a fragment and
    group sizes may differ by more than one (trailing groups may be empty).
    Each group becomes a fragment described by the predicates ``path >= min``
    and ``path <= max``. Other records go to a remainder fragment.
    """
    if n_parts < 1:
        raise InvalidParameterError(f"number of parts must be positive, got {n_parts}")
    steps = parse_path(path)
    if len(steps) < 2 or steps[0] != t.root.tag:
        raise UnknownPathError(f"{path} does not address records of <{t.root.tag}>")

    ranked: List[Tuple[Decimal, int, ElementNode]] = []
    rest: List[ElementNode] = []
    for ordinal, record in enumerate(t.root.children, start=1):
        found = list(leaves(record, steps[2:])) if record.tag == steps[1] else []
        value = as_decimal(found[0].text) if len(found) == 1 else None
        if value is None:
            rest.append(record)
        else:
            ranked.append((value, ordinal, record))
    ranked.sort(key=lambda item: (item[0], item[1]))

    fragments = []
    values = [value for value, _, _ in ranked]
    bounds = [0] + _tie_aware_cuts(values, n_parts) + [len(ranked)]
    for index, (start, stop) in enumerate(zip(bounds, bounds[1:]), start=1):
        group = ranked[start:stop]
        meta = {'ranged': True, 'value_range': None, 'predicates': []}
        if group:
            low, high = str(group[0][0]), str(group[-1][0])
            meta['value_range'] = [low, high]
            meta['predicates'] = [f"{path} >= {low}", f"{path} <= {high}"]
            meta['guards'] = {path: {'numeric': True, 'single': True}}
        records = [record for _, _, record in sorted(group, key=lambda item: item[1])]
        fragments.append(rooted_fragment(t.root, records, f"q{index}",
                                         FragmentModel.HORIZONTAL, t.doc_id, meta))
    if rest:
        fragments.append(rooted_fragment(t.root, rest, f"q-{REMAINDER_SUFFIX}",
                                         FragmentModel.HORIZONTAL, t.doc_id, {'remainder': True}))

    params = {'path': path, 'parts': n_parts}
    return fragments, build_manifest(t, 'horizontal', params, fragments)
