"""Query routing with manifest-based fragment pruning, and load skew."""

import logging
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple, Union

from ..addressing import Address
from ..database import FragmentStore
from ..errors import UnknownPathError
from ..fragmentation import (Fragment, FragmentEntry, Manifest, Op, SimplePredicate,
                             as_decimal, coefficient_of_variation, compare, format_path, leaves,
                             parse_selection, terms_of)
from .allocation import Allocation

logger = logging.getLogger(__name__)

Bound = Union[Decimal, str]


@dataclass
class RoutingResult:
    nodes: List[int]
    matches: List[Address]
    scanned: int
    per_node: Dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'nodes': list(self.nodes),
            'matches': [str(address) for address in self.matches],
            'scanned': self.scanned,
        }


class _Interval:
    """Feasible values of one leaf under a set of comparisons.

    Bounds are decimals or strings, never mixed. Emptiness is only claimed
    when certain.
    """

    def __init__(self):
        self.low: Optional[Bound] = None
        self.low_inclusive = True
        self.high: Optional[Bound] = None
        self.high_inclusive = True
        self.excluded: Set[Bound] = set()

    def _raise_low(self, value: Bound, inclusive: bool) -> None:
        if self.low is None or value > self.low or (value == self.low and not inclusive):
            self.low, self.low_inclusive = value, inclusive

    def _lower_high(self, value: Bound, inclusive: bool) -> None:
        if self.high is None or value < self.high or (value == self.high and not inclusive):
            self.high, self.high_inclusive = value, inclusive

    def restrict(self, op: Op, value: Bound) -> None:
        if op is Op.EQ:
            self._raise_low(value, True)
            self._lower_high(value, True)
        elif op is Op.NE:
            self.excluded.add(value)
        elif op is Op.LT:
            self._lower_high(value, False)
        elif op is Op.LE:
            self._lower_high(value, True)
        elif op is Op.GT:
            self._raise_low(value, False)
        else:
            self._raise_low(value, True)

    def is_empty(self) -> bool:
        if self.low is None or self.high is None:
            return False
        if self.low > self.high:
            return True
        if self.low == self.high:
            return (not (self.low_inclusive and self.high_inclusive)
                    or self.low in self.excluded)
        return False


def _bound(value) -> Tuple[bool, Bound]:
    """(numeric, comparable value) of a predicate constant."""
    number = as_decimal(value)
    return (True, number) if number is not None else (False, str(value))


def is_pruned(entry: FragmentEntry, p: SimplePredicate) -> bool:
    """True when no record of the fragment can satisfy ``p``.

    Uses the fragment's own predicates on the same path. Numeric reasoning
    needs every leaf on the path to be numeric, and any reasoning needs at
    most one leaf per record; otherwise the fragment is kept.
    """
    path = format_path(p.path)
    guard = entry.guards.get(path)
    if not guard or not guard.get('single'):
        return False
    numeric, query_value = _bound(p.value)
    if numeric and not guard.get('numeric'):
        return False

    interval = _Interval()
    constrained = False
    for text in entry.predicates:
        for term in terms_of(parse_selection(text)):
            if not isinstance(term, SimplePredicate) or term.path != p.path:
                continue
            term_numeric, term_value = _bound(term.value)
            if term_numeric != numeric:
                continue
            interval.restrict(term.op, term_value)
            constrained = True
    if not constrained:
        return False
    interval.restrict(p.op, query_value)
    return interval.is_empty()


def _check_path(p: SimplePredicate, m: Manifest) -> int:
    """Tag type of the predicate's leaf step."""
    if p.path[0] != m.schema.entries[0]:
        raise UnknownPathError(f"{format_path(p.path)} does not start at <{m.schema.entries[0]}>")
    for tag in p.path:
        if tag not in m.schema:
            raise UnknownPathError(f"{format_path(p.path)}: no element <{tag}> in {m.origin}")
    return m.schema.tag_type(p.path[-1])


def _leading_ordinal(label: str) -> int:
    return int(label.split('/', 1)[0].split('.', 1)[0])


def scan_fragment(fragment: Fragment, p: SimplePredicate, attr_name: str,
                  ref_attr: Optional[str]) -> Set[int]:
    """Leading ordinals of the records in ``fragment`` with a leaf satisfying ``p``."""
    matched: Set[int] = set()
    if fragment.is_rooted(attr_name):
        for record in fragment.units:
            if p.evaluate(record, ref_attr):
                matched.add(_leading_ordinal(record.get(attr_name)))
        return matched

    depth = len(fragment.context) + 1
    if depth > len(p.path) or fragment.context != p.path[:depth - 1]:
        return matched
    for unit in fragment.units:
        if unit.tag != p.path[depth - 1]:
            continue
        if any(compare(leaf.text, p.op, p.value)
               for leaf in leaves(unit, p.path[depth:], ref_attr)):
            matched.add(_leading_ordinal(unit.get(attr_name)))
    return matched


def route_query(p: SimplePredicate, m: Manifest, a: Allocation,
                store: FragmentStore) -> RoutingResult:
    """Evaluate ``p`` over the fragment set, skipping fragments that cannot match.

    A fragment is skipped when it holds no records, lacks the predicate's
    leaf element type, or its own predicates contradict ``p``. The rest
    are scanned.

    Raises:
        UnknownPathError: Path does not exist in the document schema
        AllocationIncompleteError: Some fragment has no node
    """
    leaf_type = _check_path(p, m)
    a.check_complete(m)
    record_type = m.schema.tag_type(p.record_tag)

    nodes: Set[int] = set()
    per_node: Dict[int, Set[int]] = {}
    scanned: Set[int] = set()
    matched: Set[int] = set()
    for entry in m.fragments:
        if entry.records == 0 or leaf_type not in entry.tag_types:
            continue
        if is_pruned(entry, p):
            logger.debug("Pruned %s for %s", entry.fragment_id, p)
            continue
        fragment = store.get(entry.fragment_id)
        node = a.node_of(entry.fragment_id)
        nodes.add(node)
        ordinals = fragment.record_ordinals(m.attr_name)
        per_node.setdefault(node, set()).update(ordinals)
        scanned.update(ordinals)
        matched |= scan_fragment(fragment, p, m.attr_name, m.ref_attr)

    result = RoutingResult(
        nodes=sorted(nodes),
        matches=[Address((ordinal,), record_type) for ordinal in sorted(matched)],
        scanned=len(scanned),
        per_node={node: len(seen) for node, seen in per_node.items()},
    )
    logger.info("Query %s: %d matches, %d records scanned on nodes %s", p, len(result.matches),
                result.scanned, result.nodes)
    return result


def node_loads(results: Sequence[RoutingResult], a: Allocation) -> List[int]:
    loads = [0] * a.node_count
    for result in results:
        for node, load in result.per_node.items():
            loads[node] += load
    return loads


def skew_metric(results: Sequence[RoutingResult], a: Allocation) -> float:
    """Coefficient of variation of records scanned per node, 0 when nothing ran."""
    return coefficient_of_variation(node_loads(results, a))
