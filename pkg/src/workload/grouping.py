"""Affinity-driven grouping of record children into vertical fragment candidates."""

import logging
from itertools import combinations
from typing import List, Sequence

from ..errors import InvalidKError
from .matrices import ElementAffinityMatrix

logger = logging.getLogger(__name__)


def group_affinity(a: ElementAffinityMatrix, left: Sequence[int], right: Sequence[int]) -> float:
    """Sum of affinities across two groups."""
    return float(a.aff[list(left)][:, list(right)].sum())


def affinity_grouping(a: ElementAffinityMatrix, record_children: Sequence[int],
                      k: int) -> List[List[int]]:
    """Greedily merge singleton groups until ``k`` groups remain.

    Each step merges the pair with the largest cross affinity; ties go to
    the smaller merged group, then to the pair containing the lowest tag type.

    Args:
        a: Element affinity matrix
        record_children: Tag types of the record's child elements, in order
        k: Number of groups wanted

    Returns:
        Groups of tag types, each sorted, ordered by their smallest member

    Raises:
        InvalidKError: k outside 1..len(record_children)
    """
    children = list(dict.fromkeys(record_children))
    if not children:
        raise InvalidKError("no record children to group")
    if not 1 <= k <= len(children):
        raise InvalidKError(f"k must be between 1 and {len(children)}, got {k}")

    groups = [[tag_type] for tag_type in children]
    while len(groups) > k:
        best = min(
            combinations(range(len(groups)), 2),
            key=lambda pair: (
                -group_affinity(a, groups[pair[0]], groups[pair[1]]),
                len(groups[pair[0]]) + len(groups[pair[1]]),
                sorted(groups[pair[0]] + groups[pair[1]]),
            ),
        )
        i, j = best
        merged = sorted(groups[i] + groups[j])
        logger.debug("Merging %s and %s", groups[i], groups[j])
        groups = [g for index, g in enumerate(groups) if index not in best] + [merged]

    return sorted((sorted(g) for g in groups), key=lambda g: g[0])
