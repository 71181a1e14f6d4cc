"""Total query cost: storage (bytes scanned) plus transport (bytes shipped)."""

import logging
from dataclasses import dataclass
from typing import Dict, Mapping, Optional

from ..cluster.allocation import Allocation
from ..errors import InvalidParameterError
from ..fragmentation import Manifest
from .matrices import Query, QueryWorkload

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CostParams:
    """alpha: cost per byte scanned at a site; beta: cost per byte shipped."""

    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise InvalidParameterError("cost weights must be non-negative")


def query_cost(query: Query, manifest: Manifest, allocation: Allocation, params: CostParams,
               fragment_bytes: Mapping[str, int]) -> float:
    """Cost of one execution of ``query``, frequency not applied."""
    per_node: Dict[int, int] = {}
    for entry in manifest.fragments:
        if query.elements.isdisjoint(entry.tag_types):
            continue
        node = allocation.node_of(entry.fragment_id)
        per_node[node] = per_node.get(node, 0) + fragment_bytes[entry.fragment_id]

    scanned = sum(per_node.values())
    shipped = scanned - max(per_node.values()) if len(per_node) > 1 else 0
    return params.alpha * scanned + params.beta * shipped


def total_query_cost(manifest: Manifest, allocation: Allocation, w: QueryWorkload,
                     params: CostParams,
                     fragment_bytes: Optional[Mapping[str, int]] = None) -> float:
    """Sum over queries of freq * (alpha * bytes scanned + beta * bytes shipped).

    A query scans every fragment holding one of its element types. When those
    fragments span several nodes, everything outside the node with the
    largest share is shipped.

    Args:
        manifest: Fragment manifest
        allocation: Node placement of every fragment
        w: Query workload
        params: Cost weights
        fragment_bytes: Bytes per fragment id; defaults to the manifest sizes

    Returns:
        Non-negative total cost

    Raises:
        AllocationIncompleteError: Some fragment has no node
    """
    allocation.check_complete(manifest)
    if fragment_bytes is None:
        fragment_bytes = {entry.fragment_id: entry.bytes for entry in manifest.fragments}

    total = 0.0
    for query in w:
        cost = query_cost(query, manifest, allocation, params, fragment_bytes)
        logger.debug("Query %s: %.2f per execution", query.query_id, cost)
        total += query.freq * cost
    return total
