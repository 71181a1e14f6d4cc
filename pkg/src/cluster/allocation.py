"""Placement of fragments on simulated nodes."""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List

from ..errors import (AllocationIncompleteError, InvalidParameterError, ManifestError,
                      StrategyMismatchError)
from ..fragmentation import Manifest

logger = logging.getLogger(__name__)


class AllocationStrategy(str, Enum):
    ROUND_ROBIN = 'round-robin'
    RANGE = 'range'


@dataclass
class Allocation:
    """fragment_id -> 0-based node index."""

    node_count: int
    placement: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.node_count < 1:
            raise InvalidParameterError(f"node count must be positive, got {self.node_count}")
        for fragment_id, node in self.placement.items():
            if not 0 <= node < self.node_count:
                raise InvalidParameterError(
                    f"fragment {fragment_id} placed on node {node} of {self.node_count}")

    def node_of(self, fragment_id: str) -> int:
        try:
            return self.placement[fragment_id]
        except KeyError:
            raise AllocationIncompleteError(f"fragment {fragment_id} is not allocated") from None

    def fragments_on(self, node: int) -> List[str]:
        return [fid for fid, placed in self.placement.items() if placed == node]

    def check_complete(self, manifest: Manifest) -> None:
        missing = [fid for fid in manifest.fragment_ids() if fid not in self.placement]
        if missing:
            raise AllocationIncompleteError(f"fragments without a node: {', '.join(missing)}")

    def to_dict(self) -> Dict[str, Any]:
        return {'node_count': self.node_count, 'placement': dict(self.placement)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Allocation':
        try:
            return cls(int(data['node_count']),
                       {str(k): int(v) for k, v in data['placement'].items()})
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ManifestError(f"malformed allocation: {exc}") from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def save(self, path: Path) -> None:
        Path(path).write_text(self.to_json(), encoding='utf-8')

    @classmethod
    def load(cls, path: Path) -> 'Allocation':
        try:
            data = json.loads(Path(path).read_text(encoding='utf-8'))
        except json.JSONDecodeError as exc:
            raise ManifestError(f"allocation {path} is not valid JSON: {exc}") from None
        return cls.from_dict(data)


def allocate(m: Manifest, node_count: int,
             strategy: AllocationStrategy = AllocationStrategy.ROUND_ROBIN) -> Allocation:
    """Place every manifest fragment on one of ``node_count`` nodes.

    Round-robin walks the manifest in order. Range spreads the ranged
    fragments (ordinal or value ranges) over the nodes in manifest order,
    fragment j of n going to node ``j * node_count // n``; any other
    fragment, such as a remainder, goes to the last node.

    Raises:
        InvalidParameterError: node_count < 1
        StrategyMismatchError: Range strategy on a manifest without ranges
    """
    if node_count < 1:
        raise InvalidParameterError(f"node count must be positive, got {node_count}")
    strategy = AllocationStrategy(strategy)

    if strategy is AllocationStrategy.ROUND_ROBIN:
        placement = {fid: index % node_count for index, fid in enumerate(m.fragment_ids())}
    else:
        ranged = [entry.fragment_id for entry in m.fragments if entry.ranged]
        if not ranged:
            raise StrategyMismatchError(
                f"range allocation needs range fragments, manifest model is {m.model!r}")
        placement = {fid: j * node_count // len(ranged) for j, fid in enumerate(ranged)}
        for fid in m.fragment_ids():
            placement.setdefault(fid, node_count - 1)

    logger.info("Allocated %d fragments to %d nodes (%s)", len(placement), node_count,
                strategy.value)
    return Allocation(node_count, placement)
