"""Structure histogram over a fragment set."""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Sequence

import numpy as np

from ..errors import EmptyInputError
from ..models import max_fanout, subtree_byte_size, tree_height
from .fragment import Fragment

logger = logging.getLogger(__name__)


def coefficient_of_variation(values: Sequence[float]) -> float:
    """Population standard deviation over mean; 0 for an all-zero or empty sample."""
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        return 0.0
    mean = data.mean()
    if mean == 0:
        return 0.0
    return float(data.std() / mean)


def byte_bucket(size: int) -> int:
    """Upper bound of the power-of-two bucket holding ``size``."""
    bound = 1
    while bound < size:
        bound *= 2
    return bound


@dataclass(frozen=True)
class FragmentShape:
    fragment_id: str
    bytes: int
    elements: int
    height: int
    max_fanout: int
    flagged: bool = False
    skeleton: bool = False


@dataclass(frozen=True)
class StructureHistogram:
    shapes: List[FragmentShape]
    buckets: Dict[int, int]
    min_bytes: int
    max_bytes: int
    mean_bytes: float
    cv: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            'fragments': [asdict(shape) for shape in self.shapes],
            'histogram': {str(bound): count for bound, count in sorted(self.buckets.items())},
            'min': self.min_bytes,
            'max': self.max_bytes,
            'mean': self.mean_bytes,
            'cv': self.cv,
        }


def fragment_stats(fragments: Sequence[Fragment]) -> StructureHistogram:
    """Measure each fragment and bucket the byte sizes by powers of two.

    Raises:
        EmptyInputError: No fragments given
    """
    if not fragments:
        raise EmptyInputError("cannot summarize an empty fragment set")

    shapes = []
    for fragment in fragments:
        root = fragment.content.root
        shapes.append(FragmentShape(
            fragment_id=fragment.fragment_id,
            bytes=subtree_byte_size(root),
            elements=root.element_count(),
            height=tree_height(root),
            max_fanout=max_fanout(root),
            flagged=bool(fragment.meta.get('flagged', False)),
            skeleton=bool(fragment.meta.get('skeleton', False)),
        ))

    sizes = np.array([shape.bytes for shape in shapes], dtype=float)
    buckets: Dict[int, int] = {}
    for shape in shapes:
        bound = byte_bucket(shape.bytes)
        buckets[bound] = buckets.get(bound, 0) + 1

    histogram = StructureHistogram(
        shapes=shapes,
        buckets=buckets,
        min_bytes=int(sizes.min()),
        max_bytes=int(sizes.max()),
        mean_bytes=float(sizes.mean()),
        cv=coefficient_of_variation(sizes),
    )
    logger.debug("Histogram over %d fragments: cv=%.4f", len(shapes), histogram.cv)
    return histogram
