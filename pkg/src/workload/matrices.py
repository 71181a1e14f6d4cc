"""Query workloads, Element Usage Matrix and Element Affinity Matrix."""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import FrozenSet, Sequence, Tuple

import numpy as np

from ..addressing import TagSchema
from ..errors import InvalidParameterError, UnknownElementError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Query:
    """One workload query: the element types it reads and how often it runs."""

    query_id: str
    elements: FrozenSet[int]
    freq: float

    def __post_init__(self):
        if not self.freq > 0:
            raise InvalidParameterError(f"query {self.query_id}: frequency must be positive")


@dataclass(frozen=True)
class QueryWorkload:
    queries: Tuple[Query, ...] = ()

    def __len__(self) -> int:
        return len(self.queries)

    def __iter__(self):
        return iter(self.queries)

    @classmethod
    def from_names(cls, schema: TagSchema,
                   entries: Sequence[Tuple[str, Sequence[str], float]]) -> 'QueryWorkload':
        """Build a workload from (id, tag names, frequency) triples."""
        return cls(tuple(Query(query_id, frozenset(schema.tag_type(name) for name in names), freq)
                         for query_id, names, freq in entries))


def load_workload(path: Path, schema: TagSchema) -> QueryWorkload:
    """Read a workload file: a JSON list of ``{"id", "elements", "freq"}`` objects.

    Tag names are resolved against ``schema``.

    Raises:
        UnknownElementError: A tag name is not in the schema
        InvalidParameterError: Malformed entry or non-positive frequency
    """
    data = json.loads(Path(path).read_text(encoding='utf-8'))
    if not isinstance(data, list):
        raise InvalidParameterError(f"workload {path} must be a JSON list")
    try:
        entries = [(str(item['id']), list(item['elements']), float(item['freq'])) for item in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParameterError(f"malformed workload entry in {path}: {exc}") from None
    workload = QueryWorkload.from_names(schema, entries)
    logger.debug("Loaded %d queries from %s", len(workload), path)
    return workload


@dataclass(frozen=True)
class ElementUsageMatrix:
    """``use[q, e]`` is 1 when query q reads element type e."""

    query_ids: Tuple[str, ...]
    use: np.ndarray
    freq: np.ndarray


@dataclass(frozen=True)
class ElementAffinityMatrix:
    """``aff[i, j]``: total frequency of queries reading both element types."""

    aff: np.ndarray

    def __getitem__(self, key):
        return self.aff[key]

    @property
    def size(self) -> int:
        return self.aff.shape[0]


def build_eum(w: QueryWorkload, schema: TagSchema) -> ElementUsageMatrix:
    columns = len(schema)
    use = np.zeros((len(w), columns), dtype=np.int64)
    for row, query in enumerate(w):
        for tag_type in query.elements:
            if not 0 <= tag_type < columns:
                raise UnknownElementError(f"query {query.query_id} uses unknown tag type {tag_type}")
            use[row, tag_type] = 1
    freq = np.array([query.freq for query in w], dtype=float)
    return ElementUsageMatrix(tuple(query.query_id for query in w), use, freq)


def build_eam(m: ElementUsageMatrix) -> ElementAffinityMatrix:
    """aff[i, j] = sum over queries of freq * use[q, i] * use[q, j]."""
    weighted = m.use.T * m.freq
    return ElementAffinityMatrix(weighted @ m.use)

