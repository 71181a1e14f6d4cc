"""Query workload model: usage and affinity matrices, grouping, cost."""

from .cost import CostParams, query_cost, total_query_cost
from .grouping import affinity_grouping, group_affinity
from .matrices import (ElementAffinityMatrix, ElementUsageMatrix, Query, QueryWorkload,
                       build_eam, build_eum, load_workload)

__all__ = [
    'CostParams',
    'ElementAffinityMatrix',
    'ElementUsageMatrix',
    'Query',
    'QueryWorkload',
    'affinity_grouping',
    'build_eam',
    'build_eum',
    'group_affinity',
    'load_workload',
    'query_cost',
    'total_query_cost',
]
