"""Simulated distribution: allocation, routing, reassembly, holes and fillers."""

from .allocation import Allocation, AllocationStrategy, allocate
from .fillers import (DecodedDocument, Filler, FillerAssembler, decode_fillers, encode_fillers,
                      read_fillers, write_fillers)
from .reassembly import reassemble
from .routing import RoutingResult, is_pruned, node_loads, route_query, scan_fragment, skew_metric

__all__ = [
    'Allocation',
    'AllocationStrategy',
    'DecodedDocument',
    'Filler',
    'FillerAssembler',
    'RoutingResult',
    'allocate',
    'decode_fillers',
    'encode_fillers',
    'is_pruned',
    'node_loads',
    'read_fillers',
    'reassemble',
    'route_query',
    'scan_fragment',
    'skew_metric',
    'write_fillers',
]
