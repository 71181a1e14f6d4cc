"""``stats``: structure histogram of a fragment set, optionally workload cost."""

import logging
from pathlib import Path
from typing import List

from ..addressing import parse_address
from ..database import FragmentStore
from ..fragmentation import fragment_stats
from ..workload import (CostParams, affinity_grouping, build_eam, build_eum, load_workload,
                        total_query_cost)
from .common import load_allocation, open_store, print_json, require

logger = logging.getLogger(__name__)


def register(subparsers, common) -> None:
    parser = subparsers.add_parser('stats', parents=[common],
                                   help='Print the structure histogram of a fragment set')
    parser.add_argument('--workload', help='Workload JSON file')
    parser.add_argument('--groups', type=int, default=2,
                        help='Number of affinity groups (default: 2)')
    parser.add_argument('--alpha', type=float, default=1.0, help='Cost per byte scanned')
    parser.add_argument('--beta', type=float, default=1.0, help='Cost per byte shipped')
    parser.set_defaults(handler=cmd_stats)


def record_children(store: FragmentStore) -> List[int]:
    """Tag types of elements directly below the records, over all fragments."""
    found = set()
    attr_name = store.manifest.attr_name
    for fragment in store.fragments():
        for node in fragment.content.iter():
            label = node.get(attr_name)
            if label is None:
                continue
            address = parse_address(label)
            if address.depth == 2:
                found.add(address.tag_type)
    return sorted(found)


def cmd_stats(args) -> int:
    require(args, 'input')
    store = open_store(args)
    report = fragment_stats(store.fragments()).to_dict()

    if args.workload:
        manifest = store.manifest
        workload = load_workload(Path(args.workload), manifest.schema)
        affinity = build_eam(build_eum(workload, manifest.schema))
        groups = affinity_grouping(affinity, record_children(store), args.groups)
        allocation = load_allocation(Path(args.input), manifest)
        params = CostParams(args.alpha, args.beta)
        report['workload'] = {
            'groups': [[manifest.schema.tag_name(t) for t in group] for group in groups],
            'cost': total_query_cost(manifest, allocation, workload, params),
            'alpha': params.alpha,
            'beta': params.beta,
        }

    print_json(report)
    return 0
