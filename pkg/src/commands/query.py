"""``query``: route selection predicates over allocated fragments."""

import logging
from pathlib import Path

from ..cluster import route_query, skew_metric
from ..errors import UsageError
from ..fragmentation import parse_predicate
from .common import load_allocation, open_store, print_json, require

logger = logging.getLogger(__name__)


def register(subparsers, common) -> None:
    parser = subparsers.add_parser('query', parents=[common],
                                   help='Route a "path op value" query to the fragments')
    parser.add_argument('--predicate', action='append', default=[],
                        help='Query predicate (repeatable)')
    parser.set_defaults(handler=cmd_query)


def cmd_query(args) -> int:
    """Print the routing result of each predicate as JSON.

    One predicate prints ``{"nodes", "matches", "scanned"}``; several print
    the list of results together with the load skew across nodes.
    """
    require(args, 'input')
    if not args.predicate:
        raise UsageError("query: at least one --predicate is required")
    predicates = [parse_predicate(text) for text in args.predicate]

    store = open_store(args)
    allocation = load_allocation(Path(args.input), store.manifest)
    results = [route_query(p, store.manifest, allocation, store) for p in predicates]

    if len(results) == 1:
        print_json(results[0].to_dict())
    else:
        print_json({'results': [r.to_dict() for r in results],
                    'skew': skew_metric(results, allocation)})
    return 0
