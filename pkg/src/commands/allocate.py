"""``allocate``: place fragments on simulated nodes (``nodes/node-<k>/``)."""

import logging
from pathlib import Path

from ..cluster import AllocationStrategy, allocate
from ..config import Config
from ..errors import UsageError
from ..utils.cleanup import OutputTransaction
from .common import open_store, require

logger = logging.getLogger(__name__)


def register(subparsers, common) -> None:
    parser = subparsers.add_parser('allocate', parents=[common],
                                   help='Distribute fragments over nodes')
    parser.add_argument('--nodes', type=int, required=True, help='Number of nodes')
    parser.add_argument('--strategy', default=AllocationStrategy.ROUND_ROBIN.value,
                        choices=[s.value for s in AllocationStrategy],
                        help='Placement strategy (default: round-robin)')
    parser.set_defaults(handler=cmd_allocate)


def cmd_allocate(args) -> int:
    """Allocate the fragments in ``--in``; the node layout goes to ``--out``
    (default: the input directory)."""
    require(args, 'input')
    if args.nodes < 1:
        raise UsageError(f"allocate: --nodes must be positive, got {args.nodes}")
    out = Path(args.out or args.input)

    store = open_store(args)
    store.require_complete()
    allocation = allocate(store.manifest, args.nodes, AllocationStrategy(args.strategy))

    with OutputTransaction() as tx:
        store.place(out, allocation.placement, tx)
        tx.write_text(out / Config.ALLOCATION_NAME, allocation.to_json())

    for node in range(allocation.node_count):
        logger.info("📦 node-%d: %s", node, ', '.join(allocation.fragments_on(node)) or '-')
    return 0

