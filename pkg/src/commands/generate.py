"""``generate``: write a synthetic book catalogue."""

import logging
from pathlib import Path

from ..config import Config
from ..errors import UsageError
from ..models import serialize_document
from ..utils.cleanup import OutputTransaction
from ..utils.generator import generate_books
from .common import doc_id_for, require

logger = logging.getLogger(__name__)


def register(subparsers, common) -> None:
    parser = subparsers.add_parser('generate', parents=[common],
                                   help='Generate a books document')
    parser.add_argument('--records', type=int, required=True, help='Number of book records')
    parser.add_argument('--chapters', type=int, default=Config.CHAPTERS,
                        help=f'Chapters per book (default: {Config.CHAPTERS})')
    parser.add_argument('--price-min', type=float, default=Config.PRICE_MIN,
                        help=f'Lowest price (default: {Config.PRICE_MIN})')
    parser.add_argument('--price-max', type=float, default=Config.PRICE_MAX,
                        help=f'Highest price (default: {Config.PRICE_MAX})')
    parser.set_defaults(handler=cmd_generate)


def cmd_generate(args) -> int:
    require(args, 'out')
    if args.records < 0:
        raise UsageError(f"generate: --records must not be negative, got {args.records}")
    if args.price_min > args.price_max:
        raise UsageError("generate: --price-min exceeds --price-max")

    out = Path(args.out)
    tree = generate_books(args.records, args.seed, args.chapters, args.price_min,
                          args.price_max, doc_id_for(out))
    with OutputTransaction() as tx:
        tx.write_bytes(out, serialize_document(tree))
    logger.info("✅ Generated %d books (seed %d) -> %s", args.records, args.seed, out)
    return 0
