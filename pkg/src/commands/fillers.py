"""``fillers``: encode a document into holes and fillers, or decode them back."""

import logging
from pathlib import Path

from ..addressing import parse_address
from ..cluster import decode_fillers, encode_fillers, read_fillers, write_fillers
from ..config import Config
from ..models import serialize_document
from ..utils.cleanup import OutputTransaction
from .common import load_annotated, require

logger = logging.getLogger(__name__)


def register(subparsers, common) -> None:
    parser = subparsers.add_parser('fillers', parents=[common],
                                   help='Split a document into fillers or rebuild it')
    parser.add_argument('--cut', action='append', default=[],
                        help='Address of a subtree to cut into a filler (repeatable)')
    parser.add_argument('--decode', action='store_true',
                        help='Rebuild the document from --in/fillers into --out')
    parser.add_argument('--hole-tag', default=Config.HOLE_TAG,
                        help=f'Hole element name (default: {Config.HOLE_TAG})')
    parser.set_defaults(handler=cmd_fillers)


def cmd_fillers(args) -> int:
    """Encode ``--in`` into ``--out/fillers``, or with ``--decode`` read
    ``--in/fillers`` and write the document to ``--out``."""
    require(args, 'input', 'out')
    if args.decode:
        decoded = decode_fillers(read_fillers(Path(args.input)), args.hole_tag)
        with OutputTransaction() as tx:
            tx.write_bytes(Path(args.out), serialize_document(decoded.tree))
        logger.info("✅ Decoded %s", args.out)
        return 0

    cuts = [parse_address(text) for text in args.cut]
    fillers = encode_fillers(load_annotated(Path(args.input), args.attr), cuts, args.hole_tag)
    write_fillers(Path(args.out), fillers)
    logger.info("✅ Encoded %d fillers", len(fillers))
    return 0
