"""``annotate``: label every element and write the tag schematic table."""

import logging
from pathlib import Path

from ..addressing import annotate
from ..models import serialize_document
from ..utils.cleanup import OutputTransaction
from .common import read_document, require

logger = logging.getLogger(__name__)


def register(subparsers, common) -> None:
    parser = subparsers.add_parser('annotate', parents=[common],
                                   help='Insert address labels and emit the tag schema')
    parser.add_argument('--schema-out', help='Schema JSON path (default: <out>.schema.json)')
    parser.set_defaults(handler=cmd_annotate)


def cmd_annotate(args) -> int:
    """Annotate ``--in`` into ``--out`` and write the schema file."""
    require(args, 'input', 'out')
    out = Path(args.out)
    schema_out = Path(args.schema_out) if args.schema_out else out.with_suffix('.schema.json')

    annotated = annotate(read_document(Path(args.input)), args.attr)
    with OutputTransaction() as tx:
        tx.write_bytes(out, serialize_document(annotated.tree))
        tx.write_text(schema_out, annotated.schema.to_json(args.attr))

    logger.info("✅ Annotated %d elements, %d tag types -> %s", annotated.root.element_count(),
                len(annotated.schema), out)
    return 0
