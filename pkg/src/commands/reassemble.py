"""``reassemble``: merge a fragment set back into one document."""

import logging
from pathlib import Path

from ..cluster import reassemble
from ..models import XmlTree, serialize_document, strip_attributes
from ..utils.cleanup import OutputTransaction
from .common import open_store, require

logger = logging.getLogger(__name__)


def register(subparsers, common) -> None:
    parser = subparsers.add_parser('reassemble', parents=[common],
                                   help='Rebuild the document from its fragments')
    parser.add_argument('--strip', action='store_true',
                        help='Remove address labels from the output')
    parser.set_defaults(handler=cmd_reassemble)


def cmd_reassemble(args) -> int:
    require(args, 'input', 'out')
    store = open_store(args)
    tree = reassemble(store.manifest, store)
    if args.strip:
        tree = XmlTree(strip_attributes(tree.root, {store.manifest.attr_name}), tree.doc_id)

    with OutputTransaction() as tx:
        tx.write_bytes(Path(args.out), serialize_document(tree))
    logger.info("✅ Reassembled %d elements -> %s", tree.root.element_count(), args.out)
    return 0
