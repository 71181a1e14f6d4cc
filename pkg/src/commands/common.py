"""Helpers shared by the sub-commands."""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional

from ..addressing import AnnotatedTree, annotate, is_annotated, recover
from ..cluster import Allocation
from ..config import Config
from ..database import FragmentStore
from ..errors import UsageError
from ..fragmentation import Manifest
from ..models import XmlTree, parse_document

logger = logging.getLogger(__name__)


def require(args, *names: str) -> None:
    """Fail with a usage error when a required flag is missing."""
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"{args.command}: --{name.replace('_', '-')} is required")


def doc_id_for(path: Path) -> str:
    return Path(path).name.split('.')[0] or Config.DOC_ID


def read_document(path: Path) -> XmlTree:
    path = Path(path)
    return parse_document(path.read_bytes(), doc_id_for(path))


def load_annotated(path: Path, attr_name: str) -> AnnotatedTree:
    """Read a document, reusing its labels when it is already annotated."""
    tree = read_document(path)
    if is_annotated(tree, attr_name):
        logger.debug("%s already carries %r labels", path, attr_name)
        return recover(tree, attr_name)
    return annotate(tree, attr_name)


def manifest_path(args) -> Path:
    if args.manifest is not None:
        return Path(args.manifest)
    return Path(args.input) / Config.MANIFEST_NAME


def open_store(args) -> FragmentStore:
    return FragmentStore.open(Path(args.input), Manifest.load(manifest_path(args)))


def load_allocation(directory: Path, manifest: Manifest) -> Allocation:
    """The allocation stored next to the fragments, or everything on one node."""
    path = Path(directory) / Config.ALLOCATION_NAME
    if path.is_file():
        return Allocation.load(path)
    logger.info("No %s in %s, assuming a single node", Config.ALLOCATION_NAME, directory)
    return Allocation(1, {fid: 0 for fid in manifest.fragment_ids()})


def print_json(data: Any, stream: Optional[Any] = None) -> None:
    print(json.dumps(data, indent=2), file=stream or sys.stdout)
