"""Holes-and-fillers encoding: cut subtrees travel as separate fillers and are
substituted back into the holes that name them, in any arrival order."""

import contextlib
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set

from ..addressing import Address, AnnotatedTree
from ..config import Config
from ..errors import (DuplicateCutError, FillerCycleError, IncompleteStreamError,
                      InvalidCutError, InvalidParameterError)
from ..models import ElementNode, XmlTree, parse_document, serialize_document
from ..utils.cleanup import OutputTransaction

logger = logging.getLogger(__name__)

ROOT_FILLER = 'F0'


@dataclass(frozen=True)
class Filler:
    filler_id: str
    content: XmlTree


@dataclass(frozen=True)
class DecodedDocument:
    tree: XmlTree
    orphans: List[str] = field(default_factory=list)


def _hole(filler_id: str, tail: str, hole_tag: str, id_attr: str) -> ElementNode:
    return ElementNode(hole_tag, ((id_attr, filler_id),), (), '', tail)


def encode_fillers(t: AnnotatedTree, cut_addresses: Sequence[Address],
                   hole_tag: str = Config.HOLE_TAG,
                   id_attr: str = Config.HOLE_ID_ATTR) -> List[Filler]:
    """Cut the subtrees at ``cut_addresses`` into fillers F1..Fn.

    Fillers are numbered in document order. Each cut subtree is replaced in
    its enclosing filler by an empty ``hole_tag`` element whose ``id_attr``
    names the filler; the residual document is F0. Nested cuts are allowed.

    Raises:
        InvalidCutError: Cut at the root or at an address not in ``t``
        DuplicateCutError: Same address listed twice
        InvalidParameterError: ``hole_tag`` already names a document element
    """
    labels = [str(address) for address in cut_addresses]
    seen: Set[str] = set()
    for label in labels:
        if label in seen:
            raise DuplicateCutError(f"address {label} listed twice")
        seen.add(label)

    order = {}
    for node, address in t.labeled():
        if node.tag == hole_tag:
            raise InvalidParameterError(f"hole tag <{hole_tag}> is used by the document")
        order[str(address)] = len(order)
    for address in cut_addresses:
        if address.is_root:
            raise InvalidCutError("the document root cannot be cut into a filler")
        if str(address) not in order:
            raise InvalidCutError(f"address {address} does not exist in {t.doc_id}")

    ids = {label: f"F{index}"
           for index, label in enumerate(sorted(seen, key=order.__getitem__), start=1)}
    fillers: Dict[str, Filler] = {}

    def carve(node: ElementNode) -> ElementNode:
        children = []
        for child in node.children:
            filler_id = ids.get(child.get(t.attr_name))
            if filler_id is None:
                children.append(carve(child))
                continue
            fillers[filler_id] = Filler(filler_id, XmlTree(carve(child).with_tail(''), t.doc_id))
            children.append(_hole(filler_id, child.tail, hole_tag, id_attr))
        return node.with_children(children)

    residual = Filler(ROOT_FILLER, XmlTree(carve(t.root), t.doc_id))
    result = [residual] + [fillers[f"F{k}"] for k in range(1, len(ids) + 1)]
    logger.debug("Encoded %s into %d fillers", t.doc_id, len(result))
    return result


class FillerAssembler:
    """Collects fillers as they arrive and rebuilds the document once complete."""

    def __init__(self, hole_tag: str = Config.HOLE_TAG, id_attr: str = Config.HOLE_ID_ATTR):
        self.hole_tag = hole_tag
        self.id_attr = id_attr
        self._fillers: Dict[str, Filler] = {}

    def _hole_target(self, node: ElementNode) -> Optional[str]:
        if node.tag != self.hole_tag or node.children or len(node.attributes) != 1:
            return None
        return node.get(self.id_attr)

    def _references(self, filler: Filler) -> List[str]:
        return [target for target in map(self._hole_target, filler.content.iter()) if target]

    def add(self, filler: Filler) -> None:
        if filler.filler_id in self._fillers:
            raise InvalidParameterError(f"filler {filler.filler_id} received twice")
        self._fillers[filler.filler_id] = filler

    def missing(self) -> List[str]:
        """Filler ids reachable from F0 that have not arrived yet."""
        missing: Set[str] = set()
        visited: Set[str] = set()
        pending = [ROOT_FILLER]
        while pending:
            filler_id = pending.pop()
            if filler_id in visited:
                continue
            visited.add(filler_id)
            filler = self._fillers.get(filler_id)
            if filler is None:
                missing.add(filler_id)
                continue
            pending.extend(self._references(filler))
        return sorted(missing)

    @property
    def complete(self) -> bool:
        return not self.missing()

    def assemble(self) -> DecodedDocument:
        """Substitute holes transitively starting from F0.

        Raises:
            IncompleteStreamError: A referenced filler has not arrived
            FillerCycleError: Fillers reference each other in a cycle
        """
        missing = self.missing()
        if missing:
            raise IncompleteStreamError(missing)

        used: Set[str] = {ROOT_FILLER}
        active: List[str] = []

        def fill(node: ElementNode) -> ElementNode:
            target = self._hole_target(node)
            if target is not None:
                if target in active:
                    raise FillerCycleError(f"filler cycle: {' -> '.join(active + [target])}")
                used.add(target)
                active.append(target)
                content = fill(self._fillers[target].content.root)
                active.pop()
                return content.with_tail(node.tail)
            if node.is_leaf:
                return node
            return node.with_children([fill(child) for child in node.children])

        active.append(ROOT_FILLER)
        root_filler = self._fillers[ROOT_FILLER]
        root = fill(root_filler.content.root)
        orphans = sorted(set(self._fillers) - used)
        if orphans:
            logger.warning("Orphan fillers not referenced by any hole: %s", ', '.join(orphans))
        return DecodedDocument(XmlTree(root, root_filler.content.doc_id), orphans)


def decode_fillers(fillers: Iterable[Filler], hole_tag: str = Config.HOLE_TAG,
                   id_attr: str = Config.HOLE_ID_ATTR) -> DecodedDocument:
    """Rebuild the document from fillers given in any order."""
    assembler = FillerAssembler(hole_tag, id_attr)
    for filler in fillers:
        assembler.add(filler)
    return assembler.assemble()


def write_fillers(directory: Path, fillers: Sequence[Filler],
                  tx: Optional[OutputTransaction] = None) -> List[Path]:
    """Write each filler to ``fillers/<id>.xml`` under ``directory``."""
    target = Config.get_fillers_dir(directory)
    guard = contextlib.nullcontext(tx) if tx is not None else OutputTransaction()
    with guard as writer:
        paths = [writer.write_bytes(target / f"{filler.filler_id}.xml",
                                    serialize_document(filler.content))
                 for filler in fillers]
    logger.info("💾 Wrote %d fillers to %s", len(paths), target)
    return paths


def read_fillers(directory: Path, doc_id: str = Config.DOC_ID) -> List[Filler]:
    """Read every ``F<k>.xml`` under ``directory/fillers``."""
    source = Config.get_fillers_dir(directory)
    return [Filler(path.stem, parse_document(path.read_bytes(), doc_id))
            for path in sorted(source.glob('F*.xml'))]
