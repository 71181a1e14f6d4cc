"""Fragment storage: in-memory store backed by fragment files on disk."""

import contextlib
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, Iterable, List, Optional

from .config import Config
from .errors import IncompleteSetError
from .fragmentation import Fragment, FragmentEntry, FragmentModel, Manifest
from .models import parse_document, serialize_document
from .utils.cleanup import OutputTransaction

logger = logging.getLogger(__name__)

_ENTRY_META = ('predicates', 'selector', 'ordinal_range', 'value_range', 'bucket', 'flagged',
               'skeleton', 'remainder', 'guards', 'ranged')


class FragmentStore:
    """Maps fragment ids to fragments, parsing files lazily on first access."""

    def __init__(self, manifest: Manifest, fragments: Iterable[Fragment] = ()):
        """Initialize fragment store.

        Args:
            manifest: Manifest describing the fragments
            fragments: Fragments already in memory
        """
        self.manifest = manifest
        self._fragments: Dict[str, Fragment] = {f.fragment_id: f for f in fragments}
        self._paths: Dict[str, Path] = {}
        self._lock = threading.Lock()
        self.directory: Optional[Path] = None

    @classmethod
    def open(cls, directory: Path, manifest: Optional[Manifest] = None) -> 'FragmentStore':
        """Index the fragment files under ``directory``.

        Files are looked up directly in the directory and in every
        ``nodes/node-<k>/`` subdirectory. Fragments without a file stay
        missing; nothing is parsed yet.
        """
        directory = Path(directory)
        if manifest is None:
            manifest = Manifest.load(directory / Config.MANIFEST_NAME)
        store = cls(manifest)
        store.directory = directory
        node_dirs = sorted(Config.get_nodes_dir(directory).glob('node-*'))
        for entry in manifest.fragments:
            for candidate in [directory] + node_dirs:
                path = candidate / entry.file
                if path.is_file():
                    store._paths[entry.fragment_id] = path
                    break
        logger.debug("Indexed %d of %d fragment files under %s", len(store._paths),
                     len(manifest.fragments), directory)
        return store

    def __contains__(self, fragment_id: str) -> bool:
        return fragment_id in self._fragments or fragment_id in self._paths

    def missing(self) -> List[str]:
        """Manifest fragments that are neither loaded nor on disk."""
        return [fid for fid in self.manifest.fragment_ids() if fid not in self]

    def require_complete(self) -> None:
        missing = self.missing()
        if missing:
            raise IncompleteSetError(missing)

    def get(self, fragment_id: str) -> Fragment:
        """Get a fragment, parsing its file the first time.

        Raises:
            IncompleteSetError: Fragment is not available
        """
        with self._lock:
            fragment = self._fragments.get(fragment_id)
            if fragment is not None:
                return fragment
            path = self._paths.get(fragment_id)
            if path is None:
                raise IncompleteSetError([fragment_id])
            fragment = self._load(self.manifest.entry(fragment_id), path)
            self._fragments[fragment_id] = fragment
            return fragment

    def _load(self, entry: FragmentEntry, path: Path) -> Fragment:
        content = parse_document(path.read_bytes(), self.manifest.origin)
        meta = {key: getattr(entry, key) for key in _ENTRY_META}
        return Fragment(entry.fragment_id, FragmentModel(entry.model), content,
                        self.manifest.origin, tuple(entry.context), meta)

    def fragments(self) -> List[Fragment]:
        return [self.get(fid) for fid in self.manifest.fragment_ids()]

    def save(self, directory: Path, placement: Optional[Dict[str, int]] = None,
             tx: Optional[OutputTransaction] = None) -> List[Path]:
        """Write fragment files, then the manifest.

        With ``placement`` each fragment goes to ``nodes/node-<k>/``,
        otherwise all files land in ``directory``. Files are written by a
        thread pool; the manifest is written last so it only exists for a
        complete set.

        Returns:
            Paths written, manifest last
        """
        directory = Path(directory)
        guard = contextlib.nullcontext(tx) if tx is not None else OutputTransaction()
        with guard as writer:
            def write(fragment: Fragment) -> Path:
                target = directory
                if placement is not None:
                    target = Config.get_node_dir(directory, placement[fragment.fragment_id])
                return writer.write_bytes(target / fragment.file_name,
                                          serialize_document(fragment.content))

            with ThreadPoolExecutor(max_workers=Config.WRITE_WORKERS) as pool:
                paths = list(pool.map(write, self.fragments()))
            paths.append(writer.write_text(directory / Config.MANIFEST_NAME,
                                           self.manifest.to_json()))
        logger.info("💾 Wrote %d fragment files to %s", len(paths) - 1, directory)
        return paths

    def place(self, directory: Path, placement: Dict[str, int],
              tx: OutputTransaction) -> List[Path]:
        """Lay the fragment files out under ``nodes/node-<k>/`` without parsing them.

        Indexed files are moved when ``directory`` is the one the store was
        opened from and copied otherwise; fragments held only in memory are
        serialized. The manifest is written last.

        Returns:
            Paths of the placed files, manifest last
        """
        directory = Path(directory)
        in_place = self.directory is not None and self.directory.resolve() == directory.resolve()
        paths = []
        for entry in self.manifest.fragments:
            target = Config.get_node_dir(directory, placement[entry.fragment_id]) / entry.file
            source = self._paths.get(entry.fragment_id)
            if source is None:
                fragment = self.get(entry.fragment_id)
                placed = tx.write_bytes(target, serialize_document(fragment.content))
            elif in_place:
                placed = tx.move(source, target)
            else:
                placed = tx.copy(source, target)
            if in_place:
                self._paths[entry.fragment_id] = placed
            paths.append(placed)
        paths.append(tx.write_text(directory / Config.MANIFEST_NAME, self.manifest.to_json()))
        logger.info("📦 Placed %d fragment files under %s", len(paths) - 1,
                    Config.get_nodes_dir(directory))
        return paths
