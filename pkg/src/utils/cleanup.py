"""Rollback of partially written command output."""

import logging
import shutil
import threading
from pathlib import Path
from typing import List, Tuple

logger = logging.getLogger(__name__)


class OutputTransaction:
    """Records every file and directory it creates and removes them again
    when the block it guards raises."""

    def __init__(self):
        self._files: List[Path] = []
        self._dirs: List[Path] = []
        self._moves: List[Tuple[Path, Path]] = []
        self._lock = threading.Lock()

    def mkdir(self, path: Path) -> Path:
        """Create ``path`` and any missing parents, remembering the new ones."""
        path = Path(path)
        missing = []
        current = path
        while not current.exists():
            missing.append(current)
            if current.parent == current:
                break
            current = current.parent
        path.mkdir(parents=True, exist_ok=True)
        with self._lock:
            self._dirs.extend(reversed(missing))
        return path

    def write_bytes(self, path: Path, data: bytes) -> Path:
        path = Path(path)
        self.mkdir(path.parent)
        with self._lock:
            if not path.exists():
                self._files.append(path)
        path.write_bytes(data)
        return path

    def write_text(self, path: Path, text: str) -> Path:
        return self.write_bytes(path, text.encode('utf-8'))

    def copy(self, source: Path, target: Path) -> Path:
        target = Path(target)
        self.mkdir(target.parent)
        with self._lock:
            if not target.exists():
                self._files.append(target)
        shutil.copyfile(source, target)
        return target

    def move(self, source: Path, target: Path) -> Path:
        """Move ``source`` to ``target``; a rollback moves it back."""
        source, target = Path(source), Path(target)
        if source == target:
            return target
        self.mkdir(target.parent)
        source.replace(target)
        with self._lock:
            self._moves.append((source, target))
        return target

    def rollback(self) -> int:
        """Move files back, delete what was created, then empty directories (deepest first).

        Returns:
            Number of paths removed
        """
        removed = 0
        with self._lock:
            for source, target in reversed(self._moves):
                if target.exists():
                    target.replace(source)
                    removed += 1
            for path in reversed(self._files):
                if path.exists():
                    path.unlink()
                    removed += 1
            for directory in sorted(self._dirs, key=lambda p: len(p.parts), reverse=True):
                try:
                    directory.rmdir()
                    removed += 1
                except OSError:
                    pass  # not empty or already gone
            self._moves.clear()
            self._files.clear()
            self._dirs.clear()
        return removed

    def __enter__(self) -> 'OutputTransaction':
        return self

    def __exit__(self, exc_type, exc, tb) -> bool:
        if exc_type is not None:
            removed = self.rollback()
            if removed:
                logger.warning("🧹 Rolled back %d partially written paths", removed)
        return False
