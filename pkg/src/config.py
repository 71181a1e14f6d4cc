"""Configuration settings for LabelFrag."""

import os
from pathlib import Path


class Config:
    """Toolkit configuration."""

    # Labeling settings
    ADDRESS_ATTR = os.getenv('XFRAG_ADDRESS_ATTR', 'address')
    REF_ATTR = os.getenv('XFRAG_REF_ATTR', 'ref')
    DOC_ID = os.getenv('XFRAG_DOC_ID', 'doc')
    MAX_DEPTH = int(os.getenv('XFRAG_MAX_DEPTH', '256'))

    # Holes and fillers
    HOLE_TAG = os.getenv('XFRAG_HOLE_TAG', 'hole')
    HOLE_ID_ATTR = os.getenv('XFRAG_HOLE_ID_ATTR', 'id')

    # Output layout
    NODES_DIR = Path(os.getenv('XFRAG_NODES_DIR', 'nodes'))
    FILLERS_DIR = Path(os.getenv('XFRAG_FILLERS_DIR', 'fillers'))
    MANIFEST_NAME = os.getenv('XFRAG_MANIFEST_NAME', 'manifest.json')
    ALLOCATION_NAME = os.getenv('XFRAG_ALLOCATION_NAME', 'allocation.json')
    WRITE_WORKERS = int(os.getenv('XFRAG_WRITE_WORKERS', '4'))

    # Logging
    LOG_LEVEL = os.getenv('XFRAG_LOG_LEVEL', 'INFO').upper()

    # Synthetic document generator
    PRICE_MIN = float(os.getenv('XFRAG_PRICE_MIN', '10'))
    PRICE_MAX = float(os.getenv('XFRAG_PRICE_MAX', '500'))
    CHAPTERS = int(os.getenv('XFRAG_CHAPTERS', '3'))

    @classmethod
    def get_nodes_dir(cls, base: Path) -> Path:
        """Get the node layout directory under base."""
        return Path(base) / cls.NODES_DIR

    @classmethod
    def get_node_dir(cls, base: Path, node: int) -> Path:
        """Get the directory of one node under base."""
        return cls.get_nodes_dir(base) / f"node-{node}"

    @classmethod
    def get_fillers_dir(cls, base: Path) -> Path:
        """Get the filler directory under base."""
        return Path(base) / cls.FILLERS_DIR
