"""Fragments: a cut of the annotated document plus the metadata that produced it."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Tuple

from ..config import Config
from ..models import ElementNode, XmlTree


class FragmentModel(str, Enum):
    HORIZONTAL = 'horizontal'
    VERTICAL_PROJECTED = 'vertical-projected'
    VERTICAL_REMAINDER = 'vertical-remainder'
    SIZE = 'size'
    HYBRID = 'hybrid'


@dataclass(frozen=True)
class Fragment:
    """One fragment.

    A fragment either holds a copy of the document root (with the records or
    skeleton below it) or a container element, without label, that wraps the
    subtrees cut out of the document. ``context`` is the tag path of the parent
    of those subtrees in the original document; it is empty for fragments
    rooted at the document root.
    """

    fragment_id: str
    model: FragmentModel
    content: XmlTree
    origin: str
    context: Tuple[str, ...] = ()
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def file_name(self) -> str:
        return fragment_file_name(self.origin, self.fragment_id)

    def is_rooted(self, attr_name: str = Config.ADDRESS_ATTR) -> bool:
        return self.content.root.get(attr_name) == '/0'

    @property
    def units(self) -> Tuple[ElementNode, ...]:
        """Top-level original subtrees: the records below a root copy, or the
        subtrees inside a container."""
        return self.content.root.children

    def record_ordinals(self, attr_name: str = Config.ADDRESS_ATTR) -> List[int]:
        """Distinct leading ordinals (record positions) present in the fragment."""
        seen = set()
        for unit in self.units:
            label = unit.get(attr_name)
            if label is None or label.startswith('/'):
                continue
            seen.add(int(label.split('.', 1)[0].split('/', 1)[0]))
        return sorted(seen)

    def tag_types(self, attr_name: str = Config.ADDRESS_ATTR) -> List[int]:
        found = set()
        for node in self.content.iter():
            label = node.get(attr_name)
            if label is not None:
                found.add(int(label.rpartition('/')[2]))
        return sorted(found)


def fragment_file_name(origin: str, fragment_id: str) -> str:
    return f"{origin}.{fragment_id}.xml"


def rooted_fragment(root: ElementNode, children, fragment_id: str, model: FragmentModel,
                    origin: str, meta: Dict[str, Any]) -> Fragment:
    """Fragment holding a copy of the document root with the given children."""
    content = XmlTree(root.with_children(children), origin)
    return Fragment(fragment_id, model, content, origin, (), meta)


def container_fragment(units, tag: str, context: Tuple[str, ...], fragment_id: str,
                       model: FragmentModel, origin: str, meta: Dict[str, Any]) -> Fragment:
    """Fragment wrapping cut subtrees in an unlabeled container element."""
    content = XmlTree(ElementNode(tag, (), tuple(units)), origin)
    return Fragment(fragment_id, model, content, origin, tuple(context), meta)
