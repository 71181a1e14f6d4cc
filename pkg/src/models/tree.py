"""Immutable ordered element trees."""

from dataclasses import dataclass, field, replace
from typing import AbstractSet, Iterator, Optional, Sequence, Tuple, Union

from ..config import Config

Attributes = Tuple[Tuple[str, str], ...]


@dataclass(frozen=True, slots=True, eq=False)
class ElementNode:
    """One element of an ordered XML tree.

    ``text`` is the character content before the first child element and
    ``tail`` the content that follows this element inside its parent. For a
    leaf, ``text`` is the whole character content.
    """

    tag: str
    attributes: Attributes = ()
    children: Tuple['ElementNode', ...] = ()
    text: str = ''
    tail: str = ''

    def __post_init__(self):
        if not self.tag:
            raise ValueError("element tag must be a non-empty name")
        if len(self.attributes) > 1:
            names = [name for name, _ in self.attributes]
            if len(set(names)) != len(names):
                raise ValueError(f"duplicate attribute on <{self.tag}>")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def get(self, name: str, default: Optional[str] = None) -> Optional[str]:
        for key, value in self.attributes:
            if key == name:
                return value
        return default

    def has_attribute(self, name: str) -> bool:
        return any(key == name for key, _ in self.attributes)

    def with_attribute(self, name: str, value: str) -> 'ElementNode':
        """Return a copy with ``name`` set, appended when new."""
        if self.has_attribute(name):
            attributes = tuple((k, value if k == name else v) for k, v in self.attributes)
        else:
            attributes = self.attributes + ((name, value),)
        return replace(self, attributes=attributes)

    def without_attribute(self, name: str) -> 'ElementNode':
        if not self.has_attribute(name):
            return self
        return replace(self, attributes=tuple((k, v) for k, v in self.attributes if k != name))

    def with_children(self, children: Sequence['ElementNode']) -> 'ElementNode':
        return replace(self, children=tuple(children))

    def with_tail(self, tail: str) -> 'ElementNode':
        return self if tail == self.tail else replace(self, tail=tail)

    def iter(self) -> Iterator['ElementNode']:
        """Yield this element and its descendants in document order."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def element_count(self) -> int:
        return sum(1 for _ in self.iter())


@dataclass(frozen=True, slots=True, eq=False)
class XmlTree:
    """A document: exactly one root element plus an opaque identifier."""

    root: ElementNode
    doc_id: str = field(default=Config.DOC_ID)

    def iter(self) -> Iterator[ElementNode]:
        return self.root.iter()


def structural_equal(a: Union[XmlTree, ElementNode],
                     b: Union[XmlTree, ElementNode],
                     ignore_attrs: AbstractSet[str] = frozenset()) -> bool:
    """Compare tags, attribute sets, character content and child order.

    Attributes named in ``ignore_attrs`` are left out of the comparison. The
    tails of the two roots are not compared.
    """
    left = a.root if isinstance(a, XmlTree) else a
    right = b.root if isinstance(b, XmlTree) else b
    pairs = [(left, right, True)]
    while pairs:
        x, y, is_root = pairs.pop()
        if x.tag != y.tag or x.text != y.text:
            return False
        if not is_root and x.tail != y.tail:
            return False
        if len(x.children) != len(y.children):
            return False
        x_attrs = {k: v for k, v in x.attributes if k not in ignore_attrs}
        y_attrs = {k: v for k, v in y.attributes if k not in ignore_attrs}
        if x_attrs != y_attrs:
            return False
        pairs.extend((cx, cy, False) for cx, cy in zip(x.children, y.children))
    return True


def strip_attributes(node: ElementNode, names: AbstractSet[str]) -> ElementNode:
    """Remove the named attributes from every element of the subtree."""
    children = tuple(strip_attributes(child, names) for child in node.children)
    attributes = tuple((k, v) for k, v in node.attributes if k not in names)
    return replace(node, attributes=attributes, children=children)


def tree_height(node: ElementNode) -> int:
    """Number of element levels in the subtree (a leaf has height 1)."""
    height, pending = 0, [(node, 1)]
    while pending:
        current, level = pending.pop()
        height = max(height, level)
        pending.extend((child, level + 1) for child in current.children)
    return height


def max_fanout(node: ElementNode) -> int:
    """Largest number of element children of any element in the subtree."""
    return max(len(n.children) for n in node.iter())
