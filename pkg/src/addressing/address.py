"""Address labels: sibling-ordinal path plus tag type, rendered ``1.4/6``."""

import re
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from ..errors import AddressSyntaxError

_ADDRESS = re.compile(r'^(?P<ordinals>[1-9]\d*(?:\.[1-9]\d*)*)?/(?P<tag_type>0|[1-9]\d*)$')


@dataclass(frozen=True)
class Address:
    """Position of an element: 1-based ordinals of its ancestors-or-self below
    the root, and the tag type of its name."""

    ordinals: Tuple[int, ...]
    tag_type: int

    def __post_init__(self):
        if any(o < 1 for o in self.ordinals):
            raise AddressSyntaxError(f"ordinals must be positive: {self.ordinals}")
        if self.tag_type < 0:
            raise AddressSyntaxError(f"tag type must be non-negative: {self.tag_type}")
        if not self.ordinals and self.tag_type != 0:
            raise AddressSyntaxError("root address must have tag type 0")

    @property
    def depth(self) -> int:
        return len(self.ordinals)

    @property
    def is_root(self) -> bool:
        return not self.ordinals

    def __str__(self) -> str:
        return format_address(self)


ROOT = Address((), 0)


class Relationship(Enum):
    """Structural relation of the first address to the second."""

    SELF = 'self'
    PARENT_CHILD = 'parent-child'
    CHILD_PARENT = 'child-parent'
    ANCESTOR_DESCENDANT = 'ancestor-descendant'
    DESCENDANT_ANCESTOR = 'descendant-ancestor'
    PRECEDING_SIBLING = 'preceding-sibling'
    FOLLOWING_SIBLING = 'following-sibling'
    NONE = 'none'


def parse_address(text: str) -> Address:
    """Parse a rendered label such as ``"1.4/6"`` or ``"/0"``."""
    match = _ADDRESS.match(text) if isinstance(text, str) else None
    if match is None:
        raise AddressSyntaxError(f"malformed address: {text!r}")
    ordinals = match.group('ordinals')
    parts = tuple(int(o) for o in ordinals.split('.')) if ordinals else ()
    return Address(parts, int(match.group('tag_type')))


def format_address(address: Address) -> str:
    return '.'.join(str(o) for o in address.ordinals) + '/' + str(address.tag_type)


def relationship(a: Address, b: Address) -> Relationship:
    """Decide how ``a`` relates to ``b`` from the ordinal sequences alone."""
    x, y = a.ordinals, b.ordinals
    if x == y:
        return Relationship.SELF
    if len(x) < len(y) and y[:len(x)] == x:
        if len(y) - len(x) == 1:
            return Relationship.PARENT_CHILD
        return Relationship.ANCESTOR_DESCENDANT
    if len(y) < len(x) and x[:len(y)] == y:
        if len(x) - len(y) == 1:
            return Relationship.CHILD_PARENT
        return Relationship.DESCENDANT_ANCESTOR
    if len(x) == len(y) and x[:-1] == y[:-1]:
        if x[-1] < y[-1]:
            return Relationship.PRECEDING_SIBLING
        return Relationship.FOLLOWING_SIBLING
    return Relationship.NONE
