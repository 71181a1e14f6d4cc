"""Address patterns such as ``d.d/5``.

``d`` stands for one or more digits, ``.`` is a literal dot and the part after
the slash is the tag type (a literal integer, or ``d`` for any type). Literal
positive integers are also accepted in ordinal positions, e.g. ``1.d/2``.
"""

import re
from dataclasses import dataclass, field
from typing import Pattern

from ..errors import PatternSyntaxError
from .address import Address, format_address

_SOURCE = re.compile(r'^(?:(?:d|[1-9]\d*)(?:\.(?:d|[1-9]\d*))*)?/(?:d|0|[1-9]\d*)$')


def _token(token: str) -> str:
    return r'\d+' if token == 'd' else token


def compile_pattern(source: str) -> Pattern:
    if not isinstance(source, str) or not _SOURCE.match(source):
        raise PatternSyntaxError(f"invalid address pattern: {source!r}")
    ordinals, tag_type = source.rsplit('/', 1)
    body = r'\.'.join(_token(t) for t in ordinals.split('.')) if ordinals else ''
    return re.compile('^' + body + '/' + _token(tag_type) + '$')


@dataclass(frozen=True)
class AddressPattern:
    source: str
    compiled: Pattern = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'compiled', compile_pattern(self.source))

    def matches(self, address: Address) -> bool:
        return self.compiled.match(format_address(address)) is not None


def match_pattern(address: Address, pattern: AddressPattern) -> bool:
    return pattern.matches(address)
