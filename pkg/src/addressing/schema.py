"""Tag schematic table: tag names numbered by first encounter."""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

from ..config import Config
from ..errors import UnknownElementError


@dataclass(frozen=True)
class TagSchema:
    """Bijection between tag names and tag types 0..n-1 (index = type)."""

    entries: Tuple[str, ...]
    _types: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        types = {name: index for index, name in enumerate(self.entries)}
        if len(types) != len(self.entries):
            raise ValueError("tag schema entries must be unique")
        object.__setattr__(self, '_types', types)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, name: str) -> bool:
        return name in self._types

    def tag_type(self, name: str) -> int:
        try:
            return self._types[name]
        except KeyError:
            raise UnknownElementError(f"unknown element <{name}>") from None

    def tag_name(self, tag_type: int) -> str:
        if not 0 <= tag_type < len(self.entries):
            raise UnknownElementError(f"unknown tag type {tag_type}")
        return self.entries[tag_type]

    def to_dict(self, attr_name: str = Config.ADDRESS_ATTR) -> Dict[str, Any]:
        return {'attr_name': attr_name, 'tags': list(self.entries)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'TagSchema':
        return cls(tuple(data['tags']))

    def to_json(self, attr_name: str = Config.ADDRESS_ATTR) -> str:
        return json.dumps(self.to_dict(attr_name), indent=2)
