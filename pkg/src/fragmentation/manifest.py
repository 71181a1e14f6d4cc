"""Manifest: bookkeeping needed to route queries to fragments and reassemble them."""

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from ..addressing import AnnotatedTree, TagSchema
from ..errors import ManifestError
from ..models import child_byte_sizes
from .fragment import Fragment

logger = logging.getLogger(__name__)

_META_FIELDS = ('predicates', 'selector', 'ordinal_range', 'value_range', 'bucket',
                'flagged', 'skeleton', 'remainder', 'guards', 'ranged')


@dataclass
class FragmentEntry:
    fragment_id: str
    file: str
    model: str
    context: List[str]
    tag_types: List[int]
    records: int
    bytes: int
    payload_bytes: int
    predicates: List[str] = field(default_factory=list)
    selector: Optional[str] = None
    ordinal_range: Optional[List[int]] = None
    value_range: Optional[List[str]] = None
    bucket: Optional[int] = None
    flagged: bool = False
    skeleton: bool = False
    remainder: bool = False
    ranged: bool = False
    guards: Dict[str, Dict[str, bool]] = field(default_factory=dict)

    @classmethod
    def from_fragment(cls, fragment: Fragment, attr_name: str) -> 'FragmentEntry':
        meta = {key: fragment.meta[key] for key in _META_FIELDS if key in fragment.meta}
        total, unit_sizes = child_byte_sizes(fragment.content.root)
        return cls(
            fragment_id=fragment.fragment_id,
            file=fragment.file_name,
            model=fragment.model.value,
            context=list(fragment.context),
            tag_types=fragment.tag_types(attr_name),
            records=len(fragment.record_ordinals(attr_name)),
            bytes=total,
            payload_bytes=sum(unit_sizes),
            **meta,
        )


@dataclass(frozen=True)
class Link:
    """Reference from an element of a remainder to a subtree stored elsewhere."""

    remainder: str
    ref: str
    fragment_id: str


@dataclass
class Manifest:
    origin: str
    attr_name: str
    schema: TagSchema
    model: str
    params: Dict[str, Any]
    fragments: List[FragmentEntry]
    links: List[Link] = field(default_factory=list)
    ref_attr: Optional[str] = None
    overlaps: List[str] = field(default_factory=list)

    def fragment_ids(self) -> List[str]:
        return [entry.fragment_id for entry in self.fragments]

    def entry(self, fragment_id: str) -> FragmentEntry:
        for entry in self.fragments:
            if entry.fragment_id == fragment_id:
                return entry
        raise KeyError(fragment_id)

    def validate(self) -> None:
        """Check id uniqueness, link targets and disjointness of ordinal ranges."""
        ids = self.fragment_ids()
        if len(set(ids)) != len(ids):
            raise ManifestError(f"duplicate fragment ids in manifest of {self.origin}")
        known = set(ids)
        for link in self.links:
            if link.fragment_id not in known:
                raise ManifestError(f"link {link.remainder} -> {link.ref} names unknown "
                                    f"fragment {link.fragment_id}")
        ranges = sorted(tuple(e.ordinal_range) for e in self.fragments if e.ordinal_range)
        for (_, high), (low, _) in zip(ranges, ranges[1:]):
            if low <= high:
                raise ManifestError("ordinal ranges overlap")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'origin': self.origin,
            'attr_name': self.attr_name,
            'schema': self.schema.to_dict(self.attr_name),
            'model': self.model,
            'params': self.params,
            'ref_attr': self.ref_attr,
            'fragments': [asdict(entry) for entry in self.fragments],
            'links': [asdict(link) for link in self.links],
            'overlaps': list(self.overlaps),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Manifest':
        try:
            manifest = cls(
                origin=data['origin'],
                attr_name=data['attr_name'],
                schema=TagSchema.from_dict(data['schema']),
                model=data['model'],
                params=data.get('params', {}),
                fragments=[FragmentEntry(**entry) for entry in data['fragments']],
                links=[Link(**link) for link in data.get('links', [])],
                ref_attr=data.get('ref_attr'),
                overlaps=list(data.get('overlaps', [])),
            )
        except (KeyError, TypeError) as exc:
            raise ManifestError(f"malformed manifest: {exc}") from None
        manifest.validate()
        return manifest

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def load(cls, path: Path) -> 'Manifest':
        try:
            data = json.loads(Path(path).read_text(encoding='utf-8'))
        except json.JSONDecodeError as exc:
            raise ManifestError(f"manifest {path} is not valid JSON: {exc}") from None
        return cls.from_dict(data)


def build_manifest(t: AnnotatedTree, model: str, params: Dict[str, Any],
                   fragments: Sequence[Fragment], links: Iterable[Link] = (),
                   ref_attr: Optional[str] = None,
                   overlaps: Iterable[str] = ()) -> Manifest:
    manifest = Manifest(
        origin=t.doc_id,
        attr_name=t.attr_name,
        schema=t.schema,
        model=model,
        params=params,
        fragments=[FragmentEntry.from_fragment(f, t.attr_name) for f in fragments],
        links=list(links),
        ref_attr=ref_attr,
        overlaps=list(overlaps),
    )
    manifest.validate()
    logger.info("Fragmented %s (%s): %d fragments", t.doc_id, model, len(manifest.fragments))
    return manifest
