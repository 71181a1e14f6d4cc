"""Selection predicates (``path θ v``), label predicates and path selectors."""

import operator
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from ..addressing import AddressPattern, TagSchema, parse_address
from ..config import Config
from ..errors import (InvalidParameterError, InvalidSelectorError, PatternSyntaxError,
                      PredicateSyntaxError)
from ..models import ElementNode

Value = Union[str, Decimal]


class Op(Enum):
    EQ = '='
    NE = '!='
    LT = '<'
    LE = '<='
    GT = '>'
    GE = '>='


_OP_ALIASES = {'==': Op.EQ, '≠': Op.NE, '≤': Op.LE, '≥': Op.GE}

_COMPARE: Dict[Op, Callable] = {
    Op.EQ: operator.eq,
    Op.NE: operator.ne,
    Op.LT: operator.lt,
    Op.LE: operator.le,
    Op.GT: operator.gt,
    Op.GE: operator.ge,
}


def parse_op(symbol: str) -> Op:
    if symbol in _OP_ALIASES:
        return _OP_ALIASES[symbol]
    try:
        return Op(symbol)
    except ValueError:
        raise PredicateSyntaxError(f"unknown comparison operator {symbol!r}") from None


def as_decimal(value: Value) -> Optional[Decimal]:
    """The decimal reading of a value, or None when it is not a finite number."""
    if isinstance(value, Decimal):
        return value if value.is_finite() else None
    try:
        number = Decimal(value.strip())
    except (InvalidOperation, ValueError):
        return None
    return number if number.is_finite() else None


def compare(text: str, op: Op, value: Value) -> bool:
    """Numeric comparison when both sides are decimals, lexicographic otherwise."""
    left, right = as_decimal(text), as_decimal(value)
    if left is not None and right is not None:
        return _COMPARE[op](left, right)
    return _COMPARE[op](text, str(value))


def render_value(value: Value) -> str:
    if isinstance(value, Decimal):
        return str(value)
    return '"' + value.replace('\\', '\\\\').replace('"', '\\"') + '"'


def parse_path(text: str) -> Tuple[str, ...]:
    if not text.startswith('/'):
        raise PredicateSyntaxError(f"path must be absolute: {text!r}")
    parts = tuple(text.split('/')[1:])
    if not parts or any(not part or part.isdigit() for part in parts):
        raise PredicateSyntaxError(f"malformed path: {text!r}")
    return parts


def format_path(path: Sequence[str]) -> str:
    return '/' + '/'.join(path)


def leaves(node: ElementNode, rel_path: Sequence[str],
           ref_attr: Optional[str] = None) -> Iterator[ElementNode]:
    """Leaf elements reached from ``node`` by following ``rel_path``.

    Elements with element children are structural and never yielded; with
    ``ref_attr`` set, elements whose children were cut away count as
    structural too.
    """
    level = [node]
    for tag in rel_path:
        level = [child for parent in level for child in parent.children if child.tag == tag]
        if not level:
            return
    for element in level:
        if element.children or (ref_attr and element.has_attribute(ref_attr)):
            continue
        yield element


@dataclass(frozen=True)
class SimplePredicate:
    """``path θ v`` over leaf-element text; ``path`` starts at the root tag."""

    path: Tuple[str, ...]
    op: Op
    value: Value

    def __post_init__(self):
        if len(self.path) < 2:
            raise PredicateSyntaxError(
                f"predicate path must name the root and a record: {format_path(self.path)}")

    @property
    def record_tag(self) -> str:
        return self.path[1]

    def evaluate(self, record: ElementNode, ref_attr: Optional[str] = None) -> bool:
        if record.tag != self.record_tag:
            return False
        return any(compare(leaf.text, self.op, self.value)
                   for leaf in leaves(record, self.path[2:], ref_attr))

    def __str__(self) -> str:
        return f"{format_path(self.path)} {self.op.value} {render_value(self.value)}"


@dataclass(frozen=True)
class LabelPredicate:
    """``pattern θ v``: some leaf inside the record whose address label
    matches ``pattern`` satisfies the comparison."""

    pattern: AddressPattern
    op: Op
    value: Value

    def evaluate(self, record: ElementNode, attr_name: str = Config.ADDRESS_ATTR) -> bool:
        for element in record.iter():
            if element.children:
                continue
            label = element.get(attr_name)
            if label is None or not self.pattern.matches(parse_address(label)):
                continue
            if compare(element.text, self.op, self.value):
                return True
        return False

    def __str__(self) -> str:
        return f"{self.pattern.source} {self.op.value} {render_value(self.value)}"


Atom = Union[SimplePredicate, LabelPredicate]


@dataclass(frozen=True)
class Conjunction:
    """Minterm: every member predicate must hold."""

    terms: Tuple[Atom, ...]

    def __str__(self) -> str:
        return ' and '.join(str(term) for term in self.terms)


Selection = Union[SimplePredicate, LabelPredicate, Conjunction]


def terms_of(selection: Selection) -> Tuple[Atom, ...]:
    return selection.terms if isinstance(selection, Conjunction) else (selection,)


def selection_strings(selection: Selection) -> List[str]:
    return [str(term) for term in terms_of(selection)]


def evaluate_predicate(record: ElementNode, p: Selection,
                       attr_name: str = Config.ADDRESS_ATTR) -> bool:
    """Whether ``record`` satisfies ``p``.

    Leaves are located by the path below the record; when several leaves
    match, the record qualifies if any of them satisfies the comparison. A
    missing path component makes the predicate false.
    """
    for term in terms_of(p):
        if isinstance(term, LabelPredicate):
            ok = term.evaluate(record, attr_name)
        else:
            ok = term.evaluate(record)
        if not ok:
            return False
    return True


_TERM = re.compile(
    r'\s*(?P<target>[^\s<>=!≤≥≠]+)\s*(?P<op><=|>=|!=|==|=|<|>|≤|≥|≠)\s*'
    r'(?P<value>"(?:[^"\\]|\\.)*"|[^\s"<>=!≤≥≠][^\s"]*)\s*')
_AND = re.compile(r'(?:and\s+|&&\s*)')


def _parse_value(token: str) -> Value:
    if token.startswith('"'):
        return re.sub(r'\\(.)', r'\1', token[1:-1])
    number = as_decimal(token)
    return number if number is not None else token


def _build_term(match: 're.Match') -> Atom:
    target = match.group('target')
    op = parse_op(match.group('op'))
    value = _parse_value(match.group('value'))
    if target.startswith('/') and not target[1:].isdigit():
        return SimplePredicate(parse_path(target), op, value)
    try:
        return LabelPredicate(AddressPattern(target), op, value)
    except PatternSyntaxError as exc:
        raise PredicateSyntaxError(f"neither a path nor an address pattern: {target!r}") from exc


def parse_selection(text: str) -> Selection:
    """Parse ``path op value`` terms joined by ``and``.

    Values in double quotes are strings; bare values are decimals when they
    parse as one.
    """
    terms: List[Atom] = []
    position = 0
    while True:
        match = _TERM.match(text, position)
        if match is None:
            raise PredicateSyntaxError(f"malformed predicate: {text!r}")
        terms.append(_build_term(match))
        position = match.end()
        if position == len(text):
            break
        joiner = _AND.match(text, position)
        if joiner is None:
            raise PredicateSyntaxError(f"unexpected text in predicate: {text[position:]!r}")
        position = joiner.end()
    return terms[0] if len(terms) == 1 else Conjunction(tuple(terms))


def parse_predicate(text: str) -> SimplePredicate:
    """Parse exactly one ``path op value`` simple predicate."""
    selection = parse_selection(text)
    if not isinstance(selection, SimplePredicate):
        raise PredicateSyntaxError(f"expected a single path predicate: {text!r}")
    return selection


@dataclass(frozen=True)
class PathSelector:
    """Absolute tag path whose matching subtrees are projected out."""

    path: Tuple[str, ...]

    def __post_init__(self):
        if len(self.path) < 2:
            raise InvalidSelectorError(
                f"selector {format_path(self.path)} would project the document root")

    @classmethod
    def parse(cls, text: str) -> 'PathSelector':
        try:
            return cls(parse_path(text))
        except PredicateSyntaxError as exc:
            raise InvalidSelectorError(str(exc)) from None

    def as_pattern(self, schema: TagSchema) -> AddressPattern:
        """The equivalent ``d…d/τ`` address pattern."""
        depth = len(self.path) - 1
        return AddressPattern('.'.join(['d'] * depth) + '/' + str(schema.tag_type(self.path[-1])))

    def __str__(self) -> str:
        return format_path(self.path)


@dataclass(frozen=True)
class SizeConstraints:
    """SimpleX limits: subtree bytes, maximum fanout, height in element levels."""

    max_size: int
    max_width: int
    max_depth: int

    def __post_init__(self):
        if min(self.max_size, self.max_width, self.max_depth) <= 0:
            raise InvalidParameterError("size constraints must all be positive")
