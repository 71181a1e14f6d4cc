"""Event-based parsing of XML bytes into ElementNode trees.

lxml drives a parser target; elements are built bottom-up as their end
events arrive, so no intermediate DOM is kept.
"""

import logging
import re
from typing import List, Optional, Tuple

from lxml import etree

from ..config import Config
from ..errors import ParseError, UnsupportedFeatureError
from .tree import ElementNode, XmlTree

logger = logging.getLogger(__name__)

_DECLARED_ENCODING = re.compile(rb'^\s*<\?xml[^>]*?encoding\s*=\s*["\']([A-Za-z0-9._-]+)["\']')
_COMMENT = re.compile(rb'<!--.*?-->', re.DOTALL)
_CDATA = b'<![CDATA['
_EXTERNAL_ENTITY = re.compile(rb'<!ENTITY[^>]*\b(SYSTEM|PUBLIC)\b')


class _OpenElement:
    """Element whose end event has not arrived yet."""

    __slots__ = ('tag', 'attributes', 'text', 'children')

    def __init__(self, tag: str, attributes: Tuple[Tuple[str, str], ...]):
        self.tag = tag
        self.attributes = attributes
        self.text: List[str] = []
        self.children: List[Tuple[ElementNode, List[str]]] = []

    def add_data(self, data: str) -> None:
        if self.children:
            self.children[-1][1].append(data)
        else:
            self.text.append(data)

    def close(self) -> ElementNode:
        text = ''.join(self.text)
        if not self.children:
            return ElementNode(self.tag, self.attributes, (), text)
        # Whitespace between element children is insignificant
        if not text.strip():
            text = ''
        children = []
        for child, tail_parts in self.children:
            tail = ''.join(tail_parts)
            children.append(child.with_tail(tail if tail.strip() else ''))
        return ElementNode(self.tag, self.attributes, tuple(children), text)


class _TreeTarget:
    """lxml parser target collecting the supported XML subset."""

    def __init__(self):
        self._stack: List[_OpenElement] = []
        self.root: Optional[ElementNode] = None
        self.unsupported: Optional[UnsupportedFeatureError] = None

    def _reject(self, construct: str) -> None:
        if self.unsupported is None:
            self.unsupported = UnsupportedFeatureError(construct)
        raise self.unsupported

    def start(self, tag, attrib, nsmap=None):
        if nsmap or tag.startswith('{') or any(name.startswith('{') for name in attrib):
            self._reject(f'namespace on <{tag}>')
        if len(self._stack) >= Config.MAX_DEPTH:
            self._reject(f'nesting deeper than {Config.MAX_DEPTH} levels at <{tag}>')
        self._stack.append(_OpenElement(tag, tuple(attrib.items())))

    def end(self, tag):
        node = self._stack.pop().close()
        if self._stack:
            self._stack[-1].children.append((node, []))
        else:
            self.root = node

    def data(self, data):
        if self._stack:
            self._stack[-1].add_data(data)

    def comment(self, text):
        pass

    def pi(self, target, data=None):
        self._reject(f'processing instruction <?{target}?>')

    def doctype(self, name, pubid, system):
        if pubid or system:
            self._reject(f'external DTD for <{name}>')

    def close(self):
        return self.root


def _byte_offset(data: bytes, line: int, column: int) -> int:
    """Translate an lxml (line, column) position into a byte offset."""
    offset = 0
    for _ in range(max(line - 1, 0)):
        newline = data.find(b'\n', offset)
        if newline < 0:
            break
        offset = newline + 1
    return min(offset + max(column - 1, 0), len(data))


def _check_subset(data: bytes) -> None:
    try:
        data.decode('utf-8')
    except UnicodeDecodeError as exc:
        raise ParseError("input is not valid UTF-8", exc.start) from None

    declared = _DECLARED_ENCODING.match(data)
    if declared and declared.group(1).lower() not in (b'utf-8', b'utf8'):
        raise UnsupportedFeatureError(f"encoding {declared.group(1).decode('ascii')}")

    without_comments = _COMMENT.sub(lambda m: b' ' * len(m.group(0)), data)
    cdata = without_comments.find(_CDATA)
    if cdata >= 0:
        raise UnsupportedFeatureError('CDATA section', cdata)
    entity = _EXTERNAL_ENTITY.search(without_comments)
    if entity:
        raise UnsupportedFeatureError('external entity', entity.start())


def parse_document(data: bytes, doc_id: str = Config.DOC_ID) -> XmlTree:
    """Parse UTF-8 XML bytes into an XmlTree.

    Args:
        data: Complete XML document
        doc_id: Identifier recorded on the resulting tree

    Returns:
        Parsed tree with document order preserved

    Raises:
        ParseError: Input is not well-formed
        UnsupportedFeatureError: Namespaces, CDATA, processing instructions,
            external DTDs/entities, a non UTF-8 encoding or
            nesting deeper than Config.MAX_DEPTH
    """
    _check_subset(data)
    target = _TreeTarget()
    parser = etree.XMLParser(target=target, load_dtd=False, no_network=True,
                             huge_tree=True, remove_comments=False)
    try:
        parser.feed(data)
        root = parser.close()
    except UnsupportedFeatureError:
        raise
    except etree.XMLSyntaxError as exc:
        if target.unsupported is not None:
            raise target.unsupported from None
        line, column = exc.position
        offset = _byte_offset(data, line, column)
        if 'Namespace prefix' in str(exc):
            raise UnsupportedFeatureError('namespace prefix', offset) from None
        raise ParseError(exc.msg or str(exc), offset) from None

    if target.unsupported is not None:
        raise target.unsupported
    if root is None:
        raise ParseError("document has no root element", 0)
    logger.debug("Parsed %s (%d bytes)", doc_id, len(data))
    return XmlTree(root, doc_id)
