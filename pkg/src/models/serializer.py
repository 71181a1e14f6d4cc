"""Canonical serialization: UTF-8, stored attribute order, no indentation."""

from typing import List, Tuple

from lxml import etree

from .tree import ElementNode, XmlTree


def to_lxml(node: ElementNode) -> etree._Element:
    """Build the lxml element for a subtree."""
    element = etree.Element(node.tag)
    _fill(element, node)
    return element


def _fill(element: etree._Element, node: ElementNode) -> None:
    pending = [(element, node)]
    while pending:
        target, source = pending.pop()
        for name, value in source.attributes:
            target.set(name, value)
        if source.text:
            target.text = source.text
        for child in source.children:
            sub = etree.SubElement(target, child.tag)
            if child.tail:
                sub.tail = child.tail
            pending.append((sub, child))


def serialize_node(node: ElementNode) -> bytes:
    """Serialize one subtree without declaration and without its tail."""
    return etree.tostring(to_lxml(node), encoding='UTF-8', xml_declaration=False,
                          with_tail=False)


def serialize_document(tree: XmlTree) -> bytes:
    """Serialize a whole document, XML declaration included."""
    return etree.tostring(to_lxml(tree.root), encoding='UTF-8', xml_declaration=True,
                          with_tail=False)


def subtree_byte_size(node: ElementNode) -> int:
    """Byte length of the canonical serialization of the subtree."""
    return len(serialize_node(node))


def child_byte_sizes(node: ElementNode) -> Tuple[int, List[int]]:
    """Byte length of the subtree and of each child subtree, serializing each child once.

    The element's own markup is measured on an empty copy whose text holds
    the node's text followed by the children's tails.
    """
    sizes = [subtree_byte_size(child) for child in node.children]
    shell = to_lxml(node.with_children(()))
    if node.children:
        shell.text = node.text + ''.join(child.tail for child in node.children)
    framing = len(etree.tostring(shell, encoding='UTF-8', with_tail=False))
    return framing + sum(sizes), sizes
