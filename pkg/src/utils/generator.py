"""Synthetic documents: book catalogues and random trees."""

import random
import string
from typing import List, Optional

from ..config import Config
from ..models import ElementNode, XmlTree

PUBLISHERS = ('McGraw Hill', 'Mita Murach and Associates', 'Prentice Hall', "O'Reilly Media",
              'Addison Wesley', 'Springer')
CATEGORIES = ('Computer', 'Database', 'Networking', 'Programming', 'Mathematics')
SURNAMES = ("O'Leary", 'Murach', 'Wrightson', 'Horstmann', 'Cornell', 'Date', 'Ullman',
            'Widom', 'Codd', 'Stonebraker')
GIVEN_NAMES = ('Timothy J', 'Linda T', 'Joel', 'Tyler', 'Cay S.', 'Gary', 'Jennifer', 'Jeffrey')
TOPICS = ('Overview', 'Data Models', 'Query Processing', 'Storage', 'Indexing', 'Transactions',
          'Recovery', 'Distribution', 'Security', 'Performance')
WORDS = ('Essential', 'Introduction', 'Concepts', 'Systems', 'Guide', 'Practical', 'Advanced',
         'Databases', 'Networks', 'Design', 'Java', 'SQL', 'Programming', 'Computing')

_VOCABULARY = ('a', 'b', 'c', 'item', 'name', 'value', 'node', 'entry', 'list', 'x')
_TEXT_ALPHABET = string.ascii_letters + string.digits + ' &<>"\'.-'


def _leaf(tag: str, text: str) -> ElementNode:
    return ElementNode(tag, (), (), text)


def _book(rng: random.Random, index: int, chapters: int, price_min: float,
          price_max: float) -> ElementNode:
    title = ' '.join(rng.sample(WORDS, rng.randint(2, 4)))
    isbn = ''.join(rng.choice(string.digits) for _ in range(13))
    authors = [_leaf('author', f"{rng.choice(SURNAMES)}, {rng.choice(GIVEN_NAMES)}")
               for _ in range(rng.randint(1, 3))]
    toc = [
        ElementNode('Chapter', (), (_leaf('Number', str(number)), _leaf('Topic', rng.choice(TOPICS))))
        for number in range(1, chapters + 1)
    ]
    children = (
        _leaf('title', f"{title} {index}"),
        _leaf('ISBN', isbn),
        ElementNode('authors', (), tuple(authors)),
        _leaf('publisher', rng.choice(PUBLISHERS)),
        _leaf('year', str(rng.randint(1990, 2024))),
        _leaf('category', rng.choice(CATEGORIES)),
        _leaf('price', f"{rng.uniform(price_min, price_max):.2f}"),
        ElementNode('TableOfContent', (), tuple(toc)),
    )
    return ElementNode('book', (), children)


def generate_books(n_records: int, seed: int = 0, chapters: int = Config.CHAPTERS,
                   price_min: float = Config.PRICE_MIN, price_max: float = Config.PRICE_MAX,
                   doc_id: str = Config.DOC_ID) -> XmlTree:
    """Generate a ``books`` catalogue of ``n_records`` book records.

    Args:
        n_records: Number of book records
        seed: Random seed; equal seeds give equal documents
        chapters: Chapters per table of contents
        price_min: Lowest price
        price_max: Highest price

    Returns:
        The generated document
    """
    rng = random.Random(seed)
    books = tuple(_book(rng, index, chapters, price_min, price_max)
                  for index in range(1, n_records + 1))
    return XmlTree(ElementNode('books', (), books), doc_id)


def _text(rng: random.Random, max_length: int = 12) -> str:
    """Empty, or a string with at least one visible character."""
    if rng.random() < 0.3:
        return ''
    body = ''.join(rng.choice(_TEXT_ALPHABET) for _ in range(rng.randint(1, max_length)))
    return body if body.strip() else body + 'z'


def random_document(rng: random.Random, max_elements: int = 200, max_depth: int = 6,
                    doc_id: Optional[str] = None) -> XmlTree:
    """Random tree over a small tag vocabulary, with text, tails and attributes.

    Whitespace-only text is never produced inside elements with children,
    so the tree survives a serialize/parse cycle unchanged.
    """
    limit = rng.randint(1, max_elements)
    count = 1

    def build(depth: int) -> ElementNode:
        nonlocal count
        children: List[ElementNode] = []
        if depth < max_depth:
            for _ in range(rng.randint(0, 6)):
                if count >= limit:
                    break
                count += 1
                child = build(depth + 1)
                if rng.random() < 0.15:
                    child = child.with_tail(_text(rng) or 't')
                children.append(child)
        attributes = tuple((name, _text(rng, 6)) for name in
                           rng.sample(('id', 'kind', 'lang'), rng.randint(0, 2)))
        text = _text(rng) if not children or rng.random() < 0.2 else ''
        return ElementNode(rng.choice(_VOCABULARY), attributes, tuple(children), text)

    return XmlTree(build(1), doc_id or f"random-{rng.randrange(10 ** 6)}")
