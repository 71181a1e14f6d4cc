import random
from pathlib import Path

import pytest

from src.addressing import annotate
from src.models import parse_document
from src.utils import generate_books, random_document

DATA_DIR = Path(__file__).parent / 'data'

# Tag schematic table of the books sample, in first-encounter order
BOOKS_SCHEMA = ('books', 'book', 'title', 'ISBN', 'authors', 'author', 'publisher', 'year',
                'category', 'price', 'TableOfContent', 'Chapter', 'Number', 'Topic')


@pytest.fixture
def books_path():
    return DATA_DIR / 'books.xml'


@pytest.fixture
def books(books_path):
    return parse_document(books_path.read_bytes(), 'books')


@pytest.fixture
def annotated_books(books):
    return annotate(books)


@pytest.fixture
def catalogue():
    """Annotated 40-book catalogue, identical on every run."""
    return annotate(generate_books(40, seed=7, doc_id='catalogue'))


@pytest.fixture
def rng():
    return random.Random(20240601)


def random_documents(count, seed, max_elements=200, max_depth=6):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_document(rng, max_elements, max_depth)
