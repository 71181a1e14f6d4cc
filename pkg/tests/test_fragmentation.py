from decimal import Decimal

import pytest

from src.addressing import annotate
from src.errors import (EmptyInputError, EmptyProjectionError, InvalidParameterError,
                        InvalidSelectorError, LabelingConflictError, ManifestError,
                        PredicateSyntaxError, UnknownPathError)
from src.fragmentation import (Conjunction, FragmentModel, LabelPredicate, Link, Manifest, Op,
                               PathSelector, SimplePredicate, SizeConstraints, byte_bucket,
                               coefficient_of_variation, evaluate_predicate, fragment_by_size,
                               fragment_stats, horizontal_fragment, horizontal_quantile_fragment,
                               horizontal_range_fragment, hybrid_fragment, parse_predicate,
                               parse_selection, simplex_fragment, vertical_fragment)
from src.models import max_fanout, subtree_byte_size, tree_height
from src.utils import generate_books

PRICE_LOW = '/books/book/price <= 200'
PRICE_HIGH = '/books/book/price > 200'
TOC = PathSelector.parse('/books/book/TableOfContent')


def unit_labels(fragment):
    return [unit.get('address') for unit in fragment.units]


def book(annotated, ordinal):
    return annotated.root.children[ordinal - 1]


# Predicates

def test_parse_simple_predicate():
    p = parse_predicate(PRICE_LOW)
    assert p == SimplePredicate(('books', 'book', 'price'), Op.LE, Decimal('200'))
    assert p.record_tag == 'book'
    assert str(p) == '/books/book/price <= 200'


def test_parse_quoted_string_and_aliases():
    p = parse_predicate('/books/book/category = "Computer Science"')
    assert p.value == 'Computer Science'
    assert parse_predicate('/books/book/price ≤ 98').op is Op.LE
    assert parse_predicate('/books/book/price == 98').op is Op.EQ


def test_parse_label_predicate_and_conjunction():
    label = parse_selection('d.d/9 > 200')
    assert isinstance(label, LabelPredicate)
    both = parse_selection('/books/book/price > 100 and /books/book/year = 2013')
    assert isinstance(both, Conjunction)
    assert len(both.terms) == 2
    with pytest.raises(PredicateSyntaxError):
        parse_predicate('d.d/9 > 200')


@pytest.mark.parametrize("text", [
    '/books/book/price ~ 3',
    'price <= 200',
    '/books/book/price <=',
    '/books/book/price <= 200 or /books/book/year = 1',
    '/books <= 1',
])
def test_parse_predicate_rejects(text):
    with pytest.raises(PredicateSyntaxError):
        parse_selection(text)


@pytest.mark.parametrize("text, expected", [
    (PRICE_LOW, [True, True, False]),
    (PRICE_HIGH, [False, False, True]),
    ('/books/book/price >= 196', [False, True, True]),
    ('/books/book/category = "Programming"', [False, True, True]),
    ('/books/book/authors/author = "Murach, Joel"', [False, True, False]),
    ('/books/book/nothing = 1', [False, False, False]),
    ('/books/book/price > 100 and /books/book/year = 2013', [False, True, True]),
    ('d.d/9 > 200', [False, False, True]),
    ('/books/book/TableOfContent/Chapter/Number = 18', [False, True, False]),
])
def test_evaluate_predicate(annotated_books, text, expected):
    selection = parse_selection(text)
    results = [evaluate_predicate(record, selection) for record in annotated_books.root.children]
    assert results == expected


# Horizontal

def test_horizontal_follows_formula(annotated_books):
    fragments, manifest = horizontal_fragment(
        annotated_books, [parse_selection(PRICE_LOW), parse_selection(PRICE_HIGH)])
    assert [f.fragment_id for f in fragments] == ['h1', 'h2']
    assert unit_labels(fragments[0]) == ['1/1', '2/1']
    assert unit_labels(fragments[1]) == ['3/1']
    assert all(f.is_rooted() for f in fragments)
    assert manifest.model == 'horizontal'
    assert manifest.entry('h1').predicates == [PRICE_LOW]
    assert manifest.entry('h1').records == 2
    assert manifest.overlaps == []


def test_horizontal_remainder_and_overlap(annotated_books):
    fragments, manifest = horizontal_fragment(
        annotated_books, [parse_selection('/books/book/price <= 196'),
                          parse_selection('/books/book/price >= 196'),
                          parse_selection('/books/book/price > 1000')])
    assert unit_labels(fragments[0]) == ['1/1', '2/1']
    assert unit_labels(fragments[1]) == ['3/1']
    assert unit_labels(fragments[2]) == []
    assert manifest.overlaps == ['2/1']
    assert 'h-rest' not in manifest.fragment_ids()

    fragments, manifest = horizontal_fragment(annotated_books, [parse_selection(PRICE_HIGH)])
    assert manifest.fragment_ids() == ['h1', 'h-rest']
    assert unit_labels(fragments[1]) == ['1/1', '2/1']
    assert manifest.entry('h-rest').remainder


def test_horizontal_matches_brute_force(catalogue):
    selections = [parse_selection('/books/book/price < 150'),
                  parse_selection('/books/book/year >= 2010'),
                  parse_selection('/books/book/category = "Database"')]
    fragments, _ = horizontal_fragment(catalogue, selections)
    placed = {}
    for fragment in fragments:
        for label in unit_labels(fragment):
            placed[label] = fragment.fragment_id
    for record in catalogue.root.children:
        hits = [i for i, s in enumerate(selections, start=1) if evaluate_predicate(record, s)]
        expected = f"h{hits[0]}" if hits else 'h-rest'
        assert placed[record.get('address')] == expected


def test_horizontal_guards(catalogue):
    _, manifest = horizontal_fragment(catalogue, [parse_selection('/books/book/price < 150'),
                                                  parse_selection('/books/book/price >= 150')])
    assert manifest.entry('h1').guards == {'/books/book/price': {'numeric': True, 'single': True}}

    _, manifest = horizontal_fragment(
        catalogue, [parse_selection('/books/book/authors/author != "nobody"')])
    assert manifest.entry('h1').records == 40
    assert manifest.entry('h1').guards == {
        '/books/book/authors/author': {'numeric': False, 'single': False}}


def test_horizontal_rejects_foreign_paths(annotated_books):
    with pytest.raises(UnknownPathError):
        horizontal_fragment(annotated_books, [parse_selection('/shop/book/price > 1')])
    with pytest.raises(PredicateSyntaxError):
        horizontal_fragment(annotated_books, [parse_selection('/books/book/price > 1'),
                                              parse_selection('/books/magazine/price > 1')])


def test_range_split(catalogue):
    fragments, manifest = horizontal_range_fragment(catalogue, 2)
    assert manifest.model == 'range'
    assert [e.ordinal_range for e in manifest.fragments] == [[1, 20], [21, 40]]
    assert [e.records for e in manifest.fragments] == [20, 20]
    assert fragments[1].record_ordinals() == list(range(21, 41))

    _, manifest = horizontal_range_fragment(catalogue, 3)
    assert [e.ordinal_range for e in manifest.fragments] == [[1, 14], [15, 27], [28, 40]]


def test_range_more_parts_than_records(annotated_books):
    fragments, manifest = horizontal_range_fragment(annotated_books, 5)
    assert [e.records for e in manifest.fragments] == [1, 1, 1, 0, 0]
    assert manifest.entry('r4').ordinal_range is None
    with pytest.raises(InvalidParameterError):
        horizontal_range_fragment(annotated_books, 0)


def test_quantile_split(catalogue):
    path = '/books/book/price'
    fragments, manifest = horizontal_quantile_fragment(catalogue, path, 4)
    sizes = [e.records for e in manifest.fragments]
    assert sum(sizes) == 40
    assert all(abs(size - 10) <= 2 for size in sizes)
    highs = []
    for fragment, entry in zip(fragments, manifest.fragments):
        low, high = (Decimal(v) for v in entry.value_range)
        prices = [Decimal(r.children[6].text) for r in fragment.units]
        assert all(low <= price <= high for price in prices)
        assert entry.predicates == [f"{path} >= {entry.value_range[0]}",
                                    f"{path} <= {entry.value_range[1]}"]
        highs.append(high)
        assert entry.ranged
    assert highs == sorted(highs)
    ordinals = [o for f in fragments for o in f.record_ordinals()]
    assert sorted(ordinals) == list(range(1, 41))


@pytest.mark.parametrize("parts", [2, 3, 4, 7])
def test_quantile_keeps_tied_values_together(parts):
    t = annotate(generate_books(60, seed=2, chapters=1, price_min=10, price_max=10.04))
    fragments, manifest = horizontal_quantile_fragment(t, '/books/book/price', parts)
    assert manifest.fragment_ids() == [f"q{i}" for i in range(1, parts + 1)]
    owner = {}
    for fragment in fragments:
        for record in fragment.units:
            owner.setdefault(record.children[6].text, set()).add(fragment.fragment_id)
    assert all(len(ids) == 1 for ids in owner.values())
    assert sum(entry.records for entry in manifest.fragments) == 60
    ranges = [[Decimal(v) for v in e.value_range] for e in manifest.fragments if e.records]
    assert all(high < low for (_, high), (low, _) in zip(ranges, ranges[1:]))


def test_quantile_single_value_is_one_group():
    t = annotate(generate_books(9, seed=1, chapters=1, price_min=25, price_max=25))
    _, manifest = horizontal_quantile_fragment(t, '/books/book/price', 3)
    assert [e.records for e in manifest.fragments] == [9, 0, 0]
    assert manifest.entry('q1').value_range == ['25.00', '25.00']
    assert manifest.entry('q2').value_range is None


def test_quantile_rejects_bad_path(catalogue):
    with pytest.raises(UnknownPathError):
        horizontal_quantile_fragment(catalogue, '/shop/book/price', 2)


# Vertical and hybrid

def test_vertical_projects_table_of_content(annotated_books):
    remainder, projected, manifest = vertical_fragment(annotated_books, TOC)
    assert remainder.fragment_id == 'v0'
    assert remainder.model is FragmentModel.VERTICAL_REMAINDER
    assert projected.model is FragmentModel.VERTICAL_PROJECTED
    assert all(node.tag != 'TableOfContent' for node in remainder.content.iter())
    assert [b.get('ref') for b in remainder.content.root.children] == ['1.8/10', '2.8/10',
                                                                       '3.8/10']
    assert projected.content.root.tag == 'TableOfContent'
    assert projected.content.root.get('address') is None
    assert projected.context == ('books', 'book')
    assert unit_labels(projected) == ['1.8/10', '2.8/10', '3.8/10']
    assert manifest.links == [Link('1/1', '1.8/10', 'v1'), Link('2/1', '2.8/10', 'v1'),
                              Link('3/1', '3.8/10', 'v1')]
    assert manifest.ref_attr == 'ref'
    assert manifest.entry('v1').records == 3


def test_vertical_several_cuts_share_one_reference(annotated_books):
    remainder, projected, manifest = vertical_fragment(
        annotated_books, PathSelector.parse('/books/book/authors/author'))
    first_authors = remainder.content.root.children[0].children[2]
    assert first_authors.get('ref') == '1.3.1/5 1.3.2/5'
    assert len(projected.units) == 6
    assert len(manifest.links) == 6


def test_vertical_errors(annotated_books):
    with pytest.raises(EmptyProjectionError):
        vertical_fragment(annotated_books, PathSelector.parse('/books/book/preface'))
    with pytest.raises(InvalidSelectorError):
        PathSelector.parse('/books')
    with pytest.raises(InvalidSelectorError):
        PathSelector.parse('books/book')
    with pytest.raises(LabelingConflictError):
        vertical_fragment(annotated_books, TOC, ref_attr='address')


def test_hybrid_yields_four_fragments(annotated_books):
    fragments, manifest = hybrid_fragment(
        annotated_books, [parse_selection(PRICE_LOW), parse_selection(PRICE_HIGH)], TOC)
    assert manifest.fragment_ids() == ['h1.v0', 'h1.v1', 'h2.v0', 'h2.v1']
    by_id = {f.fragment_id: f for f in fragments}
    assert unit_labels(by_id['h1.v0']) == ['1/1', '2/1']
    assert unit_labels(by_id['h1.v1']) == ['1.8/10', '2.8/10']
    assert unit_labels(by_id['h2.v0']) == ['3/1']
    assert unit_labels(by_id['h2.v1']) == ['3.8/10']
    assert manifest.entry('h2.v0').predicates == [PRICE_HIGH]
    assert {link.fragment_id for link in manifest.links} == {'h1.v1', 'h2.v1'}


def test_hybrid_without_predicates_is_vertical(annotated_books):
    fragments, manifest = hybrid_fragment(annotated_books, [], TOC)
    remainder, projected, _ = vertical_fragment(annotated_books, TOC)
    assert manifest.fragment_ids() == ['h-rest.v0', 'h-rest.v1']
    assert unit_labels(fragments[0]) == unit_labels(remainder)
    assert unit_labels(fragments[1]) == unit_labels(projected)
    assert len(manifest.links) == 3


# Size and SimpleX

def test_size_buckets(annotated_books):
    sizes = [subtree_byte_size(book(annotated_books, i)) for i in (1, 2, 3)]
    fragments, manifest = fragment_by_size(annotated_books, sizes[0] + sizes[1])
    assert [unit_labels(f) for f in fragments] == [['1/1', '2/1'], ['3/1']]
    assert [e.flagged for e in manifest.fragments] == [False, False]
    assert manifest.model == 'size'


def test_size_degenerate_thresholds(annotated_books):
    fragments, manifest = fragment_by_size(annotated_books, 1)
    assert [unit_labels(f) for f in fragments] == [['1/1'], ['2/1'], ['3/1']]
    assert all(e.flagged for e in manifest.fragments)

    whole = subtree_byte_size(annotated_books.root)
    fragments, _ = fragment_by_size(annotated_books, whole)
    assert len(fragments) == 1

    with pytest.raises(InvalidParameterError):
        fragment_by_size(annotated_books, 0)


def test_size_buckets_respect_threshold(catalogue):
    threshold = 4000
    fragments, manifest = fragment_by_size(catalogue, threshold)
    for fragment, entry in zip(fragments, manifest.fragments):
        if not entry.flagged:
            assert sum(subtree_byte_size(u) for u in fragment.units) <= threshold
    ordinals = [o for f in fragments for o in f.record_ordinals()]
    assert ordinals == list(range(1, 41))


def test_simplex_cuts_below_books(annotated_books):
    limits = SizeConstraints(max_size=10 ** 6, max_width=100, max_depth=3)
    fragments, manifest = simplex_fragment(annotated_books, limits)
    skeleton = fragments[0]
    assert skeleton.fragment_id == 'x0'
    assert manifest.entry('x0').skeleton and not manifest.entry('x0').flagged
    assert [node.tag for node in skeleton.content.iter()] == ['books', 'book', 'book', 'book']
    assert len(fragments) == 1 + 3 * 8
    assert len(manifest.links) == 24
    cut_tags = [f.units[0].tag for f in fragments[1:9]]
    assert cut_tags == ['title', 'ISBN', 'authors', 'publisher', 'year', 'category', 'price',
                        'TableOfContent']
    for fragment in fragments[1:]:
        unit = fragment.units[0]
        assert tree_height(unit) <= 3
        assert max_fanout(unit) <= 100
    assert manifest.model == 'simplex'


def test_simplex_forced_descent(annotated_books):
    fragments, _ = simplex_fragment(annotated_books, SizeConstraints(10 ** 6, 100, 1))
    assert all(f.units[0].is_leaf for f in fragments[1:])
    leaves = [n for n in annotated_books.root.iter() if n.is_leaf]
    assert len(fragments) - 1 == len(leaves)


def test_simplex_whole_document(annotated_books):
    fragments, manifest = simplex_fragment(annotated_books, SizeConstraints(10 ** 6, 100, 100))
    assert manifest.fragment_ids() == ['x0']
    assert manifest.links == []


def test_simplex_bounds_on_catalogue(catalogue):
    limits = SizeConstraints(max_size=600, max_width=3, max_depth=2)
    fragments, manifest = simplex_fragment(catalogue, limits)
    skeleton = manifest.entry('x0')
    assert skeleton.skeleton and skeleton.flagged
    assert not any(entry.skeleton for entry in manifest.fragments[1:])
    shapes = fragment_stats(fragments).shapes
    assert shapes[0].skeleton and shapes[0].flagged
    for fragment, entry in zip(fragments[1:], manifest.fragments[1:]):
        unit = fragment.units[0]
        if entry.flagged:
            assert unit.is_leaf
            continue
        assert subtree_byte_size(unit) <= limits.max_size
        assert max_fanout(unit) <= limits.max_width
        assert tree_height(unit) <= limits.max_depth


def test_size_constraints_positive():
    with pytest.raises(InvalidParameterError):
        SizeConstraints(0, 1, 1)


# Statistics

def test_coefficient_of_variation():
    assert coefficient_of_variation([100, 300]) == pytest.approx(0.5, abs=1e-12)
    assert coefficient_of_variation([7, 7, 7]) == 0
    assert coefficient_of_variation([]) == 0
    assert coefficient_of_variation([0, 0]) == 0


@pytest.mark.parametrize("size, bound", [(1, 1), (2, 2), (3, 4), (100, 128), (128, 128)])
def test_byte_bucket(size, bound):
    assert byte_bucket(size) == bound


def test_fragment_stats(annotated_books):
    fragments, _ = hybrid_fragment(
        annotated_books, [parse_selection(PRICE_LOW), parse_selection(PRICE_HIGH)], TOC)
    histogram = fragment_stats(fragments)
    assert sum(histogram.buckets.values()) == 4
    assert histogram.min_bytes <= histogram.mean_bytes <= histogram.max_bytes
    assert histogram.shapes[0].bytes == subtree_byte_size(fragments[0].content.root)
    report = histogram.to_dict()
    assert set(report) == {'fragments', 'histogram', 'min', 'max', 'mean', 'cv'}

    single = fragment_stats(fragments[:1])
    assert len(single.buckets) == 1
    assert single.cv == 0

    with pytest.raises(EmptyInputError):
        fragment_stats([])


# Manifest

def test_manifest_serialization(annotated_books):
    _, manifest = hybrid_fragment(
        annotated_books, [parse_selection(PRICE_LOW), parse_selection(PRICE_HIGH)], TOC)
    again = Manifest.from_dict(manifest.to_dict())
    assert again.to_dict() == manifest.to_dict()
    assert again.schema == annotated_books.schema


@pytest.mark.parametrize("model", ['hybrid', 'size', 'simplex'])
def test_manifest_sizes_match_serialization(annotated_books, model):
    if model == 'hybrid':
        fragments, manifest = hybrid_fragment(
            annotated_books, [parse_selection(PRICE_LOW), parse_selection(PRICE_HIGH)], TOC)
    elif model == 'size':
        fragments, manifest = fragment_by_size(annotated_books, 900)
    else:
        fragments, manifest = simplex_fragment(annotated_books, SizeConstraints(200, 2, 2))
    for fragment in fragments:
        entry = manifest.entry(fragment.fragment_id)
        assert entry.bytes == subtree_byte_size(fragment.content.root)
        assert entry.payload_bytes == sum(subtree_byte_size(u) for u in fragment.units)


def test_manifest_validation(annotated_books):
    _, manifest = horizontal_range_fragment(annotated_books, 2)
    data = manifest.to_dict()
    data['fragments'].append(dict(data['fragments'][0]))
    with pytest.raises(ManifestError):
        Manifest.from_dict(data)

    data = manifest.to_dict()
    data['links'] = [{'remainder': '/0', 'ref': '1/1', 'fragment_id': 'nowhere'}]
    with pytest.raises(ManifestError):
        Manifest.from_dict(data)

    with pytest.raises(ManifestError):
        Manifest.from_dict({'origin': 'x'})
