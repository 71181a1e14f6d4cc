import json
import random
from itertools import product

import numpy as np
import pytest

from src.cluster import Allocation
from src.errors import (AllocationIncompleteError, InvalidKError, InvalidParameterError,
                        UnknownElementError)
from src.fragmentation import PathSelector, vertical_fragment
from src.workload import (CostParams, Query, QueryWorkload, affinity_grouping, build_eam,
                          build_eum, group_affinity, load_workload, total_query_cost)

TITLE, YEAR, PRICE = 2, 7, 9


@pytest.fixture
def schema(annotated_books):
    return annotated_books.schema


@pytest.fixture
def two_queries(schema):
    return QueryWorkload.from_names(schema, [('q1', ['title', 'price'], 10),
                                             ('q2', ['price', 'year'], 5)])


@pytest.fixture
def toc_split(annotated_books):
    _, _, manifest = vertical_fragment(annotated_books,
                                       PathSelector.parse('/books/book/TableOfContent'))
    return manifest


def test_eum_rows(schema, two_queries):
    eum = build_eum(two_queries, schema)
    assert eum.query_ids == ('q1', 'q2')
    assert eum.use.shape == (2, 14)
    assert np.flatnonzero(eum.use[0]).tolist() == [TITLE, PRICE]
    assert np.flatnonzero(eum.use[1]).tolist() == [YEAR, PRICE]
    assert eum.freq.tolist() == [10, 5]


def test_eum_edge_cases(schema):
    assert build_eum(QueryWorkload(), schema).use.shape == (0, 14)
    twice = QueryWorkload.from_names(schema, [('a', ['year'], 1), ('b', ['year'], 1)])
    use = build_eum(twice, schema).use
    assert (use[0] == use[1]).all()
    with pytest.raises(UnknownElementError):
        build_eum(QueryWorkload((Query('q', frozenset({99}), 1),)), schema)
    with pytest.raises(UnknownElementError):
        QueryWorkload.from_names(schema, [('q', ['isbn'], 1)])


def test_eam_values(schema, two_queries):
    aff = build_eam(build_eum(two_queries, schema))
    assert aff.size == 14
    assert aff[TITLE, PRICE] == 10
    assert aff[PRICE, YEAR] == 5
    assert aff[TITLE, YEAR] == 0
    assert aff[PRICE, PRICE] == 15
    assert (aff.aff == aff.aff.T).all()


def test_eam_single_query_is_diagonal(schema):
    w = QueryWorkload.from_names(schema, [('q', ['year'], 4)])
    aff = build_eam(build_eum(w, schema)).aff
    assert aff[YEAR, YEAR] == 4
    assert np.count_nonzero(aff) == 1
    empty = build_eam(build_eum(QueryWorkload(), schema)).aff
    assert not empty.any()


def test_eam_properties_on_random_workloads(schema):
    rng = random.Random(11)
    for _ in range(50):
        entries = [(f"q{i}", rng.sample(schema.entries, rng.randint(1, 5)), rng.randint(1, 20))
                   for i in range(rng.randint(1, 8))]
        aff = build_eam(build_eum(QueryWorkload.from_names(schema, entries), schema)).aff
        assert (aff == aff.T).all()
        assert (aff >= 0).all()
        assert (aff.diagonal()[:, None] >= aff).all()


def best_two_partition(aff, children):
    """Exhaustive oracle: the 2-partition with the least cross affinity."""
    best = None
    for sides in product((0, 1), repeat=len(children)):
        if len(set(sides)) < 2 or sides[0] != 0:
            continue
        left = [c for c, s in zip(children, sides) if s == 0]
        right = [c for c, s in zip(children, sides) if s == 1]
        cross = group_affinity(aff, left, right)
        if best is None or cross < best[0]:
            best = (cross, sorted([sorted(left), sorted(right)]))
    return best[1]


def test_grouping_two_queries(schema, two_queries):
    aff = build_eam(build_eum(two_queries, schema))
    groups = affinity_grouping(aff, [TITLE, YEAR, PRICE], 2)
    assert groups == [[TITLE, PRICE], [YEAR]]
    assert sorted(groups) == best_two_partition(aff, [TITLE, YEAR, PRICE])


def test_grouping_bounds(schema, two_queries):
    aff = build_eam(build_eum(two_queries, schema))
    children = [TITLE, YEAR, PRICE]
    assert affinity_grouping(aff, children, 3) == [[TITLE], [YEAR], [PRICE]]
    assert affinity_grouping(aff, children, 1) == [[TITLE, YEAR, PRICE]]
    for k in (0, 4):
        with pytest.raises(InvalidKError):
            affinity_grouping(aff, children, k)
    with pytest.raises(InvalidKError):
        affinity_grouping(aff, [], 1)


def test_grouping_scale_invariant(schema, two_queries):
    scaled = QueryWorkload(tuple(Query(q.query_id, q.elements, q.freq * 7) for q in two_queries))
    children = [2, 3, 6, 7, 8, 9]
    plain = affinity_grouping(build_eam(build_eum(two_queries, schema)), children, 3)
    assert affinity_grouping(build_eam(build_eum(scaled, schema)), children, 3) == plain


def test_grouping_ties_prefer_small_then_low_types(schema):
    empty = build_eam(build_eum(QueryWorkload(), schema))
    assert affinity_grouping(empty, [5, 3, 4, 2], 2) == [[2, 3], [4, 5]]


def test_cost_of_table_of_contents_split(schema, toc_split):
    allocation = Allocation(2, {'v0': 0, 'v1': 1})
    w = QueryWorkload.from_names(schema, [('q', ['price', 'Number'], 2)])
    cost = total_query_cost(toc_split, allocation, w, CostParams(1, 1), {'v0': 100, 'v1': 300})
    assert cost == 1000


def test_cost_single_site_and_zero_weights(schema, toc_split):
    one_node = Allocation(1, {'v0': 0, 'v1': 0})
    w = QueryWorkload.from_names(schema, [('q', ['price', 'Number'], 3)])
    sizes = {'v0': 100, 'v1': 300}
    assert total_query_cost(toc_split, one_node, w, CostParams(2, 50), sizes) == 3 * 2 * 400
    two_nodes = Allocation(2, {'v0': 0, 'v1': 1})
    assert total_query_cost(toc_split, two_nodes, w, CostParams(0, 0), sizes) == 0


def test_cost_only_counts_touched_fragments(schema, toc_split):
    allocation = Allocation(2, {'v0': 0, 'v1': 1})
    w = QueryWorkload.from_names(schema, [('q', ['Topic'], 1)])
    cost = total_query_cost(toc_split, allocation, w, CostParams(1, 1), {'v0': 100, 'v1': 300})
    assert cost == 300


def test_cost_defaults_to_manifest_bytes(schema, toc_split):
    allocation = Allocation(1, {'v0': 0, 'v1': 0})
    w = QueryWorkload.from_names(schema, [('q', ['books'], 1)])
    assert total_query_cost(toc_split, allocation, w, CostParams()) == toc_split.entry('v0').bytes


def test_cost_is_monotone(schema, toc_split):
    allocation = Allocation(2, {'v0': 0, 'v1': 1})
    sizes = {'v0': 100, 'v1': 300}
    w = QueryWorkload.from_names(schema, [('q', ['price', 'Number'], 1)])
    heavier = QueryWorkload.from_names(schema, [('q', ['price', 'Number'], 4)])
    costs = [total_query_cost(toc_split, allocation, w, CostParams(a, b), sizes)
             for a, b in [(0, 0), (1, 0), (1, 1), (2, 1), (2, 3)]]
    assert costs == sorted(costs)
    assert total_query_cost(toc_split, allocation, heavier, CostParams(), sizes) >= costs[2]


def test_cost_errors(schema, toc_split):
    w = QueryWorkload.from_names(schema, [('q', ['price'], 1)])
    with pytest.raises(AllocationIncompleteError):
        total_query_cost(toc_split, Allocation(2, {'v0': 0}), w, CostParams())
    with pytest.raises(InvalidParameterError):
        CostParams(-1, 0)
    with pytest.raises(InvalidParameterError):
        Query('q', frozenset({1}), 0)


def test_load_workload(tmp_path, schema):
    path = tmp_path / 'workload.json'
    path.write_text(json.dumps([{'id': 'q1', 'elements': ['title', 'price'], 'freq': 10},
                                {'id': 'q2', 'elements': ['price', 'year'], 'freq': 5}]))
    w = load_workload(path, schema)
    assert [q.query_id for q in w] == ['q1', 'q2']
    assert w.queries[0].elements == frozenset({TITLE, PRICE})

    path.write_text(json.dumps([{'id': 'q1', 'elements': ['isbn'], 'freq': 1}]))
    with pytest.raises(UnknownElementError):
        load_workload(path, schema)

    path.write_text(json.dumps({'id': 'q1'}))
    with pytest.raises(InvalidParameterError):
        load_workload(path, schema)

    path.write_text(json.dumps([{'id': 'q1', 'elements': ['title']}]))
    with pytest.raises(InvalidParameterError):
        load_workload(path, schema)
