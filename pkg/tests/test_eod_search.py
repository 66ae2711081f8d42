import pytest
from hypothesis import given, settings, strategies as st

from eodprod.eod_search import (
    PreconditionError,
    SearchOptions,
    enumerate_eod_sets,
    find_eod_set,
    is_eod_set,
    is_parallel_eod,
    is_total_dominating_set,
    layer_occupancy,
    naive_eod_sets,
)
from eodprod.graph_core import (
    Graph,
    GraphError,
    ProductDims,
    cartesian_product,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    path_graph,
)
from eodprod.harness import enumerate_labeled_graphs
from eodprod.tree_family import k1r_plus

from .test_graph_core import graphs


def test_total_domination():
    p4 = path_graph(4)
    assert is_total_dominating_set(p4, {1, 2})
    assert not is_total_dominating_set(p4, {0, 1})
    assert is_total_dominating_set(cycle_graph(4), range(4))


def test_is_eod_set():
    assert is_eod_set(path_graph(4), {1, 2})
    assert is_eod_set(cycle_graph(4), {0, 1})
    assert not is_eod_set(path_graph(5), {1, 2})


def test_find_eod_examples():
    assert not find_eod_set(path_graph(5)).found
    assert not find_eod_set(cycle_graph(6)).found
    cert = find_eod_set(cycle_graph(8))
    assert cert.found and is_eod_set(cycle_graph(8), cert.d)
    # frozen from exhaustive subset enumeration on C8 under exclude-first branching
    assert cert.d == (2, 3, 6, 7)
    assert cert.render() == "EOD n=8 D=[2, 3, 6, 7]"


def test_not_found_render():
    cert = find_eod_set(path_graph(5))
    assert cert.render().startswith("NO-EOD nodes=")


def test_isolated_vertex_is_infeasible():
    assert not find_eod_set(Graph(3, [(0, 1)])).found


def test_find_is_deterministic():
    p, _ = cartesian_product(cycle_graph(8), complete_graph(3))
    assert find_eod_set(p) == find_eod_set(p)


def test_enumerate_small():
    assert enumerate_eod_sets(cycle_graph(4)) == [(0, 1), (0, 3), (1, 2), (2, 3)]
    assert enumerate_eod_sets(path_graph(2)) == [(0, 1)]
    assert enumerate_eod_sets(path_graph(5)) == []


def test_enumerate_matches_naive_on_products():
    for g, h in [(path_graph(4), complete_graph(2)), (cycle_graph(4), cycle_graph(4)),
                 (path_graph(3), cycle_graph(4)), (cycle_graph(8), complete_graph(2))]:
        p, _ = cartesian_product(g, h)
        assert enumerate_eod_sets(p) == naive_eod_sets(p)


@settings(max_examples=80, deadline=None)
@given(graphs(9))
def test_enumerate_matches_naive(g):
    sets = enumerate_eod_sets(g)
    assert sets == naive_eod_sets(g)
    for d in sets:
        assert is_eod_set(g, d) and is_total_dominating_set(g, d)
    assert find_eod_set(g).found == bool(sets)


def test_enumerate_all_mode():
    cert = find_eod_set(cycle_graph(4), SearchOptions(mode="enumerate_all"))
    assert cert.all_sets == [(0, 1), (0, 3), (1, 2), (2, 3)]


def test_parallel_examples():
    p, dims = cartesian_product(path_graph(4), complete_graph(2))
    d = [dims.index(0, 0), dims.index(0, 1), dims.index(3, 0), dims.index(3, 1)]
    assert is_eod_set(p, d)
    assert is_parallel_eod(dims, "second", d, p)
    assert not is_parallel_eod(dims, "first", d, p)

    p, dims = cartesian_product(cycle_graph(6), complete_graph(2))
    d = [dims.index(0, 0), dims.index(1, 0), dims.index(3, 1), dims.index(4, 1)]
    assert is_parallel_eod(dims, "first", d, p)


def test_parallel_requires_eod():
    p, dims = cartesian_product(path_graph(4), complete_graph(2))
    with pytest.raises(PreconditionError):
        is_parallel_eod(dims, "first", [0], p)


def test_parallel_filter_in_search():
    p, dims = cartesian_product(cycle_graph(8), cycle_graph(4))
    cert = find_eod_set(p, SearchOptions(dims=dims, factor="first", require="parallel_only"))
    assert cert.found and is_parallel_eod(dims, "first", cert.d, p)
    assert cert.is_parallel_wrt_first

    p, dims = cartesian_product(path_graph(3), cycle_graph(4))
    assert find_eod_set(p).found
    assert not find_eod_set(p, SearchOptions(dims=dims, require="parallel_only")).found


def test_dims_mismatch():
    with pytest.raises(GraphError):
        find_eod_set(path_graph(4), SearchOptions(dims=ProductDims(3, 2)))


def test_bad_options():
    with pytest.raises(ValueError):
        SearchOptions(mode="fastest")
    with pytest.raises(ValueError):
        SearchOptions(require="parallel_only")


def test_layer_occupancy():
    dims = ProductDims(3, 4)
    assert [c for _, c, _ in layer_occupancy(dims, [])] == [0, 0, 0]
    # a 2-regular G has no K3-amenable partition, so C8 x K3 is not an EOD-graph
    assert not find_eod_set(cartesian_product(cycle_graph(8), complete_graph(3))[0]).found
    p, dims = cartesian_product(k1r_plus(3).tree, complete_graph(3))
    cert = find_eod_set(p)
    assert cert.found
    assert all(c <= 1 for _, c, _ in layer_occupancy(dims, cert.d))


@pytest.mark.parametrize("r", [3, 4])
def test_kr_layers_hold_at_most_one(r):
    kr = complete_graph(r)
    for n in range(1, 6):
        for g in enumerate_labeled_graphs(n):
            p, dims = cartesian_product(g, kr)
            for d in enumerate_eod_sets(p):
                assert all(c <= 1 for _, c, _ in layer_occupancy(dims, d))


@pytest.mark.parametrize("h", [cycle_graph(4), cycle_graph(5), complete_bipartite_graph(2, 3)])
def test_diameter_two_layers(h):
    for n in range(1, 6):
        for g in enumerate_labeled_graphs(n):
            p, dims = cartesian_product(g, h)
            for d in enumerate_eod_sets(p):
                for _, c, adj in layer_occupancy(dims, d, h):
                    assert c <= 2
                    assert c < 2 or adj
