import pytest
from hypothesis import given, settings

from eodprod import amenability as am
from eodprod.amenability import Flavor, WeakPartition, ZigzagSet
from eodprod.eod_search import (
    PreconditionError,
    enumerate_eod_sets,
    find_eod_set,
    is_eod_set,
    is_parallel_eod,
)
from eodprod.graph_core import (
    Graph,
    cartesian_product,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
)
from eodprod.harness import load_fixture
from eodprod.tree_family import k1r_plus

from .test_graph_core import graphs


def c6_k2():
    return WeakPartition.from_classes(Flavor.kr(2), 6, {1: [0, 1], 2: [3, 4]})


def prism():
    """C5 x K2 with class i = {a_i, b_i}, a_i = 2(i-1), b_i = a_i + 1."""
    edges = []
    for i in range(5):
        a, b = 2 * i, 2 * i + 1
        edges += [(a, b), (a, 2 * ((i + 2) % 5)), (b, 2 * ((i + 2) % 5) + 1)]
    g = Graph(10, edges)
    p = WeakPartition.from_classes(Flavor.cycle(5), 10, {i + 1: [2 * i, 2 * i + 1] for i in range(5)})
    return g, p


def c8_c4():
    return WeakPartition.from_classes(Flavor.cycle(4), 8, {1: [0, 1, 4, 5], 3: [2, 3, 6, 7]})


# --- flavours and partition files ---------------------------------------------


def test_parse_flavor():
    assert am.parse_flavor("k3") == Flavor.kr(3)
    assert am.parse_flavor("kmn:2,3") == Flavor.kmn(2, 3)
    assert am.parse_flavor("c5") == Flavor.cycle(5)
    for bad in ("k1", "kmn:3,2", "c6", "x"):
        with pytest.raises(am.AmenabilityError):
            am.parse_flavor(bad)


def test_labels_validated():
    with pytest.raises(am.AmenabilityError):
        WeakPartition(Flavor.kr(2), (0, 3))
    with pytest.raises(am.AmenabilityError):
        WeakPartition(Flavor.kmn(2, 3), (0, (3, 4)))
    WeakPartition(Flavor.kmn(2, 3), (0, (2, 5)))


def test_partition_file_round_trip():
    p = load_fixture("fig1").partition
    assert am.parse_partition(p.render(), p.flavor, p.n) == p


def test_partition_file_must_cover():
    with pytest.raises(am.AmenabilityError):
        am.parse_partition("1: 0 1\n", Flavor.kr(2), 3)
    with pytest.raises(am.AmenabilityError):
        am.parse_partition("1: 0 1\n0: 1 2\n", Flavor.kr(2), 3)


# --- K_r -------------------------------------------------------------------------


def test_kr_examples():
    t = k1r_plus(3)
    assert am.check_kr_amenable(t.tree, t.partition)
    assert am.check_kr_amenable(cycle_graph(6), c6_k2())
    bad = WeakPartition.from_classes(Flavor.kr(2), 3, {1: [0, 1]})
    res = am.check_kr_amenable(path_graph(3), bad)
    assert not res
    assert res.violations[0].condition == "A"
    assert res.violations[0].witness == (2,)
    assert res.violations[0].render().startswith("VIOLATION A at 2")


def test_kr_flavor_mismatch():
    with pytest.raises(am.AmenabilityError):
        am.check_kr_amenable(cycle_graph(8), c8_c4())


def test_find_kr_examples():
    p = am.find_kr_amenable(path_graph(2), 5)
    assert p is not None and p.labels == (1, 1)
    assert am.find_kr_amenable(path_graph(3), 2) is None
    assert am.brute_force_partition(path_graph(3), Flavor.kr(2)) is None
    assert am.find_kr_amenable(k1r_plus(3).tree, 3) is not None


def test_kr_converters():
    t = k1r_plus(3)
    d = am.kr_partition_to_eod(t.tree, t.partition)
    product, dims = cartesian_product(t.tree, complete_graph(3))
    assert len(d) == 6 and product.n == 21 and is_eod_set(product, d)
    assert am.kr_partition_to_eod(t.tree, am.eod_to_kr_partition(dims, 3, d)) == d

    p2 = WeakPartition(Flavor.kr(3), (1, 1))
    d = am.kr_partition_to_eod(path_graph(2), p2)
    assert d == (0, 3)
    _, dims = cartesian_product(path_graph(2), complete_graph(3))
    assert am.eod_to_kr_partition(dims, 3, d) == p2

    d = am.kr_partition_to_eod(cycle_graph(6), c6_k2())
    assert d == (0, 2, 7, 9)
    assert is_eod_set(cartesian_product(cycle_graph(6), complete_graph(2))[0], d)


def test_eod_to_kr_two_in_layer():
    _, dims = cartesian_product(path_graph(2), complete_graph(3))
    with pytest.raises(PreconditionError):
        am.eod_to_kr_partition(dims, 3, [dims.index(0, 0), dims.index(0, 1)])


def test_kr_to_eod_rejects_bad_partition():
    with pytest.raises(PreconditionError):
        am.kr_partition_to_eod(path_graph(3), WeakPartition(Flavor.kr(2), (1, 1, 0)))


@settings(max_examples=60, deadline=None)
@given(graphs(5))
def test_kr_search_matches_brute_force(g):
    for r in (2, 3):
        found = am.find_kr_amenable(g, r)
        brute = am.brute_force_partition(g, Flavor.kr(r))
        assert (found is None) == (brute is None)
        if found is not None:
            assert am.check_kr_amenable(g, found)


# --- zig-zag -----------------------------------------------------------------------


def test_zigzag_examples():
    assert am.is_zigzag_set(cycle_graph(6), ZigzagSet.of([(0, 1), (3, 4)]))
    res = am.is_zigzag_set(path_graph(4), ZigzagSet.of([(0, 1), (2, 3)]))
    assert not res and "ii" in res.conditions()
    res = am.is_zigzag_set(cycle_graph(9), ZigzagSet.of([(0, 1), (3, 4), (6, 7)]))
    assert not res and "iv" in res.conditions()


def test_zigzag_argument_errors():
    with pytest.raises(am.AmenabilityError):
        am.is_zigzag_set(path_graph(2), ZigzagSet.of([(0, 1)]))
    with pytest.raises(am.AmenabilityError):
        am.is_zigzag_set(path_graph(4), ZigzagSet.of([]))


def test_zigzag_converters():
    c6 = cycle_graph(6)
    zz = ZigzagSet.of([(0, 1), (3, 4)])
    assert am.zigzag_to_k2_partition(c6, zz) == c6_k2()
    assert am.k2_partition_to_zigzag(c6, c6_k2()) == zz
    p5 = k1r_plus(2)
    assert am.k2_partition_to_zigzag(p5.tree, p5.partition).edges == ((1, 2), (3, 4))
    with pytest.raises(PreconditionError):
        am.zigzag_to_k2_partition(cycle_graph(9), ZigzagSet.of([(0, 1), (3, 4), (6, 7)]))


def test_k2_partition_to_zigzag_path_labelled():
    # P5 labelled along the path with centre 2
    p = WeakPartition.from_classes(Flavor.kr(2), 5, {1: [0, 1], 2: [3, 4]})
    assert am.k2_partition_to_zigzag(path_graph(5), p) == ZigzagSet.of([(0, 1), (3, 4)])


@settings(max_examples=60, deadline=None)
@given(graphs(6))
def test_zigzag_gives_eod_of_prism_product(g):
    if g.n < 3:
        return
    zz = am.find_zigzag_set(g)
    assert (zz is None) == (am.find_kr_amenable(g, 2) is None)
    if zz is not None:
        p = am.zigzag_to_k2_partition(g, zz)
        assert am.check_kr_amenable(g, p)
        assert am.k2_partition_to_zigzag(g, p) == zz
        product, _ = cartesian_product(g, complete_graph(2))
        assert is_eod_set(product, am.kr_partition_to_eod(g, p))


# --- K_{m,n} ---------------------------------------------------------------------


def test_kmn_examples():
    fx = load_fixture("fig1")
    assert am.check_kmn_amenable(fx.graph, fx.partition)
    assert am.check_kmn_amenable(path_graph(2), WeakPartition(Flavor.kmn(1, 1), (1, 1)))
    res = am.check_kmn_amenable(empty_graph(1), WeakPartition(Flavor.kmn(1, 1), (0,)))
    assert not res and res.conditions() == ["V"]


def test_find_kmn_examples():
    fx = load_fixture("fig1")
    p = am.find_kmn_amenable(fx.graph, 2, 3)
    assert p is not None and am.check_kmn_amenable(fx.graph, p)
    assert am.find_kmn_amenable(path_graph(2), 1, 1) is not None
    # P3 x K_{1,1} is the 2 x 3 grid, whose middle rung is an EOD-set
    p3 = am.find_kmn_amenable(path_graph(3), 1, 1)
    assert p3 is not None and p3.labels == (0, (1, 2), 0)
    assert am.brute_force_partition(path_graph(3), Flavor.kmn(1, 1)) is not None
    assert am.find_kmn_amenable(cycle_graph(5), 1, 1) is None
    assert am.brute_force_partition(cycle_graph(5), Flavor.kmn(1, 1)) is None


def test_kmn_converters():
    fx = load_fixture("fig1")
    d = am.kmn_partition_to_eod(fx.graph, fx.partition)
    product, dims = cartesian_product(fx.graph, complete_bipartite_graph(2, 3))
    assert len(d) == 12 and product.n == 60 and is_eod_set(product, d)
    assert am.eod_to_kmn_partition(dims, 2, 3, d) == fx.partition

    p = WeakPartition(Flavor.kmn(1, 1), (1, 1))
    d = am.kmn_partition_to_eod(path_graph(2), p)
    assert d == (0, 2)
    _, dims = cartesian_product(path_graph(2), complete_bipartite_graph(1, 1))
    assert am.eod_to_kmn_partition(dims, 1, 1, d) == p


def test_eod_to_kmn_same_side_pair():
    _, dims = cartesian_product(path_graph(2), complete_bipartite_graph(2, 3))
    with pytest.raises(PreconditionError):
        am.eod_to_kmn_partition(dims, 2, 3, [dims.index(0, 2), dims.index(0, 3)])


@settings(max_examples=40, deadline=None)
@given(graphs(4))
def test_kmn_search_matches_brute_force(g):
    for m, n in ((1, 1), (1, 2)):
        found = am.find_kmn_amenable(g, m, n)
        brute = am.brute_force_partition(g, Flavor.kmn(m, n))
        assert (found is None) == (brute is None)


# --- C4 / C5 -----------------------------------------------------------------------


def test_cycle_examples():
    assert am.check_cycle_parallel_amenable(cycle_graph(8), c8_c4())
    g, p = prism()
    assert am.check_cycle_parallel_amenable(g, p)
    assert am.find_cycle_parallel_amenable(path_graph(3), 4) is None
    assert am.brute_force_partition(path_graph(3), Flavor.cycle(4)) is None
    assert am.find_cycle_parallel_amenable(cycle_graph(8), 4) is not None
    assert am.find_cycle_parallel_amenable(path_graph(2), 5) is None
    assert am.brute_force_partition(path_graph(2), Flavor.cycle(5)) is None


def test_cycle_converters():
    for g, p, k in [(cycle_graph(8), c8_c4(), 4), (*prism(), 5)]:
        d = am.cycle_partition_to_parallel_eod(g, p)
        product, dims = cartesian_product(g, cycle_graph(k))
        assert product.n == g.n * k
        assert is_eod_set(product, d) and is_parallel_eod(dims, "first", d, product)
        assert am.parallel_eod_to_cycle_partition(dims, k, d) == p


def test_p3_c4_sets_are_not_parallel():
    product, dims = cartesian_product(path_graph(3), cycle_graph(4))
    sets = enumerate_eod_sets(product)
    assert sets
    for d in sets:
        with pytest.raises(PreconditionError):
            am.parallel_eod_to_cycle_partition(dims, 4, d)


@settings(max_examples=40, deadline=None)
@given(graphs(4))
def test_cycle_search_matches_brute_force(g):
    for k in (4, 5):
        found = am.find_cycle_parallel_amenable(g, k)
        brute = am.brute_force_partition(g, Flavor.cycle(k))
        assert (found is None) == (brute is None)
        product, dims = cartesian_product(g, cycle_graph(k))
        cert = find_eod_set(product)
        if found is not None:
            assert cert.found
