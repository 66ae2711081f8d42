"""Fixtures and verification suites tying each characterization to exact search.

Every suite is a list of small, picklable instance descriptors plus a
top-level function that decides one instance. ``run_suite`` maps the
function over the descriptors (optionally in worker processes) and
aggregates by descriptor order, so reports do not depend on the number of
workers. ``run_instance`` replays a single descriptor from a failure list.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator

from . import amenability as am
from . import oracles
from .eod_search import (
    SearchOptions,
    _parallel_check,
    enumerate_eod_sets,
    find_eod_set,
    is_eod_set,
    is_parallel_eod,
    layer_occupancy,
)
from .graph_core import (
    Graph,
    cartesian_product,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    path_graph,
)
from .tree_family import (
    canonical_code,
    enumerate_trees,
    generate_family,
    recognize_tree_with_map,
    replay,
)


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# fixtures


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Graph
    citation: str
    partition: am.WeakPartition | None = None
    # label sets over C_k classes, for the cycle sketch without a formal flavour
    cycle_labels: tuple[frozenset, ...] | None = None
    cycle_k: int = 0
    vertex_names: str = ""

    def implied_eod(self) -> tuple[Graph, tuple[int, ...]]:
        """The product and the vertex set the fixture's labels describe."""
        if self.partition is not None:
            p = self.partition
            product, _ = cartesian_product(self.graph, p.flavor.factor())
            if p.flavor.kind == "Kmn":
                return product, am.kmn_partition_to_eod(self.graph, p)
            if p.flavor.kind == "Kr":
                return product, am.kr_partition_to_eod(self.graph, p)
            return product, am.cycle_partition_to_parallel_eod(self.graph, p)
        product, dims = cartesian_product(self.graph, cycle_graph(self.cycle_k))
        d = sorted(dims.index(v, a - 1) for v, s in enumerate(self.cycle_labels) for a in s)
        return product, tuple(d)


def _named(names: str, edges: list[str]) -> Graph:
    ix = {c: i for i, c in enumerate(names)}
    return Graph(len(names), [(ix[e[0]], ix[e[1]]) for e in edges])


def _fig1() -> Fixture:
    # vertices a..g, u, v, w, x, y in this order
    names = "abcdefguvwxy"
    edges = ["ab", "au", "ay", "bc", "be", "bf", "cd", "cg", "af",
             "de", "dg", "ef", "fg", "uv", "uw", "vx", "xw"]
    g = _named(names, edges)
    by_name = {"a": 0, "b": 4, "c": 4, "d": 5, "e": 5, "f": 3, "g": 3,
               "u": 1, "v": 1, "w": 2, "x": 2, "y": (2, 5)}
    labels = tuple(by_name[c] for c in names)
    return Fixture("fig1", g, "K_{2,3}-amenable example graph",
                   partition=am.WeakPartition(am.Flavor.kmn(2, 3), labels), vertex_names=names)


def _fig2() -> Fixture:
    names = "abcdefgh"
    edges = ["ab", "gh", "ch", "bc", "bf", "af", "fg", "de", "dg"]
    g = _named(names, edges)
    by_name = {"a": {1, 2}, "b": set(), "c": {3, 6}, "d": {1, 2},
               "e": {4, 5}, "f": {4, 5}, "g": set(), "h": {3, 6}}
    labels = tuple(frozenset(by_name[c]) for c in names)
    return Fixture("fig2", g, "C_6 label-set example graph",
                   cycle_labels=labels, cycle_k=6, vertex_names=names)


FIXTURES: dict[str, Callable[[], Fixture]] = {"fig1": _fig1, "fig2": _fig2}


def load_fixture(name: str) -> Fixture:
    if name not in FIXTURES:
        raise UsageError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return FIXTURES[name]()


def check_fixture(fx: Fixture) -> bool:
    if fx.partition is not None and not am.check_partition(fx.graph, fx.partition):
        return False
    product, d = fx.implied_eod()
    return is_eod_set(product, d)


# ---------------------------------------------------------------------------
# labelled graphs


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def graph_from_mask(n: int, mask: int) -> Graph:
    return Graph(n, [e for i, e in enumerate(_pairs(n)) if mask >> i & 1])


def enumerate_labeled_graphs(n: int, allow_large: bool = False) -> Iterator[Graph]:
    """All labelled graphs on ``n`` vertices, by ascending edge mask."""
    if n < 1:
        raise UsageError("n must be at least 1")
    if n > 6 and not allow_large:
        raise UsageError(f"n={n} exceeds the desk-scale limit 6 (pass allow_large=True)")
    for mask in range(1 << (n * (n - 1) // 2)):
        yield graph_from_mask(n, mask)


# ---------------------------------------------------------------------------
# reports


@dataclass
class SuiteReport:
    suite_id: str
    instance_count: int = 0
    pass_count: int = 0
    failures: list[tuple[str, str, str]] = field(default_factory=list)
    wall_time: float = 0.0
    notes: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def render(self) -> str:
        lines = [
            f"suite      {self.suite_id}",
            f"instances  {self.instance_count}",
            f"passed     {self.pass_count}",
            f"failed     {len(self.failures)}",
            f"time       {self.wall_time:.2f}s",
        ]
        for k, v in self.notes.items():
            lines.append(f"note       {k}: {v}")
        for desc, exp, got in self.failures[:20]:
            lines.append(f"FAIL {desc}: expected {exp}, got {got}")
        return "\n".join(lines) + "\n"

    def render_kv(self) -> str:
        kv = {
            "suite": self.suite_id,
            "instances": self.instance_count,
            "passed": self.pass_count,
            "failed": len(self.failures),
            "time": f"{self.wall_time:.3f}",
        }
        kv.update({f"note.{k}": v for k, v in self.notes.items()})
        return "\n".join(f"{k}={v}" for k, v in kv.items()) + "\n"


# Each instance function returns (ok, expected, got, extra) where ``extra`` is
# a dict of counters merged into the report notes.


def _factor(name: str) -> Graph:
    if name.startswith("C"):
        return cycle_graph(int(name[1:]))
    if name.startswith("K") and "," in name:
        m, n = name[1:].split(",")
        return complete_bipartite_graph(int(m), int(n))
    return complete_graph(int(name[1:]))


def _inst_kr(desc):
    n, mask, r = desc
    g = graph_from_mask(n, mask)
    p = am.find_kr_amenable(g, r)
    product, dims = cartesian_product(g, complete_graph(r))
    cert = find_eod_set(product)
    ok = (p is not None) == cert.found
    if p is not None:
        d = am.kr_partition_to_eod(g, p)
        ok &= is_eod_set(product, d) and am.eod_to_kr_partition(dims, r, d) == p
    if cert.found:
        back = am.eod_to_kr_partition(dims, r, cert.d)
        ok &= bool(am.check_kr_amenable(g, back)) and am.kr_partition_to_eod(g, back) == cert.d
    return ok, "amenable == EOD", f"amenable={p is not None} eod={cert.found}", {}


def _inst_zz(desc):
    n, mask = desc
    g = graph_from_mask(n, mask)
    zz = am.find_zigzag_set(g)
    p = am.find_kr_amenable(g, 2)
    ok = (zz is not None) == (p is not None)
    if zz is not None:
        q = am.zigzag_to_k2_partition(g, zz)
        ok &= bool(am.check_kr_amenable(g, q)) and am.k2_partition_to_zigzag(g, q) == zz
        product, _ = cartesian_product(g, complete_graph(2))
        ok &= is_eod_set(product, am.kr_partition_to_eod(g, q))
    if p is not None:
        zz2 = am.k2_partition_to_zigzag(g, p)
        ok &= bool(am.is_zigzag_set(g, zz2))
        ok &= am.k2_partition_to_zigzag(g, am.zigzag_to_k2_partition(g, zz2)) == zz2
    return ok, "zigzag == K2-amenable", f"zigzag={zz is not None} amenable={p is not None}", {}


def _inst_kmn(desc):
    n, mask, m, k = desc
    g = graph_from_mask(n, mask)
    p = am.find_kmn_amenable(g, m, k)
    product, dims = cartesian_product(g, complete_bipartite_graph(m, k))
    cert = find_eod_set(product)
    ok = (p is not None) == cert.found
    if p is not None:
        d = am.kmn_partition_to_eod(g, p)
        ok &= is_eod_set(product, d) and am.eod_to_kmn_partition(dims, m, k, d) == p
    if cert.found:
        back = am.eod_to_kmn_partition(dims, m, k, cert.d)
        ok &= bool(am.check_kmn_amenable(g, back))
    return ok, "amenable == EOD", f"amenable={p is not None} eod={cert.found}", {}


def _lemma_violations(dims, d, h: Graph) -> int:
    bad = 0
    for _, count, adj in layer_occupancy(dims, d, h):
        if count > 2 or (count == 2 and not adj):
            bad += 1
    return bad


def _inst_cyc(desc):
    n, mask, k = desc
    g = graph_from_mask(n, mask)
    h = cycle_graph(k)
    p = am.find_cycle_parallel_amenable(g, k)
    product, dims = cartesian_product(g, h)
    sets = enumerate_eod_sets(product)
    parallel = [d for d in sets if is_parallel_eod(dims, "first", d, product)]
    ok = (p is not None) == bool(parallel)
    if p is not None:
        d = am.cycle_partition_to_parallel_eod(g, p)
        ok &= is_eod_set(product, d) and is_parallel_eod(dims, "first", d, product)
        ok &= am.parallel_eod_to_cycle_partition(dims, k, d) == p
    for d in parallel:
        ok &= bool(am.check_cycle_parallel_amenable(g, am.parallel_eod_to_cycle_partition(dims, k, d)))
    extra = {"eod_sets": len(sets), "lemma_violations": sum(_lemma_violations(dims, d, h) for d in sets)}
    return ok, "amenable == parallel EOD", f"amenable={p is not None} parallel={bool(parallel)}", extra


def _inst_tree(desc):
    order, idx, r = desc
    t = enumerate_trees(order)[idx]
    res = recognize_tree_with_map(t, r)
    p = am.find_kr_amenable(t, r)
    product, _ = cartesian_product(t, complete_graph(r))
    eod = find_eod_set(product).found
    ok = (res is not None) == (p is not None) == eod
    replays = 0
    if res is not None:
        trace, where = res
        pt = replay(trace)
        ok &= canonical_code(pt.tree) == canonical_code(t)
        ok &= all(pt.tree.has_edge(where[u], where[v]) for u, v in t.edges)
        replays = 1
    got = f"recognized={res is not None} amenable={p is not None} eod={eod}"
    return ok, "all three agree", got, {"traces_replayed": replays}


def _inst_family(desc):
    r, max_order = desc
    fam = set(generate_family(r, max_order))
    brute = {
        canonical_code(t)
        for order in range(3, max_order + 1)
        for t in enumerate_trees(order)
        if am.find_kr_amenable(t, r) is not None
    }
    return fam == brute, f"{len(brute)} amenable trees", f"{len(fam)} generated", {"family_size": len(fam)}


def _inst_diam2(desc):
    order, idx, hname = desc
    t = enumerate_trees(order)[idx]
    h = _factor(hname)
    product, dims = cartesian_product(t, h)
    sets = enumerate_eod_sets(product)
    parallel = sum(1 for d in sets if _parallel_check(dims, "first", d, product))
    extra = {"eod_sets": len(sets), "lemma_violations": sum(_lemma_violations(dims, d, h) for d in sets)}
    return parallel == 0, "0 parallel sets", f"{parallel} parallel sets", extra


def _inst_layer(desc):
    kind, a, b, hname = desc
    h = _factor(hname)
    if kind == "graph":
        g = graph_from_mask(a, b)
    elif kind == "tree":
        g = enumerate_trees(a)[b]
    else:
        g = cycle_graph(a)
    product, dims = cartesian_product(g, h)
    sets = enumerate_eod_sets(product)
    bad = sum(_lemma_violations(dims, d, h) for d in sets)
    return bad == 0, "0 violations", f"{bad} violations", {"eod_sets": len(sets)}


def _torus_has_parallel(r: int, t: int) -> bool:
    product, dims = cartesian_product(cycle_graph(r), cycle_graph(t))
    return any(
        _parallel_check(dims, "first", d, product) or _parallel_check(dims, "second", d, product)
        for d in enumerate_eod_sets(product)
    )


def _inst_oracle(desc):
    kind, *args = desc
    if kind == "path":
        expected = oracles.path_eod(args[0]).value
        got = find_eod_set(path_graph(args[0])).found
    elif kind == "cycle":
        expected = oracles.cycle_eod(args[0]).value
        got = find_eod_set(cycle_graph(args[0])).found
    elif kind == "grid":
        expected = oracles.grid_eod(*args).value
        got = find_eod_set(cartesian_product(path_graph(args[0]), path_graph(args[1]))[0]).found
    elif kind == "torus-parallel":
        expected = oracles.torus_parallel_eod(*args).value
        got = _torus_has_parallel(*args)
    elif kind == "c4-torus":
        expected = oracles.c4_torus_eod(args[0]).value
        got = find_eod_set(cartesian_product(cycle_graph(4), cycle_graph(args[0]))[0]).found
    elif kind == "torus-none":
        expected = False
        got = find_eod_set(cartesian_product(cycle_graph(args[0]), cycle_graph(args[1]))[0]).found
    else:
        raise UsageError(f"unknown oracle instance {kind!r}")
    return expected == got, str(expected), str(got), {}


def _inst_torus_evidence(desc):
    r, t = desc
    found = find_eod_set(cartesian_product(cycle_graph(r), cycle_graph(t))[0]).found
    predicted = r % 4 == 0 and t % 4 == 0
    return True, str(predicted), str(found), {"consistent": int(found == predicted)}


def _inst_fixture(desc):
    (name,) = desc
    return check_fixture(load_fixture(name)), "passes", "checked", {}


# ---------------------------------------------------------------------------
# suite registry


def _graph_descs(min_n: int, max_n: int, *extra):
    out = []
    for n in range(min_n, max_n + 1):
        if n > 6:
            raise UsageError(f"n={n} exceeds the desk-scale limit 6")
        for mask in range(1 << (n * (n - 1) // 2)):
            for e in extra:
                out.append((n, mask, *e) if isinstance(e, tuple) else (n, mask, e))
            if not extra:
                out.append((n, mask))
    return out


def _tree_descs(min_order: int, max_order: int, *extra):
    out = []
    for order in range(min_order, max_order + 1):
        for idx in range(len(enumerate_trees(order))):
            for e in extra:
                out.append((order, idx, e))
    return out


def _describe(suite: str, desc) -> str:
    return f"{suite}{desc!r}"


def _plan(suite: str, params: dict):
    """Instance function and descriptor list for a suite."""
    p = dict(params)
    if suite == "KR_EQUIV":
        rs = p.get("r", (3,))
        rs = (rs,) if isinstance(rs, int) else tuple(rs)
        if any(r < 3 for r in rs):
            raise UsageError("KR_EQUIV needs r >= 3; use ZZ_EQUIV for r = 2")
        return _inst_kr, _graph_descs(p.get("min_n", 1), p.get("max_n", 4), *rs)
    if suite == "ZZ_EQUIV":
        return _inst_zz, _graph_descs(max(3, p.get("min_n", 3)), p.get("max_n", 5))
    if suite == "KMN_EQUIV":
        pairs = tuple(p.get("pairs", ((1, 1), (1, 2), (2, 2))))
        return _inst_kmn, _graph_descs(p.get("min_n", 1), p.get("max_n", 5), *pairs)
    if suite == "CYC_EQUIV":
        ks = tuple(p.get("k", (4, 5)))
        return _inst_cyc, _graph_descs(p.get("min_n", 1), p.get("max_n", 5), *ks)
    if suite == "TREE_EQUIV":
        r = p.get("r", 3)
        descs = [("tree", d) for d in _tree_descs(p.get("min_order", 3), p.get("max_order", 10), r)]
        descs.append(("family", (r, p.get("family_max", 12))))
        return _inst_tree_or_family, descs
    if suite == "DIAM2_TREES":
        hs = tuple(p.get("h", ("C4", "C5", "K1,2", "K2,3")))
        return _inst_diam2, _tree_descs(p.get("min_order", 3), p.get("max_order", 8), *hs)
    if suite == "LAYER_LEMMA":
        descs = []
        for t in range(4, p.get("torus_max", 12) + 1):
            descs.append(("cycle", t, 0, "C4"))
        descs.append(("cycle", 5, 0, "C5"))
        for order, idx, h in _tree_descs(3, p.get("tree_max", 8), "C4", "C5", "K1,2", "K2,3"):
            descs.append(("tree", order, idx, h))
        for n, mask, h in _graph_descs(1, p.get("max_n", 5), "C4", "C5"):
            descs.append(("graph", n, mask, h))
        return _inst_layer, descs
    if suite == "ORACLE_XCHECK":
        descs = [("path", n) for n in range(1, 17)]
        descs += [("cycle", n) for n in range(3, 17)]
        descs += [("grid", r, t) for r in (3, 4) for t in range(r, 11)]
        descs += [("torus-parallel", r, t) for r, t in ((4, 4), (4, 8), (4, 6), (5, 5), (3, 6))]
        descs += [("c4-torus", t) for t in range(4, 13)]
        descs += [("torus-none", r, t) for r, t in ((3, 3), (3, 4), (3, 5), (5, 5), (6, 6))]
        return _inst_oracle, descs
    if suite == "TORUS_EVIDENCE":
        top = p.get("max", 8)
        return _inst_torus_evidence, [(r, t) for r in range(3, top + 1) for t in range(r, top + 1)]
    if suite == "FIXTURES":
        return _inst_fixture, [(name,) for name in FIXTURES]
    raise UsageError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")


def _inst_tree_or_family(desc):
    kind, inner = desc
    return _inst_tree(inner) if kind == "tree" else _inst_family(inner)


SUITES = (
    "KR_EQUIV", "ZZ_EQUIV", "KMN_EQUIV", "CYC_EQUIV", "TREE_EQUIV",
    "DIAM2_TREES", "LAYER_LEMMA", "ORACLE_XCHECK", "TORUS_EVIDENCE", "FIXTURES",
)


def run_instance(suite: str, desc, **params):
    fn, _ = _plan(suite, params)
    return fn(desc)


def run_suite(suite: str, workers: int = 1, **params) -> SuiteReport:
    fn, descs = _plan(suite, params)
    start = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(fn, descs, chunksize=max(1, len(descs) // (8 * workers))))
    else:
        results = [fn(d) for d in descs]
    report = SuiteReport(suite, instance_count=len(descs))
    for desc, (ok, expected, got, extra) in zip(descs, results):
        if ok:
            report.pass_count += 1
        else:
            report.failures.append((_describe(suite, desc), expected, got))
        for k, v in extra.items():
            report.notes[k] = report.notes.get(k, 0) + v
    if suite == "TORUS_EVIDENCE":
        report.notes["verdict"] = (
            "consistent with the 4|r, 4|t conjecture"
            if report.notes.get("consistent", 0) == len(descs)
            else "inconsistent with the 4|r, 4|t conjecture"
        )
    report.wall_time = time.perf_counter() - start
    return report
