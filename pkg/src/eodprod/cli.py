"""Command-line front end.

Exit codes: 0 yes / found / all passed, 1 no / not found / failures,
2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import amenability as am
from . import harness, oracles
from .eod_search import (
    PreconditionError,
    SearchOptions,
    enumerate_eod_sets,
    find_eod_set,
    is_eod_set,
    is_parallel_eod,
    is_total_dominating_set,
)
from .graph_core import (
    GraphError,
    cartesian_product,
    format_graph,
    format_graph6,
    named_graph,
    parse_graph,
)
from .tree_family import (
    TreeError,
    canonical_code,
    enumerate_trees,
    generate_family,
    parse_trace,
    recognize_tree,
    replay,
)

YES, NO, USAGE = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def load_graph(source: str, fmt: str = "auto"):
    """A file path, ``-`` for stdin, or a short name such as ``C8`` or ``K2,3``."""
    if source == "-" or os.path.exists(source):
        return parse_graph(_read(source), fmt)
    try:
        return named_graph(source)
    except GraphError:
        return parse_graph(source, "graph6")


def parse_set(text: str) -> list[int]:
    if os.path.exists(text):
        text = _read(text)
    return [int(x) for x in text.replace(",", " ").split()]


def parse_edges(text: str) -> list[tuple[int, int]]:
    out = []
    for tok in text.replace(",", " ").split():
        u, v = tok.split("-")
        out.append((int(u), int(v)))
    return out


def _graph_args(p: argparse.ArgumentParser, name: str = "graph") -> None:
    p.add_argument(name, help="file, '-' for stdin, or a name like P5, C8, K3, K2,3")


def _product_target(args):
    g = load_graph(args.graph, args.format)
    if getattr(args, "times", None):
        h = load_graph(args.times, args.format)
        p, dims = cartesian_product(g, h)
        return p, dims
    return g, None


def cmd_product(args) -> int:
    g = load_graph(args.g, args.format)
    h = load_graph(args.h, args.format)
    p, dims = cartesian_product(g, h)
    sys.stdout.write(f"# {g.n} x {h.n}: vertex (g,h) -> g*{dims.h_size}+h\n")
    sys.stdout.write(format_graph(p, args.out))
    return YES


def cmd_check_eod(args) -> int:
    g, _ = _product_target(args)
    d = parse_set(args.set)
    ok = is_eod_set(g, d)
    print(f"eod={str(ok).lower()} total_dominating={str(is_total_dominating_set(g, d)).lower()}")
    return YES if ok else NO


def cmd_find_eod(args) -> int:
    g, dims = _product_target(args)
    if args.parallel and dims is None:
        raise GraphError("--parallel needs --times to define the product")
    opts = SearchOptions(
        mode="first",
        dims=dims,
        factor=args.parallel or "first",
        require="parallel_only" if args.parallel else "none",
    )
    cert = find_eod_set(g, opts)
    print(cert.render())
    if args.kv:
        print(f"found={int(cert.found)}\nnodes={cert.nodes_explored}\nn={cert.n}")
        if cert.is_parallel_wrt_first is not None:
            print(f"parallel_first={int(cert.is_parallel_wrt_first)}")
    return YES if cert.found else NO


def cmd_enum_eod(args) -> int:
    g, dims = _product_target(args)
    sets = enumerate_eod_sets(g)
    if args.parallel:
        if dims is None:
            raise GraphError("--parallel needs --times to define the product")
        sets = [d for d in sets if is_parallel_eod(dims, args.parallel, d, g)]
    for d in sets:
        print(" ".join(map(str, d)))
    print(f"# {len(sets)} sets")
    return YES if sets else NO


def _print_check(res: am.CheckResult) -> int:
    if res:
        print("amenable=true")
        return YES
    for v in res.violations:
        print(v.render())
    return NO


def cmd_check_amenable(args) -> int:
    g = load_graph(args.graph, args.format)
    flavor = am.parse_flavor(args.flavor)
    p = am.parse_partition(_read(args.partition), flavor, g.n)
    return _print_check(am.check_partition(g, p))


def cmd_find_amenable(args) -> int:
    g = load_graph(args.graph, args.format)
    p = am.find_partition(g, am.parse_flavor(args.flavor))
    if p is None:
        print("none")
        return NO
    sys.stdout.write(p.render())
    return YES


def cmd_zigzag(args) -> int:
    g = load_graph(args.graph, args.format)
    if args.action == "check":
        if not args.edges:
            raise am.AmenabilityError("zigzag check needs --edges")
        res = am.is_zigzag_set(g, am.ZigzagSet.of(parse_edges(args.edges)))
        if res:
            print("zigzag=true")
            return YES
        for v in res.violations:
            print(v.render())
        return NO
    zz = am.find_zigzag_set(g)
    if zz is None:
        print("none")
        return NO
    print(zz.render())
    return YES


def cmd_to_eod(args) -> int:
    g = load_graph(args.graph, args.format)
    flavor = am.parse_flavor(args.flavor)
    p = am.parse_partition(_read(args.partition), flavor, g.n)
    if flavor.kind == "Kr":
        d = am.kr_partition_to_eod(g, p)
    elif flavor.kind == "Kmn":
        d = am.kmn_partition_to_eod(g, p)
    else:
        d = am.cycle_partition_to_parallel_eod(g, p)
    print(f"EOD n={g.n * flavor.factor_order} D={list(d)}")
    return YES


def cmd_from_eod(args) -> int:
    g = load_graph(args.graph, args.format)
    flavor = am.parse_flavor(args.flavor)
    product, dims = cartesian_product(g, flavor.factor())
    d = parse_set(args.set)
    if not is_eod_set(product, d):
        raise PreconditionError("the given set is not an EOD-set of the product")
    if flavor.kind == "Kr":
        p = am.eod_to_kr_partition(dims, flavor.r, d)
    elif flavor.kind == "Kmn":
        p = am.eod_to_kmn_partition(dims, flavor.m, flavor.n, d)
    else:
        p = am.parallel_eod_to_cycle_partition(dims, flavor.num_classes, d)
    sys.stdout.write(p.render())
    return YES


def cmd_trees(args) -> int:
    if args.action == "gen":
        codes = generate_family(args.a, args.b)
        for c in codes:
            print(c)
        return YES if codes else NO
    if args.action == "enum":
        for t in enumerate_trees(args.a):
            print(format_graph6(t))
        return YES
    if args.action == "replay":
        pt = replay(parse_trace(args.trace))
        sys.stdout.write(format_graph(pt.tree))
        sys.stdout.write(pt.partition.render())
        print(canonical_code(pt.tree))
        return YES
    g = load_graph(args.graph, args.format)
    trace = recognize_tree(g, args.a)
    if trace is None:
        print("none")
        return NO
    print(trace.render())
    return YES


def cmd_oracle(args) -> int:
    if args.kind not in oracles.ORACLES:
        raise oracles.DomainError(f"unknown oracle {args.kind!r}; known: {', '.join(oracles.ORACLES)}")
    fn, arity = oracles.ORACLES[args.kind]
    if len(args.values) != arity:
        raise oracles.DomainError(f"oracle {args.kind} takes {arity} argument(s)")
    ans = fn(*args.values)
    print(ans.render())
    return YES if ans.value else NO


def _parse_params(items: list[str]) -> dict:
    out = {}
    for item in items:
        key, _, val = item.partition("=")
        if not val:
            raise harness.UsageError(f"suite parameter {item!r} must be key=value")
        if key in ("pairs",):
            out[key] = tuple(tuple(int(x) for x in pr.split(",")) for pr in val.split(";"))
        elif key in ("h",):
            out[key] = tuple(val.split(";"))
        elif key in ("r", "k") and "," in val:
            out[key] = tuple(int(x) for x in val.split(","))
        else:
            out[key] = int(val)
    return out


def cmd_suite(args) -> int:
    report = harness.run_suite(args.id, workers=args.workers, **_parse_params(args.params))
    sys.stdout.write(report.render_kv() if args.kv else report.render())
    return YES if report.ok else NO


def cmd_fixture(args) -> int:
    fx = harness.load_fixture(args.name)
    print(f"# {fx.name}: {fx.citation}; vertices {' '.join(fx.vertex_names)}")
    sys.stdout.write(format_graph(fx.graph))
    if fx.partition is not None:
        print(f"# partition ({fx.partition.flavor.render()})")
        sys.stdout.write(fx.partition.render())
    else:
        print(f"# C_{fx.cycle_k} label sets")
        for v, s in enumerate(fx.cycle_labels):
            print(f"{v}: {sorted(s)}")
    ok = harness.check_fixture(fx)
    product, d = fx.implied_eod()
    print(f"# implied D over {product.n} product vertices: {list(d)}; eod={str(ok).lower()}")
    return YES if ok else NO


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eodprod", description=__doc__.splitlines()[0])
    ap.add_argument("--format", default="auto", choices=["auto", "edge-list", "graph6"],
                    help="input graph format")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("product", help="print G x H as an edge list")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--out", default="edge-list", choices=["edge-list", "graph6"])
    p.set_defaults(fn=cmd_product)

    for name, fn, helptext in (
        ("check-eod", cmd_check_eod, "test a vertex set"),
        ("find-eod", cmd_find_eod, "search for an EOD-set"),
        ("enum-eod", cmd_enum_eod, "list all EOD-sets"),
    ):
        p = sub.add_parser(name, help=helptext)
        _graph_args(p)
        p.add_argument("--times", help="second factor; the target is then graph x times")
        if name == "check-eod":
            p.add_argument("--set", required=True, help="comma/space separated vertices, or a file")
        else:
            p.add_argument("--parallel", choices=["first", "second"],
                           help="only sets parallel with respect to this factor")
        p.add_argument("--kv", action="store_true", help="also print key=value lines")
        p.set_defaults(fn=fn)

    p = sub.add_parser("check-amenable", help="check a partition file")
    _graph_args(p)
    p.add_argument("partition")
    p.add_argument("--flavor", required=True, help="k<r> | kmn:<m>,<n> | c4 | c5")
    p.set_defaults(fn=cmd_check_amenable)

    p = sub.add_parser("find-amenable", help="search for an amenable partition")
    _graph_args(p)
    p.add_argument("--flavor", required=True)
    p.set_defaults(fn=cmd_find_amenable)

    p = sub.add_parser("zigzag", help="check or find zig-zag sets")
    p.add_argument("action", choices=["check", "find"])
    _graph_args(p)
    p.add_argument("--edges", help="edges like 0-1,3-4")
    p.set_defaults(fn=cmd_zigzag)

    p = sub.add_parser("to-eod", help="partition file -> EOD-set of the product")
    _graph_args(p)
    p.add_argument("partition")
    p.add_argument("--flavor", required=True)
    p.set_defaults(fn=cmd_to_eod)

    p = sub.add_parser("from-eod", help="EOD-set of the product -> partition")
    _graph_args(p)
    p.add_argument("--flavor", required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(fn=cmd_from_eod)

    p = sub.add_parser("trees", help="tree family tools")
    tsub = p.add_subparsers(dest="action", required=True)
    q = tsub.add_parser("gen", help="family codes: trees gen R MAX_ORDER")
    q.add_argument("a", type=int, metavar="R")
    q.add_argument("b", type=int, metavar="MAX_ORDER")
    q = tsub.add_parser("recognize", help="construction trace: trees recognize GRAPH R")
    _graph_args(q)
    q.add_argument("a", type=int, metavar="R")
    q = tsub.add_parser("enum", help="non-isomorphic trees as graph6: trees enum ORDER")
    q.add_argument("a", type=int, metavar="ORDER")
    q = tsub.add_parser("replay", help="rebuild a tree from a trace")
    q.add_argument("trace")
    p.set_defaults(fn=cmd_trees)

    p = sub.add_parser("oracle", help="closed-form answers: path, cycle, grid, torus-parallel, c4-torus")
    p.add_argument("kind")
    p.add_argument("values", type=int, nargs="+")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("suite", help="run a verification suite")
    p.add_argument("id", choices=harness.SUITES)
    p.add_argument("params", nargs="*", help="key=value, e.g. max_n=5 r=3")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--kv", action="store_true")
    p.set_defaults(fn=cmd_suite)

    p = sub.add_parser("fixture", help="show and verify a figure fixture")
    p.add_argument("name")
    p.set_defaults(fn=cmd_fixture)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else YES
    try:
        return args.fn(args)
    except (GraphError, am.AmenabilityError, PreconditionError, TreeError,
            oracles.DomainError, harness.UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
