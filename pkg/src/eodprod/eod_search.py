"""Efficient open dominating sets: verification, exact search, enumeration.

A set ``D`` is an EOD-set when every vertex has exactly one neighbour in
``D``, i.e. the indicator vector of ``D`` solves ``A x = 1``. The solver
below treats every vertex as a row of that system and keeps two bitmasks,
``inc`` (chosen) and ``exc`` (ruled out); the rest is unit propagation:

* a row already covered once forces all of its undecided neighbours out;
* an uncovered row with a single undecided neighbour forces it in;
* a row covered twice, or uncovered with nothing left, is a conflict.

Branching picks the uncovered row with the fewest undecided neighbours
(lowest index on ties) and splits on that row's lowest undecided
neighbour, trying "exclude" before "include".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .graph_core import Graph, GraphError, ProductDims, iter_bits, project_edge, to_mask


class PreconditionError(ValueError):
    """An operation was called on an input outside its contract."""


def is_total_dominating_set(g: Graph, d: Iterable[int]) -> bool:
    dm = to_mask(d)
    return all(m & dm for m in g.masks)


def is_eod_set(g: Graph, d: Iterable[int]) -> bool:
    dm = to_mask(d)
    return all((m & dm).bit_count() == 1 for m in g.masks)


@dataclass(frozen=True)
class SearchOptions:
    mode: str = "first"  # "first" | "enumerate_all"
    dims: ProductDims | None = None
    factor: str = "first"
    require: str = "none"  # "none" | "parallel_only"

    def __post_init__(self):
        if self.mode not in ("first", "enumerate_all"):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.require not in ("none", "parallel_only"):
            raise ValueError(f"unknown requirement {self.require!r}")
        if self.require == "parallel_only" and self.dims is None:
            raise ValueError("parallel filtering needs product dimensions")


@dataclass
class EodCertificate:
    found: bool
    d: tuple[int, ...] | None
    nodes_explored: int
    n: int
    is_parallel_wrt_first: bool | None = None
    all_sets: list[tuple[int, ...]] | None = field(default=None, repr=False)

    def render(self) -> str:
        if self.found:
            return f"EOD n={self.n} D={list(self.d)}"
        return f"NO-EOD nodes={self.nodes_explored}"


class _Solver:
    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self.masks = g.masks
        self.full = (1 << g.n) - 1
        self.nodes = 0

    def propagate(self, inc: int, exc: int):
        """Return the propagated ``(inc, exc)`` or ``None`` on conflict."""
        masks = self.masks
        n = self.n
        changed = True
        while changed:
            changed = False
            for v in range(n):
                mv = masks[v]
                cov = mv & inc
                if cov:
                    if cov & (cov - 1):
                        return None
                    und = mv & ~(inc | exc)
                    if und:
                        exc |= und
                        changed = True
                else:
                    und = mv & ~(inc | exc)
                    if not und:
                        return None
                    if not und & (und - 1):
                        inc |= und
                        changed = True
        return inc, exc

    def _choose(self, inc: int, exc: int) -> int | None:
        best_row, best_cnt = -1, 1 << 30
        free = ~(inc | exc)
        for v, mv in enumerate(self.masks):
            if mv & inc:
                continue
            c = (mv & free).bit_count()
            if c < best_cnt:
                best_row, best_cnt = v, c
                if c == 2:
                    break
        if best_row < 0:
            return None
        und = self.masks[best_row] & free
        return (und & -und).bit_length() - 1

    def solutions(self, inc: int = 0, exc: int = 0) -> Iterator[int]:
        self.nodes += 1
        state = self.propagate(inc, exc)
        if state is None:
            return
        inc, exc = state
        var = self._choose(inc, exc)
        if var is None:
            # every row covered exactly once
            yield inc
            return
        bit = 1 << var
        yield from self.solutions(inc, exc | bit)
        yield from self.solutions(inc | bit, exc)


def _isolated_free(g: Graph) -> bool:
    return all(g.masks)


def _parallel_ok(opts: SearchOptions, g: Graph, d: tuple[int, ...]) -> bool:
    return _parallel_check(opts.dims, opts.factor, d, g)


def find_eod_set(g: Graph, opts: SearchOptions | None = None) -> EodCertificate:
    """Search for an EOD-set; with ``enumerate_all`` every set is collected."""
    opts = opts or SearchOptions()
    if opts.dims is not None and opts.dims.order != g.n:
        raise GraphError(f"product dimensions {opts.dims} do not match a graph on {g.n} vertices")
    solver = _Solver(g)
    found: list[tuple[int, ...]] = []
    if _isolated_free(g):
        for sol in solver.solutions():
            d = tuple(iter_bits(sol))
            if opts.require == "parallel_only" and not _parallel_ok(opts, g, d):
                continue
            found.append(d)
            if opts.mode == "first":
                break
    else:
        solver.nodes = 1
    found.sort()
    first = found[0] if found else None
    cert = EodCertificate(
        found=bool(found),
        d=first,
        nodes_explored=solver.nodes,
        n=g.n,
        all_sets=found if opts.mode == "enumerate_all" else None,
    )
    if first is not None and opts.dims is not None:
        cert.is_parallel_wrt_first = _parallel_check(opts.dims, "first", first, g)
    return cert


def iter_eod_sets(g: Graph) -> Iterator[tuple[int, ...]]:
    """Lazily yield EOD-sets in discovery order."""
    if not _isolated_free(g):
        return
    for sol in _Solver(g).solutions():
        yield tuple(iter_bits(sol))


def enumerate_eod_sets(g: Graph) -> list[tuple[int, ...]]:
    return sorted(iter_eod_sets(g))


def _parallel_check(dims: ProductDims, factor: str, d: Iterable[int], p: Graph) -> bool:
    dl = sorted(d)
    dset = set(dl)
    for u in dl:
        for w in p.neighbors(u):
            if w > u and w in dset and not isinstance(project_edge(dims, (u, w), factor), tuple):
                return False
    return True


def is_parallel_eod(dims: ProductDims, factor: str, d: Iterable[int], p: Graph) -> bool:
    """Whether every edge of the subgraph induced by ``d`` projects to an edge of the factor."""
    d = list(d)
    if dims.order != p.n:
        raise GraphError(f"product dimensions {dims} do not match a graph on {p.n} vertices")
    if not is_eod_set(p, d):
        raise PreconditionError("parallelism is defined for EOD-sets only")
    return _parallel_check(dims, factor, d, p)


def layer_occupancy(dims: ProductDims, d: Iterable[int], h: Graph | None = None):
    """Per first-factor vertex ``g``: ``(g, |D ∩ gH|, adjacent)``.

    ``adjacent`` is meaningful only when the count is 2 and tells whether the
    two members are adjacent inside the layer; it needs ``h`` for that and is
    ``None`` otherwise.
    """
    per: list[list[int]] = [[] for _ in range(dims.g_size)]
    for v in d:
        g, y = dims.pair(v)
        per[g].append(y)
    out = []
    for g, ys in enumerate(per):
        adj = None
        if len(ys) == 2 and h is not None:
            adj = h.has_edge(ys[0], ys[1])
        out.append((g, len(ys), adj))
    return out


def naive_eod_sets(g: Graph) -> list[tuple[int, ...]]:
    """All EOD-sets by testing every subset; only for small graphs."""
    if g.n > 20:
        raise ValueError("naive enumeration is limited to 20 vertices")
    masks = g.masks
    out = []
    for s in range(1 << g.n):
        if all((m & s).bit_count() == 1 for m in masks):
            out.append(tuple(iter_bits(s)))
    return sorted(out)
