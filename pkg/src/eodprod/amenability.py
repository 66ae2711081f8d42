"""Weak-partition certificates for EOD products and their conversions.

A weak partition assigns each vertex of ``G`` one label: ``0`` (the set
``V_0``), a class ``i >= 1``, or, for the complete bipartite flavour, a
pair ``(i, j)`` with ``i`` on side A and ``j`` on side B. Class labels are
1-based; class ``i`` corresponds to vertex ``i - 1`` of the second factor.

Checkers test the defining conditions literally, set by set. Searchers do
not reuse them: they compile every condition into per-vertex neighbour
counting constraints and backtrack over labelings, so the checker is an
independent judge of the searcher's output.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence, Union

from .eod_search import PreconditionError
from .graph_core import (
    Graph,
    ProductDims,
    bfs_distances,
    edge_distance,
)

Label = Union[int, tuple[int, int]]


class AmenabilityError(ValueError):
    """Bad argument: wrong flavour, malformed labels or edge sets."""


# ---------------------------------------------------------------------------
# flavours and partitions


@dataclass(frozen=True)
class Flavor:
    kind: str  # "Kr" | "Kmn" | "C4" | "C5"
    r: int = 0
    m: int = 0
    n: int = 0

    def __post_init__(self):
        if self.kind == "Kr" and self.r < 2:
            raise AmenabilityError(f"K_r flavour needs r >= 2, got {self.r}")
        if self.kind == "Kmn" and not 1 <= self.m <= self.n:
            raise AmenabilityError(f"K_m,n flavour needs 1 <= m <= n, got {self.m},{self.n}")
        if self.kind not in ("Kr", "Kmn", "C4", "C5"):
            raise AmenabilityError(f"unknown flavour {self.kind!r}")

    @classmethod
    def kr(cls, r: int) -> "Flavor":
        return cls("Kr", r=r)

    @classmethod
    def kmn(cls, m: int, n: int) -> "Flavor":
        return cls("Kmn", m=m, n=n)

    @classmethod
    def cycle(cls, k: int) -> "Flavor":
        if k not in (4, 5):
            raise AmenabilityError(f"cycle flavour is defined for k in (4, 5), got {k}")
        return cls(f"C{k}")

    @property
    def num_classes(self) -> int:
        if self.kind == "Kr":
            return self.r
        if self.kind == "Kmn":
            return self.m + self.n
        return int(self.kind[1])

    @property
    def factor_order(self) -> int:
        return self.num_classes

    def labels(self) -> list[Label]:
        out: list[Label] = [0, *range(1, self.num_classes + 1)]
        if self.kind == "Kmn":
            out += [(i, self.m + j) for i in range(1, self.m + 1) for j in range(1, self.n + 1)]
        return out

    def is_valid_label(self, lab) -> bool:
        if isinstance(lab, tuple):
            return (
                self.kind == "Kmn"
                and len(lab) == 2
                and 1 <= lab[0] <= self.m < lab[1] <= self.m + self.n
            )
        return isinstance(lab, int) and 0 <= lab <= self.num_classes

    def factor(self) -> Graph:
        from .graph_core import complete_bipartite_graph, complete_graph, cycle_graph

        if self.kind == "Kr":
            return complete_graph(self.r)
        if self.kind == "Kmn":
            return complete_bipartite_graph(self.m, self.n)
        return cycle_graph(self.num_classes)

    def render(self) -> str:
        if self.kind == "Kr":
            return f"k{self.r}"
        if self.kind == "Kmn":
            return f"kmn:{self.m},{self.n}"
        return self.kind.lower()


def parse_flavor(text: str) -> Flavor:
    """Parse ``k3``, ``kmn:2,3``, ``c4`` or ``c5``."""
    t = text.strip().lower()
    try:
        if t.startswith("kmn:"):
            m, n = t[4:].split(",")
            return Flavor.kmn(int(m), int(n))
        if t in ("c4", "c5"):
            return Flavor.cycle(int(t[1]))
        if t.startswith("k"):
            return Flavor.kr(int(t[1:]))
    except ValueError as exc:
        raise AmenabilityError(f"bad flavour {text!r}: {exc}") from None
    raise AmenabilityError(f"bad flavour {text!r}")


def render_label(lab: Label) -> str:
    if isinstance(lab, tuple):
        return f"[{lab[0]},{lab[1]}]"
    return str(lab)


@dataclass(frozen=True)
class WeakPartition:
    flavor: Flavor
    labels: tuple[Label, ...]

    def __post_init__(self):
        for v, lab in enumerate(self.labels):
            if not self.flavor.is_valid_label(lab):
                raise AmenabilityError(
                    f"label {render_label(lab)} of vertex {v} is not valid for {self.flavor.render()}"
                )

    @classmethod
    def from_classes(cls, flavor: Flavor, n: int, classes: dict) -> "WeakPartition":
        """Build from ``{label: vertices}``; unlisted vertices go to ``V_0``."""
        labels: list[Label] = [0] * n
        seen: set[int] = set()
        for lab, vs in classes.items():
            for v in vs:
                if v in seen:
                    raise AmenabilityError(f"vertex {v} listed twice")
                seen.add(v)
                labels[v] = lab
        return cls(flavor, tuple(labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    def part(self, lab: Label) -> list[int]:
        return [v for v, l in enumerate(self.labels) if l == lab]

    def classes(self) -> dict[Label, list[int]]:
        out: dict[Label, list[int]] = {}
        for v, lab in enumerate(self.labels):
            out.setdefault(lab, []).append(v)
        return out

    def render(self) -> str:
        cls = self.classes()
        lines = []
        for lab in self.flavor.labels():
            if lab in cls:
                lines.append(f"{render_label(lab)}: " + " ".join(map(str, cls[lab])))
        return "\n".join(lines) + "\n"


def parse_partition(text: str, flavor: Flavor, n: int) -> WeakPartition:
    classes: dict[Label, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise AmenabilityError(f"line {lineno}: expected '<label>: <vertices>'")
        head, body = line.split(":", 1)
        head = head.strip()
        try:
            if head.startswith("["):
                a, b = head.strip("[]").split(",")
                lab: Label = (int(a), int(b))
            else:
                lab = int(head)
            vs = [int(x) for x in body.split()]
        except ValueError:
            raise AmenabilityError(f"line {lineno}: cannot parse {line!r}") from None
        if not flavor.is_valid_label(lab):
            raise AmenabilityError(f"line {lineno}: label {head} invalid for {flavor.render()}")
        for v in vs:
            if not 0 <= v < n:
                raise AmenabilityError(f"line {lineno}: vertex {v} out of range")
        classes.setdefault(lab, []).extend(vs)
    listed = sorted(v for vs in classes.values() for v in vs)
    if listed != list(range(n)):
        raise AmenabilityError("partition must list every vertex exactly once")
    return WeakPartition.from_classes(flavor, n, classes)


# ---------------------------------------------------------------------------
# check results


@dataclass(frozen=True)
class ViolationReport:
    condition: str
    witness: tuple
    detail: str = ""

    def render(self) -> str:
        w = " ".join(str(x) for x in self.witness)
        text = f"VIOLATION {self.condition} at {w}"
        return f"{text} ({self.detail})" if self.detail else text


@dataclass
class CheckResult:
    ok: bool
    violations: list[ViolationReport] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def conditions(self) -> list[str]:
        return [v.condition for v in self.violations]


class _Collector:
    """Keeps the first violation of each condition."""

    def __init__(self):
        self.found: dict[str, ViolationReport] = {}

    def add(self, cond: str, witness: tuple, detail: str = "") -> None:
        self.found.setdefault(cond, ViolationReport(cond, witness, detail))

    def result(self) -> CheckResult:
        return CheckResult(not self.found, list(self.found.values()))


def _count_in(g: Graph, x: int, s: set[int]) -> int:
    return sum(1 for y in g.neighbors(x) if y in s)


def _first_irregular(g: Graph, s: Sequence[int]) -> int | None:
    ss = set(s)
    for v in sorted(ss):
        if _count_in(g, v, ss) != 1:
            return v
    return None


def _require(p: WeakPartition, g: Graph, kind: str) -> None:
    if p.n != g.n:
        raise AmenabilityError(f"partition covers {p.n} vertices, graph has {g.n}")
    if p.flavor.kind != kind:
        raise AmenabilityError(f"expected a {kind} partition, got {p.flavor.render()}")


def check_kr_amenable(g: Graph, p: WeakPartition) -> CheckResult:
    _require(p, g, "Kr")
    r = p.flavor.r
    parts = {i: set(p.part(i)) for i in range(1, r + 1)}
    out = _Collector()
    for x in p.part(0):
        for i in range(1, r + 1):
            c = _count_in(g, x, parts[i])
            if c != 1:
                out.add("A", (x,), f"{c} neighbours in class {i}")
                break
    for i in range(1, r + 1):
        bad = _first_irregular(g, parts[i])
        if bad is not None:
            out.add("B", (bad,), f"class {i} is not an induced matching")
            break
    union = set().union(*parts.values())
    bad = _first_irregular(g, union)
    if bad is not None:
        out.add("C", (bad,), "union of classes is not an induced matching")
    return out.result()


def check_kmn_amenable(g: Graph, p: WeakPartition) -> CheckResult:
    _require(p, g, "Kmn")
    m, n = p.flavor.m, p.flavor.n
    side_a = range(1, m + 1)
    side_b = range(m + 1, m + n + 1)
    v = {i: set(p.part(i)) for i in range(1, m + n + 1)}
    pair = {(i, j): set(p.part((i, j))) for i in side_a for j in side_b}
    v0 = set(p.part(0))
    out = _Collector()
    for i in range(1, m + n + 1):
        bad = _first_irregular(g, v[i])
        if bad is not None:
            out.add("I", (bad,), f"class {i}")
            break
    for i in side_a:
        for j in side_b:
            bad = _first_irregular(g, v[i] | v[j])
            if bad is not None:
                out.add("II", (bad,), f"classes {i},{j}")
    for side in (side_a, side_b):
        for i, j in combinations(side, 2):
            for x in sorted(v[i]):
                if _count_in(g, x, v[j]) != 1:
                    out.add("III", (x,), f"class {i} vertex vs class {j}")
            for y in sorted(v[j]):
                if _count_in(g, y, v[i]) != 1:
                    out.add("III", (y,), f"class {j} vertex vs class {i}")
    for key, s in pair.items():
        for x in sorted(s):
            if any(y not in v0 for y in g.neighbors(x)):
                out.add("IV", (x,), f"pair class {render_label(key)}")
    for x in sorted(v0):
        for i in side_a:
            s = v[i].union(*(pair[(i, j)] for j in side_b))
            if _count_in(g, x, s) != 1:
                out.add("V", (x,), f"side-A index {i}")
        for j in side_b:
            s = v[j].union(*(pair[(i, j)] for i in side_a))
            if _count_in(g, x, s) != 1:
                out.add("V", (x,), f"side-B index {j}")
    return out.result()


def check_cycle_parallel_amenable(g: Graph, p: WeakPartition) -> CheckResult:
    if p.flavor.kind not in ("C4", "C5"):
        raise AmenabilityError(f"expected a C4 or C5 partition, got {p.flavor.render()}")
    if p.n != g.n:
        raise AmenabilityError(f"partition covers {p.n} vertices, graph has {g.n}")
    k = p.flavor.num_classes

    def cyc(i: int) -> int:
        return (i - 1) % k + 1

    v = {i: set(p.part(i)) for i in range(1, k + 1)}
    out = _Collector()
    for x in p.part(0):
        for i in range(1, k + 1):
            if _count_in(g, x, v[i]) != 1:
                out.add("A", (x,), f"class {i}")
                break
    for i in range(1, k + 1):
        bad = _first_irregular(g, v[i])
        if bad is not None:
            out.add("B", (bad,), f"class {i}")
            break
    for i in range(1, k + 1):
        bad = _first_irregular(g, v[i] | v[cyc(i + 1)])
        if bad is not None:
            out.add("C'", (bad,), f"classes {i},{cyc(i + 1)}")
            break
    cond = "D" if k == 5 else "D'"
    for i in range(1, k + 1):
        targets = {cyc(i + 2), cyc(i - 2)}
        for x in sorted(v[i]):
            for t in sorted(targets):
                if _count_in(g, x, v[t]) != 1:
                    out.add(cond, (x,), f"class {i} vertex vs class {t}")
    return out.result()


def check_partition(g: Graph, p: WeakPartition) -> CheckResult:
    if p.flavor.kind == "Kr":
        return check_kr_amenable(g, p)
    if p.flavor.kind == "Kmn":
        return check_kmn_amenable(g, p)
    return check_cycle_parallel_amenable(g, p)


# ---------------------------------------------------------------------------
# search


def _local_constraints(flavor: Flavor) -> dict[Label, list[tuple[frozenset, int]]]:
    """Per label: ``(label set S, c)`` meaning "exactly c neighbours labelled in S"."""
    k = flavor.num_classes
    classes = list(range(1, k + 1))
    cons: dict[Label, list[tuple[frozenset, int]]] = {}
    if flavor.kind == "Kr":
        cons[0] = [(frozenset([i]), 1) for i in classes]
        for i in classes:
            cons[i] = [(frozenset([i]), 1), (frozenset(classes), 1)]
    elif flavor.kind == "Kmn":
        m, n = flavor.m, flavor.n
        side_a = list(range(1, m + 1))
        side_b = list(range(m + 1, m + n + 1))
        pairs = [(i, j) for i in side_a for j in side_b]
        cons[0] = [(frozenset([i, *[(i, j) for j in side_b]]), 1) for i in side_a]
        cons[0] += [(frozenset([j, *[(i, j) for i in side_a]]), 1) for j in side_b]
        for i in classes:
            own, other = (side_a, side_b) if i <= m else (side_b, side_a)
            c = [(frozenset([i]), 1)]
            c += [(frozenset([i, j]), 1) for j in other]
            c += [(frozenset([j]), 1) for j in own if j != i]
            cons[i] = c
        nonzero = frozenset([*classes, *pairs])
        for pr in pairs:
            cons[pr] = [(nonzero, 0)]
    else:

        def cyc(i: int) -> int:
            return (i - 1) % k + 1

        cons[0] = [(frozenset([i]), 1) for i in classes]
        for i in classes:
            c = [(frozenset([i]), 1), (frozenset([i, cyc(i + 1)]), 1), (frozenset([cyc(i - 1), i]), 1)]
            c += [(frozenset([t]), 1) for t in sorted({cyc(i + 2), cyc(i - 2)})]
            cons[i] = c
    return cons


def _bfs_order(g: Graph) -> list[int]:
    order: list[int] = []
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


class _LabelSearch:
    def __init__(self, g: Graph, flavor: Flavor):
        self.g = g
        self.flavor = flavor
        self.labels = flavor.labels()
        idx = {lab: t for t, lab in enumerate(self.labels)}
        # constraints as (bitmask over label indices, exact count)
        self.cons = [
            [(sum(1 << idx[l] for l in s), c) for s, c in cl]
            for lab, cl in sorted(_local_constraints(flavor).items(), key=lambda kv: idx[kv[0]])
        ]
        self.order = _bfs_order(g)
        self.lab = [-1] * g.n
        self.nodes = 0

    def _vertex_ok(self, w: int) -> bool:
        lab = self.lab
        nbrs = self.g.neighbors(w)
        for smask, c in self.cons[lab[w]]:
            have = free = 0
            for y in nbrs:
                ly = lab[y]
                if ly < 0:
                    free += 1
                elif smask >> ly & 1:
                    have += 1
            if have > c or have + free < c:
                return False
        return True

    def _consistent(self, v: int) -> bool:
        if not self._vertex_ok(v):
            return False
        return all(self.lab[w] < 0 or self._vertex_ok(w) for w in self.g.neighbors(v))

    def _candidates(self, sym) -> list[int]:
        """Label indices allowed at the next vertex, after symmetry breaking."""
        f = self.flavor
        out = []
        for t, lab in enumerate(self.labels):
            if lab == 0:
                out.append(t)
                continue
            if f.kind == "Kr":
                if lab <= sym["used"] + 1:
                    out.append(t)
            elif f.kind == "Kmn":
                a = lab[0] if isinstance(lab, tuple) else (lab if lab <= f.m else None)
                b = lab[1] if isinstance(lab, tuple) else (lab if lab > f.m else None)
                if a is not None and a > sym["a"] + 1:
                    continue
                if b is not None and b > sym["b"] + 1:
                    continue
                if f.m == f.n and sym["a"] == 0 and sym["b"] == f.m and a is None:
                    continue
                out.append(t)
            else:
                if sym["used"] or lab == 1:
                    out.append(t)
        return out

    def _advance(self, sym, lab: Label):
        f = self.flavor
        if lab == 0:
            return sym
        if f.kind == "Kr":
            return {"used": max(sym["used"], lab)}
        if f.kind == "Kmn":
            a = lab[0] if isinstance(lab, tuple) else (lab if lab <= f.m else 0)
            b = lab[1] if isinstance(lab, tuple) else (lab if lab > f.m else f.m)
            return {"a": max(sym["a"], a), "b": max(sym["b"], b)}
        return {"used": 1}

    def _initial_sym(self):
        if self.flavor.kind == "Kmn":
            return {"a": 0, "b": self.flavor.m}
        return {"used": 0}

    def run(self) -> list[Label] | None:
        if self.g.n == 0:
            return []
        return self._rec(0, self._initial_sym())

    def _rec(self, depth: int, sym) -> list[Label] | None:
        self.nodes += 1
        if depth == len(self.order):
            return [self.labels[t] for t in self.lab]
        v = self.order[depth]
        for t in self._candidates(sym):
            self.lab[v] = t
            if self._consistent(v):
                res = self._rec(depth + 1, self._advance(sym, self.labels[t]))
                if res is not None:
                    return res
        self.lab[v] = -1
        return None


def find_partition(g: Graph, flavor: Flavor) -> WeakPartition | None:
    labels = _LabelSearch(g, flavor).run()
    if labels is None:
        return None
    return WeakPartition(flavor, tuple(labels))


def find_kr_amenable(g: Graph, r: int) -> WeakPartition | None:
    return find_partition(g, Flavor.kr(r))


def find_kmn_amenable(g: Graph, m: int, n: int) -> WeakPartition | None:
    return find_partition(g, Flavor.kmn(m, n))


def find_cycle_parallel_amenable(g: Graph, k: int) -> WeakPartition | None:
    return find_partition(g, Flavor.cycle(k))


# ---------------------------------------------------------------------------
# certificate converters


def _checked(g: Graph, p: WeakPartition) -> None:
    res = check_partition(g, p)
    if not res:
        raise PreconditionError(
            "partition fails its conditions: " + "; ".join(v.render() for v in res.violations)
        )


def kr_partition_to_eod(g: Graph, p: WeakPartition) -> tuple[int, ...]:
    """EOD-set of ``G □ K_r``: vertex ``(g, i-1)`` for every ``g`` in class ``i``."""
    _require(p, g, "Kr")
    _checked(g, p)
    r = p.flavor.r
    return tuple(sorted(v * r + lab - 1 for v, lab in enumerate(p.labels) if lab))


def eod_to_kr_partition(dims: ProductDims, r: int, d: Iterable[int]) -> WeakPartition:
    if dims.h_size != r:
        raise AmenabilityError(f"second factor has {dims.h_size} vertices, expected {r}")
    labels: list[Label] = [0] * dims.g_size
    for x in sorted(d):
        g, i = dims.pair(x)
        if labels[g]:
            raise PreconditionError(f"K_{r}-layer of vertex {g} holds two vertices of D")
        labels[g] = i + 1
    return WeakPartition(Flavor.kr(r), tuple(labels))


def kmn_partition_to_eod(g: Graph, p: WeakPartition) -> tuple[int, ...]:
    _require(p, g, "Kmn")
    _checked(g, p)
    size = p.flavor.m + p.flavor.n
    d = []
    for v, lab in enumerate(p.labels):
        if isinstance(lab, tuple):
            d += [v * size + lab[0] - 1, v * size + lab[1] - 1]
        elif lab:
            d.append(v * size + lab - 1)
    return tuple(sorted(d))


def eod_to_kmn_partition(dims: ProductDims, m: int, n: int, d: Iterable[int]) -> WeakPartition:
    if dims.h_size != m + n:
        raise AmenabilityError(f"second factor has {dims.h_size} vertices, expected {m + n}")
    per: list[list[int]] = [[] for _ in range(dims.g_size)]
    for x in sorted(d):
        g, h = dims.pair(x)
        per[g].append(h)
    labels: list[Label] = []
    for g, hs in enumerate(per):
        if not hs:
            labels.append(0)
        elif len(hs) == 1:
            labels.append(hs[0] + 1)
        elif len(hs) == 2 and hs[0] < m <= hs[1]:
            labels.append((hs[0] + 1, hs[1] + 1))
        else:
            raise PreconditionError(
                f"layer of vertex {g} meets D in {[h for h in hs]}; a diameter-2 layer holds "
                "at most two vertices of an EOD-set, and two only when adjacent"
            )
    return WeakPartition(Flavor.kmn(m, n), tuple(labels))


def cycle_partition_to_parallel_eod(g: Graph, p: WeakPartition) -> tuple[int, ...]:
    if p.flavor.kind not in ("C4", "C5"):
        raise AmenabilityError(f"expected a C4 or C5 partition, got {p.flavor.render()}")
    _checked(g, p)
    k = p.flavor.num_classes
    return tuple(sorted(v * k + lab - 1 for v, lab in enumerate(p.labels) if lab))


def parallel_eod_to_cycle_partition(dims: ProductDims, k: int, d: Iterable[int]) -> WeakPartition:
    flavor = Flavor.cycle(k)
    if dims.h_size != k:
        raise AmenabilityError(f"second factor has {dims.h_size} vertices, expected {k}")
    labels: list[Label] = [0] * dims.g_size
    for x in sorted(d):
        g, i = dims.pair(x)
        if labels[g]:
            raise PreconditionError(
                f"C_{k}-layer of vertex {g} holds two vertices of D, so D is not parallel "
                "with respect to the first factor"
            )
        labels[g] = i + 1
    return WeakPartition(flavor, tuple(labels))


# ---------------------------------------------------------------------------
# zig-zag sets


@dataclass(frozen=True)
class ZigzagSet:
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, edges: Iterable[tuple[int, int]]) -> "ZigzagSet":
        return cls(tuple(sorted((min(e), max(e)) for e in edges)))

    def vertices(self) -> set[int]:
        return {v for e in self.edges for v in e}

    def render(self) -> str:
        return " ".join(f"{u}-{v}" for u, v in self.edges)


def _two_step_graph(g: Graph, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    """Adjacency between edges of ``edges`` at distance exactly 2."""
    dist = [bfs_distances(g, e) for e in edges]
    k = len(edges)
    aux: list[list[int]] = [[] for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            if min(dist[a][x] for x in edges[b]) == 2:
                aux[a].append(b)
                aux[b].append(a)
    return aux


def _two_colour(aux: list[list[int]]):
    """BFS 2-colouring; returns (colour, None) or (None, odd cycle of node ids)."""
    k = len(aux)
    colour = [-1] * k
    parent = [-1] * k
    for s in range(k):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for b in aux[a]:
                if colour[b] < 0:
                    colour[b] = 1 - colour[a]
                    parent[b] = a
                    queue.append(b)
                elif colour[b] == colour[a]:
                    return None, _odd_cycle(parent, a, b)
    return colour, None


def _odd_cycle(parent: list[int], a: int, b: int) -> list[int]:
    def chain(x):
        out = [x]
        while parent[x] >= 0:
            x = parent[x]
            out.append(x)
        return out

    pa, pb = chain(a), chain(b)
    common = set(pa) & set(pb)
    ia = next(i for i, x in enumerate(pa) if x in common)
    ib = next(i for i, x in enumerate(pb) if x in common)
    return pa[: ia + 1] + pb[:ib][::-1]


def is_zigzag_set(g: Graph, zz: ZigzagSet) -> CheckResult:
    if g.n < 3:
        raise AmenabilityError("zig-zag sets are defined on graphs with at least 3 vertices")
    if not zz.edges:
        raise AmenabilityError("zig-zag set must be non-empty")
    edges = list(zz.edges)
    for u, v in edges:
        if not g.has_edge(u, v):
            raise AmenabilityError(f"{u}-{v} is not an edge of the graph")
    out = _Collector()
    for u, v in edges:
        common = g.masks[u] & g.masks[v]
        if common:
            x = (common & -common).bit_length() - 1
            out.add("i", ((u, v), x), "endpoints share a neighbour")
    for a, b in combinations(edges, 2):
        if edge_distance(g, a, b) < 2:
            out.add("ii", (a, b), "edges closer than 2")
    covered = zz.vertices()
    for x in range(g.n):
        if x in covered:
            continue
        near = [e for e in edges if x in g.neighbors(e[0]) or x in g.neighbors(e[1])]
        if len(near) != 2:
            out.add("iii", (x,), f"{len(near)} zig-zag edges at distance 1")
    aux = _two_step_graph(g, edges)
    _, cycle = _two_colour(aux)
    if cycle is not None:
        out.add("iv", tuple(edges[i] for i in cycle), f"odd 2-step cycle of length {len(cycle)}")
    return out.result()


def zigzag_to_k2_partition(g: Graph, zz: ZigzagSet) -> WeakPartition:
    res = is_zigzag_set(g, zz)
    if not res:
        raise PreconditionError(
            "not a zig-zag set: " + "; ".join(v.render() for v in res.violations)
        )
    edges = list(zz.edges)
    colour, _ = _two_colour(_two_step_graph(g, edges))
    labels: list[Label] = [0] * g.n
    for (u, v), c in zip(edges, colour):
        labels[u] = labels[v] = c + 1
    return WeakPartition(Flavor.kr(2), tuple(labels))


def k2_partition_to_zigzag(g: Graph, p: WeakPartition) -> ZigzagSet:
    _require(p, g, "Kr")
    if p.flavor.r != 2:
        raise AmenabilityError(f"expected a K_2 partition, got {p.flavor.render()}")
    _checked(g, p)
    s = {v for v, lab in enumerate(p.labels) if lab}
    if not s:
        raise PreconditionError("classes 1 and 2 are both empty")
    return ZigzagSet.of((u, v) for u, v in g.edges if u in s and v in s)


def iter_matchings(g: Graph):
    """All non-empty matchings of ``g``, as sorted edge tuples."""
    edges = g.sorted_edges()

    def rec(start: int, used: int, chosen: list):
        for t in range(start, len(edges)):
            u, v = edges[t]
            bits = (1 << u) | (1 << v)
            if used & bits:
                continue
            chosen.append(edges[t])
            yield tuple(chosen)
            yield from rec(t + 1, used | bits, chosen)
            chosen.pop()

    yield from rec(0, 0, [])


def find_zigzag_set(g: Graph) -> ZigzagSet | None:
    """Exhaustive search over matchings for a zig-zag set."""
    if g.n < 3:
        raise AmenabilityError("zig-zag sets are defined on graphs with at least 3 vertices")
    for mt in iter_matchings(g):
        zz = ZigzagSet(mt)
        if is_zigzag_set(g, zz):
            return zz
    return None


def brute_force_partition(g: Graph, flavor: Flavor, check=None) -> WeakPartition | None:
    """Try every labeling in lexicographic order; small graphs only."""
    from itertools import product

    check = check or check_partition
    labels = flavor.labels()
    if len(labels) ** g.n > 2_000_000:
        raise ValueError("labeling space too large for brute force")
    for combo in product(labels, repeat=g.n):
        p = WeakPartition(flavor, combo)
        if check(g, p):
            return p
    return None
