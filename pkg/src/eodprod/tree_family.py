"""Trees whose product with ``K_r`` has an EOD-set, built by gluing.

Every such tree of order at least 3 comes from copies of ``K_{1,r}^+``
(the star ``K_{1,r}`` with each edge subdivided once) by two gluing steps:

* Type-a: take a class-``i`` matched edge in each of two trees and identify
  the two edges (in either orientation);
* Type-b: join a ``V_0`` vertex of one tree to a ``V_0`` vertex of another.

``recognize_tree`` runs the decomposition in reverse and returns a
``TreeTrace`` that rebuilds an isomorphic tree. Vertex numbers in a trace
always refer to the vertex numbering of the trees its subtraces rebuild.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence, Union

from .amenability import Flavor, WeakPartition, check_kr_amenable, find_kr_amenable
from .graph_core import Graph, bfs_distances, is_tree

CanonicalCode = str

# Above this order labelled enumeration switches from Prüfer sequences to
# extension of the previous order's representatives by a pendant vertex.
PRUFER_MAX_ORDER = 7


class TreeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# canonical form


def tree_centers(t: Graph) -> list[int]:
    if t.n <= 2:
        return list(range(t.n))
    deg = [t.degree(v) for v in range(t.n)]
    layer = [v for v in range(t.n) if deg[v] <= 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in t.neighbors(v):
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _rooted_code(t: Graph, root: int, colour: Sequence | None) -> str:
    parent = {root: -1}
    order = [root]
    for v in order:
        for w in t.neighbors(v):
            if w not in parent:
                parent[w] = v
                order.append(w)
    codes: dict[int, str] = {}
    for v in reversed(order):
        kids = sorted(codes.pop(w) for w in t.neighbors(v) if parent.get(w) == v and w != parent[v])
        tag = "" if colour is None else str(colour[v])
        codes[v] = "(" + tag + "".join(kids) + ")"
    return codes[root]


def canonical_code(t: Graph, colour: Sequence | None = None) -> CanonicalCode:
    """Centre-rooted parenthesis encoding; equal iff the trees are isomorphic.

    With ``colour`` the encoding also respects a vertex colouring.
    """
    if not is_tree(t):
        raise TreeError("canonical codes are defined for trees only")
    return min(_rooted_code(t, c, colour) for c in tree_centers(t))


def _partition_code(pt: "PartitionedTree") -> str:
    """Code of a partitioned tree, up to isomorphism and renaming of classes."""
    r = pt.partition.flavor.r
    best = None
    for perm in permutations(range(1, r + 1)):
        labs = [perm[l - 1] if l else 0 for l in pt.partition.labels]
        code = canonical_code(pt.tree, labs)
        if best is None or code < best:
            best = code
    return best


# ---------------------------------------------------------------------------
# tree enumeration


def prufer_decode(seq: Sequence[int], n: int) -> Graph:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = (v for v in range(n) if degree[v] == 1)
    edges.append((u, w))
    return Graph(n, edges)


def _trees_by_prufer(order: int) -> list[Graph]:
    reps: dict[str, Graph] = {}
    for seq in product(range(order), repeat=order - 2):
        t = prufer_decode(seq, order)
        reps.setdefault(canonical_code(t), t)
    return [reps[c] for c in sorted(reps)]


def _trees_by_extension(prev: list[Graph]) -> list[Graph]:
    reps: dict[str, Graph] = {}
    for t in prev:
        for v in range(t.n):
            grown = Graph(t.n + 1, [*t.edges, (v, t.n)])
            reps.setdefault(canonical_code(grown), grown)
    return [reps[c] for c in sorted(reps)]


_TREE_CACHE: dict[tuple[int, str], list[Graph]] = {}


def enumerate_trees(order: int, method: str = "auto") -> list[Graph]:
    """One tree per isomorphism class, sorted by canonical code."""
    if order < 1:
        raise TreeError("order must be at least 1")
    if order == 1:
        return [Graph(1)]
    if order == 2:
        return [Graph(2, [(0, 1)])]
    if method == "auto":
        method = "prufer" if order <= PRUFER_MAX_ORDER else "extension"
    if method not in ("prufer", "extension"):
        raise TreeError(f"unknown method {method!r}")
    key = (order, method)
    if key not in _TREE_CACHE:
        if method == "prufer":
            _TREE_CACHE[key] = _trees_by_prufer(order)
        else:
            _TREE_CACHE[key] = _trees_by_extension(enumerate_trees(order - 1))
    return list(_TREE_CACHE[key])


# ---------------------------------------------------------------------------
# partitioned trees and the two constructions


@dataclass(frozen=True)
class PartitionedTree:
    tree: Graph
    partition: WeakPartition

    @property
    def r(self) -> int:
        return self.partition.flavor.r

    @property
    def order(self) -> int:
        return self.tree.n

    def class_edges(self, i: int) -> list[tuple[int, int]]:
        labs = self.partition.labels
        return [(u, v) for u, v in self.tree.sorted_edges() if labs[u] == i and labs[v] == i]

    def zero_vertices(self) -> list[int]:
        return self.partition.part(0)


def _expose(tree: Graph, labels: Sequence, r: int) -> PartitionedTree:
    pt = PartitionedTree(tree, WeakPartition(Flavor.kr(r), tuple(labels)))
    if not is_tree(tree) or not check_kr_amenable(tree, pt.partition):
        raise AssertionError("construction produced an invalid partitioned tree")
    return pt


def k1r_plus(r: int) -> PartitionedTree:
    """Centre 0; leg ``i`` is ``0 - (2i-1) - 2i`` with both leg vertices in class ``i``."""
    if r < 2:
        raise TreeError(f"K_1,r^+ needs r >= 2, got {r}")
    edges = []
    labels = [0]
    for i in range(1, r + 1):
        edges += [(0, 2 * i - 1), (2 * i - 1, 2 * i)]
        labels += [i, i]
    return _expose(Graph(2 * r + 1, edges), labels, r)


def _valid_input(pt: PartitionedTree, name: str) -> None:
    if not check_kr_amenable(pt.tree, pt.partition):
        raise TreeError(f"{name} does not carry a valid partition")


def type_a(
    left: PartitionedTree,
    right: PartitionedTree,
    i: int,
    e_left: tuple[int, int],
    e_right: tuple[int, int],
    orientation: str = "straight",
) -> PartitionedTree:
    """Identify a class-``i`` matched edge of ``left`` with one of ``right``.

    ``left`` keeps its numbering; the other vertices of ``right`` follow in
    increasing order. ``straight`` glues ``e_right[0]`` onto ``e_left[0]``,
    ``flipped`` glues it onto ``e_left[1]``.
    """
    if left.r != right.r:
        raise TreeError("both trees must carry partitions for the same r")
    if not 1 <= i <= left.r:
        raise TreeError(f"class {i} out of range")
    if orientation not in ("straight", "flipped"):
        raise TreeError(f"unknown orientation {orientation!r}")
    _valid_input(left, "left tree")
    _valid_input(right, "right tree")
    for pt, e, side in ((left, e_left, "left"), (right, e_right, "right")):
        u, v = e
        labs = pt.partition.labels
        if not pt.tree.has_edge(u, v) or labs[u] != i or labs[v] != i:
            raise TreeError(f"{side} edge {u}-{v} is not a class-{i} matched edge")
    glue = dict(zip(e_right, e_left if orientation == "straight" else e_left[::-1]))
    nl = left.order
    rest = [v for v in range(right.order) if v not in glue]
    where = dict(glue)
    where.update({v: nl + k for k, v in enumerate(rest)})
    edges = list(left.tree.edges) + [(where[u], where[v]) for u, v in right.tree.edges]
    labels = list(left.partition.labels) + [right.partition.labels[v] for v in rest]
    return _expose(Graph(nl + len(rest), edges), labels, left.r)


def type_b(left: PartitionedTree, right: PartitionedTree, x: int, y: int) -> PartitionedTree:
    """Disjoint union plus the edge ``x - (|left| + y)``; both ends in ``V_0``."""
    if left.r != right.r:
        raise TreeError("both trees must carry partitions for the same r")
    _valid_input(left, "left tree")
    _valid_input(right, "right tree")
    if left.partition.labels[x] != 0:
        raise TreeError(f"x={x} is not in V_0 of the left tree")
    if right.partition.labels[y] != 0:
        raise TreeError(f"y={y} is not in V_0 of the right tree")
    nl = left.order
    edges = list(left.tree.edges) + [(nl + u, nl + v) for u, v in right.tree.edges]
    edges.append((x, nl + y))
    labels = list(left.partition.labels) + list(right.partition.labels)
    return _expose(Graph(nl + right.order, edges), labels, left.r)


# ---------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class Leaf:
    r: int

    def render(self) -> str:
        return f"(leaf {self.r})"


@dataclass(frozen=True)
class PathTwo:
    """The order-2 path, amenable for every ``r`` but outside the family."""

    r: int

    def render(self) -> str:
        return f"(p2 {self.r})"


@dataclass(frozen=True)
class TypeA:
    left: "TreeTrace"
    right: "TreeTrace"
    i: int
    e_left: tuple[int, int]
    e_right: tuple[int, int]
    orientation: str = "straight"

    def render(self) -> str:
        el = f"({self.e_left[0]} {self.e_left[1]})"
        er = f"({self.e_right[0]} {self.e_right[1]})"
        return f"(type-a {self.i} {el} {er} {self.orientation} {self.left.render()} {self.right.render()})"


@dataclass(frozen=True)
class TypeB:
    left: "TreeTrace"
    right: "TreeTrace"
    x: int
    y: int

    def render(self) -> str:
        return f"(type-b {self.x} {self.y} {self.left.render()} {self.right.render()})"


TreeTrace = Union[Leaf, PathTwo, TypeA, TypeB]


def replay(trace: TreeTrace) -> PartitionedTree:
    if isinstance(trace, Leaf):
        return k1r_plus(trace.r)
    if isinstance(trace, PathTwo):
        labels = [1, 1]
        return PartitionedTree(Graph(2, [(0, 1)]), WeakPartition(Flavor.kr(trace.r), tuple(labels)))
    if isinstance(trace, TypeA):
        return type_a(replay(trace.left), replay(trace.right), trace.i,
                      trace.e_left, trace.e_right, trace.orientation)
    return type_b(replay(trace.left), replay(trace.right), trace.x, trace.y)


def trace_size(trace: TreeTrace) -> int:
    if isinstance(trace, Leaf):
        return 2 * trace.r + 1
    if isinstance(trace, PathTwo):
        return 2
    if isinstance(trace, TypeA):
        return trace_size(trace.left) + trace_size(trace.right) - 2
    return trace_size(trace.left) + trace_size(trace.right)


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_trace(text: str) -> TreeTrace:
    tokens = _TOKEN.findall(text)
    pos = 0

    def expr():
        nonlocal pos
        if tokens[pos] != "(":
            tok = tokens[pos]
            pos += 1
            return tok
        pos += 1
        items = []
        while tokens[pos] != ")":
            items.append(expr())
        pos += 1
        return items

    def build(node) -> TreeTrace:
        head = node[0]
        if head == "leaf":
            return Leaf(int(node[1]))
        if head == "p2":
            return PathTwo(int(node[1]))
        if head == "type-a":
            _, i, el, er, orient, left, right = node
            return TypeA(build(left), build(right), int(i),
                         (int(el[0]), int(el[1])), (int(er[0]), int(er[1])), orient)
        if head == "type-b":
            _, x, y, left, right = node
            return TypeB(build(left), build(right), int(x), int(y))
        raise TreeError(f"unknown trace node {head!r}")

    try:
        tree = expr()
        if pos != len(tokens):
            raise TreeError("trailing input after trace")
        return build(tree)
    except (IndexError, ValueError) as exc:
        raise TreeError(f"malformed trace: {exc}") from None


# ---------------------------------------------------------------------------
# recognition


def _component(t: Graph, start: int, cut: tuple[int, int]) -> list[int]:
    a, b = cut
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in t.neighbors(v):
            if (v, w) in ((a, b), (b, a)) or w in seen:
                continue
            seen.add(w)
            stack.append(w)
    return sorted(seen)


def _decompose(t: Graph, labels: list, r: int) -> tuple[TreeTrace, list[int]]:
    """Trace for a partitioned tree plus where each vertex lands in its replay."""
    zeros = [v for v in range(t.n) if labels[v] == 0]
    if len(zeros) == 1:
        c = zeros[0]
        where = [-1] * t.n
        where[c] = 0
        for u in t.neighbors(c):
            i = labels[u]
            (w,) = [w for w in t.neighbors(u) if labels[w] != 0]
            where[u], where[w] = 2 * i - 1, 2 * i
        return Leaf(r), where

    heavy = [v for v in zeros if t.degree(v) > r]
    if heavy:
        v = heavy[0]
        w = min(x for x in t.neighbors(v) if labels[x] == 0)
        side_v = _component(t, v, (v, w))
        side_w = _component(t, w, (v, w))
        sub_v, old_v = t.induced_subgraph(side_v)
        sub_w, old_w = t.induced_subgraph(side_w)
        tr_v, map_v = _decompose(sub_v, [labels[x] for x in old_v], r)
        tr_w, map_w = _decompose(sub_w, [labels[x] for x in old_w], r)
        where = [-1] * t.n
        for k, x in enumerate(old_v):
            where[x] = map_v[k]
        for k, x in enumerate(old_w):
            where[x] = len(old_v) + map_w[k]
        return TypeB(tr_v, tr_w, map_v[old_v.index(v)], map_w[old_w.index(w)]), where

    best = None
    for a in zeros:
        dist = bfs_distances(t, [a])
        for b in zeros:
            if b > a and (best is None or dist[b] < best[0]):
                best = (dist[b], a, b, dist)
    d, u, v, _ = best
    to_v = bfs_distances(t, [v])
    w = next(x for x in t.neighbors(u) if to_v[x] == d - 1)
    c = labels[w]
    (w2,) = [x for x in t.neighbors(w) if labels[x] == c]
    side_u = _component(t, u, (u, w))
    side_v = _component(t, w, (u, w))

    sub_u, old_u = t.induced_subgraph(side_u)
    nu = len(old_u)
    t_new, t2_new = nu, nu + 1
    grown = Graph(nu + 2, [*sub_u.edges, (old_u.index(u), t_new), (t_new, t2_new)])
    tr_l, map_l = _decompose(grown, [labels[x] for x in old_u] + [c, c], r)

    sub_v, old_v = t.induced_subgraph(side_v)
    tr_r, map_r = _decompose(sub_v, [labels[x] for x in old_v], r)

    e_left = (map_l[t_new], map_l[t2_new])
    e_right = (map_r[old_v.index(w)], map_r[old_v.index(w2)])
    left_size = nu + 2
    rest = sorted(set(range(len(old_v))) - {old_v.index(w), old_v.index(w2)}, key=lambda k: map_r[k])
    where = [-1] * t.n
    for k, x in enumerate(old_u):
        where[x] = map_l[k]
    where[w], where[w2] = e_left
    for rank, k in enumerate(rest):
        where[old_v[k]] = left_size + rank
    return TypeA(tr_l, tr_r, c, e_left, e_right, "straight"), where


def recognize_tree_with_map(t: Graph, r: int) -> tuple[TreeTrace, list[int]] | None:
    if not is_tree(t):
        raise TreeError("input is not a tree")
    if r < 2:
        raise TreeError(f"r must be at least 2, got {r}")
    if t.n == 2:
        return PathTwo(r), [0, 1]
    if t.n < 3:
        return None
    p = find_kr_amenable(t, r)
    if p is None:
        return None
    return _decompose(t, list(p.labels), r)


def recognize_tree(t: Graph, r: int) -> TreeTrace | None:
    """Construction trace of ``t`` from copies of ``K_{1,r}^+``, or ``None``."""
    res = recognize_tree_with_map(t, r)
    return None if res is None else res[0]


# ---------------------------------------------------------------------------
# generation


def _compositions(a: tuple, b: tuple, max_order: int) -> Iterator[tuple[PartitionedTree, TreeTrace]]:
    (pa, ta), (pb, tb) = a, b
    r = pa.r
    if pa.order + pb.order - 2 <= max_order:
        for i in range(1, r + 1):
            for el in pa.class_edges(i):
                for er in pb.class_edges(i):
                    for orient in ("straight", "flipped"):
                        yield type_a(pa, pb, i, el, er, orient), TypeA(ta, tb, i, el, er, orient)
    if pa.order + pb.order <= max_order:
        for x in pa.zero_vertices():
            for y in pb.zero_vertices():
                yield type_b(pa, pb, x, y), TypeB(ta, tb, x, y)


def family_members(r: int, max_order: int) -> list[tuple[PartitionedTree, TreeTrace]]:
    """Closure of ``K_{1,r}^+`` under both constructions, one per partitioned class."""
    if r < 2:
        raise TreeError(f"r must be at least 2, got {r}")
    base = k1r_plus(r)
    states: dict[str, tuple[PartitionedTree, TreeTrace]] = {}
    if base.order <= max_order:
        states[_partition_code(base)] = (base, Leaf(r))
    fresh = list(states)
    while fresh:
        known = list(states)
        new: list[str] = []
        fresh_set = set(fresh)
        for ka in known:
            for kb in known:
                if ka not in fresh_set and kb not in fresh_set:
                    continue
                for pt, tr in _compositions(states[ka], states[kb], max_order):
                    key = _partition_code(pt)
                    if key not in states:
                        states[key] = (pt, tr)
                        new.append(key)
        fresh = new
    return [states[k] for k in sorted(states)]


def generate_family(r: int, max_order: int) -> list[CanonicalCode]:
    """Sorted canonical codes of all family trees with at most ``max_order`` vertices."""
    return sorted({canonical_code(pt.tree) for pt, _ in family_members(r, max_order)})
