"""Immutable simple graphs, text formats, Cartesian products and distances.

Vertices are dense integers ``0..n-1``. Every graph keeps both sorted
neighbour tuples and integer bitmasks of its neighbourhoods; the search
modules work almost entirely on the bitmasks.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

INF = math.inf


class GraphError(ValueError):
    """Invalid graph construction or argument."""


class GraphParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Instances are immutable; equality and hashing use ``(n, edge set)``.
    """

    __slots__ = ("_n", "_edges", "_adj", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            seen.add(_norm_edge(u, v))
        adj: list[list[int]] = [[] for _ in range(n)]
        masks = [0] * n
        for u, v in seen:
            adj[u].append(v)
            adj[v].append(u)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._n = n
        self._edges = frozenset(seen)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._masks = tuple(masks)

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def masks(self) -> tuple[int, ...]:
        """Open neighbourhood of each vertex as a bitmask."""
        return self._masks

    def vertices(self) -> range:
        return range(self._n)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def closed_neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self._adj[v] + (v,)))

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and bool(self._masks[u] >> v & 1)

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return the induced subgraph relabelled densely, plus the old labels."""
        old = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(old)}
        edges = [(pos[u], pos[v]) for u, v in self._edges if u in pos and v in pos]
        return Graph(len(old), edges), old

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self._n, ((perm[u], perm[v]) for u, v in self._edges))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.sorted_edges()})"


# ---------------------------------------------------------------------------
# standard families


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite_graph(m: int, n: int) -> Graph:
    """``K_{m,n}`` with side A = ``0..m-1`` and side B = ``m..m+n-1``."""
    return Graph(m + n, ((i, m + j) for i in range(m) for j in range(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def named_graph(token: str) -> Graph:
    """Build a graph from a short name: ``P5``, ``C8``, ``K4``, ``K2,3``, ``E3``."""
    t = token.strip()
    try:
        kind, rest = t[0].upper(), t[1:]
        if kind == "K" and "," in rest:
            a, b = rest.split(",")
            return complete_bipartite_graph(int(a), int(b))
        size = int(rest)
    except (IndexError, ValueError):
        raise GraphError(f"unknown graph name {token!r}") from None
    builders = {"P": path_graph, "C": cycle_graph, "K": complete_graph, "E": empty_graph}
    if kind not in builders:
        raise GraphError(f"unknown graph name {token!r}")
    return builders[kind](size)


# ---------------------------------------------------------------------------
# text formats


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_edge_list(text: str) -> Graph:
    header: tuple[int, int] | None = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphParseError("malformed header: negative count", lineno)
            header = (a, b)
            header_line = lineno
            continue
        n = header[0]
        if a < 0 or b < 0 or a >= n or b >= n:
            raise GraphParseError(f"vertex index out of range 0..{n - 1} in {line!r}", lineno)
        if a == b:
            raise GraphParseError(f"loop edge {a} {b}", lineno)
        e = _norm_edge(a, b)
        if e in seen:
            raise GraphParseError(f"duplicate edge {a} {b}", lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise GraphParseError("malformed header: empty input")
    if len(edges) != header[1]:
        raise GraphParseError(f"header announces {header[1]} edges, found {len(edges)}", header_line)
    return Graph(header[0], edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphParseError("malformed header: empty graph6 string", 1)
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise GraphParseError(f"invalid graph6 character in {s!r}", 1)
    n = ord(s[0]) - 63
    if n > 62:
        raise GraphParseError("only the short graph6 form (n <= 62) is supported", 1)
    nbits = n * (n - 1) // 2
    data = s[1:]
    if len(data) != (nbits + 5) // 6:
        raise GraphParseError(f"graph6 body has {len(data)} bytes, expected {(nbits + 5) // 6}", 1)
    bits = []
    for c in data:
        val = ord(c) - 63
        bits.extend((val >> (5 - k)) & 1 for k in range(6))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def format_graph6(g: Graph) -> str:
    if g.n > 62:
        raise GraphError("only the short graph6 form (n <= 62) is supported")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    """Parse ``text`` as ``"edge-list"``, ``"graph6"`` or ``"auto"`` (sniff)."""
    if fmt == "auto":
        first = next((_strip_comment(l) for l in text.splitlines() if _strip_comment(l)), "")
        fmt = "edge-list" if first[:1].isdigit() or " " in first else "graph6"
    if fmt == "edge-list":
        return parse_edge_list(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise GraphError(f"unknown format {fmt!r}")


def format_graph(g: Graph, fmt: str = "edge-list") -> str:
    if fmt == "edge-list":
        return format_edge_list(g)
    if fmt == "graph6":
        return format_graph6(g) + "\n"
    raise GraphError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# Cartesian product


@dataclass(frozen=True)
class ProductDims:
    """Vertex pairing of a product: ``(g, h) <-> g * h_size + h``."""

    g_size: int
    h_size: int

    @property
    def order(self) -> int:
        return self.g_size * self.h_size

    def index(self, g: int, h: int) -> int:
        return g * self.h_size + h

    def pair(self, v: int) -> tuple[int, int]:
        return divmod(v, self.h_size)

    def h_layer(self, g: int) -> list[int]:
        """Vertices of the H-layer through ``g`` (first coordinate fixed)."""
        return [g * self.h_size + h for h in range(self.h_size)]

    def g_layer(self, h: int) -> list[int]:
        """Vertices of the G-layer through ``h`` (second coordinate fixed)."""
        return [g * self.h_size + h for g in range(self.g_size)]


def cartesian_product(g: Graph, h: Graph) -> tuple[Graph, ProductDims]:
    dims = ProductDims(g.n, h.n)
    edges = []
    for a, b in g.edges:
        for y in range(h.n):
            edges.append((dims.index(a, y), dims.index(b, y)))
    for x in range(g.n):
        for a, b in h.edges:
            edges.append((dims.index(x, a), dims.index(x, b)))
    return Graph(dims.order, edges), dims


def _as_pair(dims: ProductDims, v) -> tuple[int, int]:
    if isinstance(v, tuple):
        return v
    return dims.pair(v)


def project_edge(dims: ProductDims, e, factor: str = "first"):
    """Image of a product edge under the projection onto one factor.

    Endpoints may be given as flat indices or ``(g, h)`` pairs. Returns a
    sorted vertex pair when the image is an edge, an ``int`` when it is a
    single vertex.
    """
    if factor not in ("first", "second"):
        raise GraphError(f"factor must be 'first' or 'second', got {factor!r}")
    (g1, h1), (g2, h2) = _as_pair(dims, e[0]), _as_pair(dims, e[1])
    if (g1 != g2) == (h1 != h2):
        raise GraphError(f"{e!r} is not an edge of a Cartesian product")
    a, b = (g1, g2) if factor == "first" else (h1, h2)
    return _norm_edge(a, b) if a != b else a


# ---------------------------------------------------------------------------
# distances


def bfs_distances(g: Graph, sources: Iterable[int]) -> list[float]:
    dist: list[float] = [INF] * g.n
    queue: deque[int] = deque()
    for s in sources:
        if dist[s] != 0:
            dist[s] = 0
            queue.append(s)
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if dist[w] == INF:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def distance(g: Graph, u: int, v: int) -> float:
    return bfs_distances(g, [u])[v]


def edge_distance(g: Graph, e1: tuple[int, int], e2) -> float:
    """Distance between an edge and an edge (pair) or a vertex (int)."""
    targets = [e2] if isinstance(e2, int) else list(e2)
    dist = bfs_distances(g, e1)
    return min(dist[t] for t in targets)


def set_distance(g: Graph, p: Iterable[int], q: Iterable[int]) -> float:
    p, q = list(p), list(q)
    if not p or not q:
        raise GraphError("set distance is defined for non-empty sets only")
    dist = bfs_distances(g, p)
    return min(dist[t] for t in q)


def all_pairs_distances(g: Graph) -> list[list[float]]:
    return [bfs_distances(g, [v]) for v in range(g.n)]


def diameter(g: Graph) -> float:
    if g.n <= 1:
        return 0
    return max(max(row) for row in all_pairs_distances(g))


def is_induced_one_regular(g: Graph, s: Iterable[int]) -> bool:
    """Every vertex of ``s`` has exactly one neighbour inside ``s``."""
    mask = 0
    for v in s:
        mask |= 1 << v
    masks = g.masks
    rest = mask
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        if (masks[v] & mask).bit_count() != 1:
            return False
        rest ^= low
    return True


def is_connected(g: Graph) -> bool:
    return g.n == 0 or INF not in bfs_distances(g, [0])


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask
