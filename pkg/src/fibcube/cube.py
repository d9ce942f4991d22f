"""Hypercubes, avoidance-induced subgraphs, and graph6 serialization.

`build_graph(d, f)` materializes the subgraph of the d-cube induced on the
length-d words with no occurrence of `f` (the whole d-cube when `f` is
omitted).  Vertices are kept in ascending numeric order so that equal
graphs serialize identically before any canonicalization.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .words import all_words, check_word, contains_factor

MAX_GRAPH_DIMENSION = 14


class AvoidanceGraph:
    """Induced subgraph of the d-cube on factor-avoiding vertex labels.

    Immutable after construction.  `vertices` is the sorted tuple of
    labels, `neighbors[i]` the sorted tuple of indices adjacent to vertex
    i (Hamming distance one among surviving labels).
    """

    __slots__ = ("d", "forbidden", "vertices", "index", "neighbors", "_neighbor_sets")

    def __init__(self, d: int, forbidden: str | None = None):
        if not 1 <= d <= MAX_GRAPH_DIMENSION:
            raise ValueError(f"d must be in [1, {MAX_GRAPH_DIMENSION}], got {d}")
        if forbidden is not None:
            check_word(forbidden)
        self.d = d
        self.forbidden = forbidden
        if forbidden is None:
            verts = list(all_words(d))
        else:
            verts = [w for w in all_words(d) if not contains_factor(w, forbidden)]
        self.vertices = tuple(verts)
        self.index = {w: i for i, w in enumerate(verts)}
        idx = self.index
        nbrs = []
        for w in verts:
            row = []
            for i in range(d):
                u = w[:i] + ("1" if w[i] == "0" else "0") + w[i + 1 :]
                j = idx.get(u)
                if j is not None:
                    row.append(j)
            row.sort()
            nbrs.append(tuple(row))
        self.neighbors = tuple(nbrs)
        self._neighbor_sets = None

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def neighbor_sets(self) -> tuple[frozenset, ...]:
        if self._neighbor_sets is None:
            self._neighbor_sets = tuple(frozenset(row) for row in self.neighbors)
        return self._neighbor_sets

    def has_vertex(self, w: str) -> bool:
        return w in self.index

    def degree(self, w: str) -> int:
        return len(self.neighbors[self.index[w]])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AvoidanceGraph)
            and self.vertices == other.vertices
            and self.neighbors == other.neighbors
        )

    def __hash__(self):
        return hash((self.vertices, self.neighbors))

    def __repr__(self):
        f = "" if self.forbidden is None else f", avoiding {self.forbidden}"
        return f"<AvoidanceGraph d={self.d}{f}: {self.n} vertices, {edge_count(self)} edges>"


@dataclass(frozen=True)
class Graph:
    """Bare adjacency-list graph, the shape graph6 decoding produces."""

    n: int
    neighbors: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ExcludedSets:
    """Vertices of the d-cube killed by the forbidden factor.

    `excluded` is every length-d word containing the factor.  `layers` is
    populated only in the staircase regime (factor 0^k 1^k or 0^{k+1} 1^{k-1}
    at dimension 3k-1): layer i holds the words u+f+v with |u| = i.
    """

    excluded: tuple[str, ...]
    layers: tuple[tuple[str, ...], ...] | None


def build_graph(d: int, f: str | None = None) -> AvoidanceGraph:
    """Build Q_d, or the induced subgraph avoiding factor `f`."""
    return AvoidanceGraph(d, f)


def flip_bit(w: str, i: int) -> str:
    """Flip the i-th bit (1-based), i.e. add the i-th unit string mod 2."""
    if not 1 <= i <= len(w):
        raise ValueError(f"bit index {i} out of range for word of length {len(w)}")
    return w[: i - 1] + ("1" if w[i - 1] == "0" else "0") + w[i:]


def _staircase_split(f: str) -> int | None:
    """Return k when f is 0^k 1^k or 0^{k+1} 1^{k-1}, else None."""
    if len(f) % 2:
        return None
    k = len(f) // 2
    if f == "0" * k + "1" * k or f == "0" * (k + 1) + "1" * (k - 1):
        return k
    return None


def excluded_sets(d: int, f: str) -> ExcludedSets:
    """Words of length d containing `f`, plus staircase layers when defined."""
    check_word(f)
    if not len(f) <= d <= MAX_GRAPH_DIMENSION:
        raise ValueError(f"need |f| <= d <= {MAX_GRAPH_DIMENSION}")
    excluded = tuple(w for w in all_words(d) if contains_factor(w, f))
    layers = None
    k = _staircase_split(f)
    if k is not None and d == 3 * k - 1:
        layers = tuple(
            tuple(sorted(u + f + v for u in all_words(i) for v in all_words(k - 1 - i)))
            for i in range(k)
        )
    return ExcludedSets(excluded=excluded, layers=layers)


def graph_distance(G: AvoidanceGraph, u: str, v: str) -> int | None:
    """BFS shortest-path length between two vertex labels; None if unreachable."""
    for w in (u, v):
        if w not in G.index:
            raise ValueError(f"{w!r} is not a vertex of the graph")
    if u == v:
        return 0
    src, dst = G.index[u], G.index[v]
    nbrs = G.neighbors
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for y in nbrs[x]:
            if y not in dist:
                if y == dst:
                    return dx
                dist[y] = dx
                queue.append(y)
    return None


def count_c4_through_edge(G: AvoidanceGraph, u: str, v: str) -> int:
    """Number of distinct 4-cycles of G containing the edge uv."""
    iu, iv = G.index[u], G.index[v]
    sets = G.neighbor_sets
    if iv not in sets[iu]:
        raise ValueError(f"{u}-{v} is not an edge")
    nv = sets[iv]
    total = 0
    for w in sets[iu]:
        if w == iv:
            continue
        # u itself always sits in N(w) & N(v); drop it from the count
        total += len(sets[w] & nv) - 1
    return total


def left_to_right_path(b: str, c: str) -> list[str]:
    """Shortest path from b to c flipping differing bits left to right."""
    if len(b) != len(c):
        raise ValueError("words must have equal length")
    path = [b]
    w = b
    for i in range(1, len(b) + 1):
        if w[i - 1] != c[i - 1]:
            w = flip_bit(w, i)
            path.append(w)
    return path


def edge_count(G: AvoidanceGraph) -> int:
    """Number of edges."""
    return sum(len(row) for row in G.neighbors) // 2


def induced_degrees(G: AvoidanceGraph, labels) -> tuple[int, ...]:
    """Sorted degree sequence of the subgraph of G induced on `labels`."""
    idx = [G.index[w] for w in labels]
    chosen = set(idx)
    return tuple(sorted(sum(1 for j in G.neighbors[i] if j in chosen) for i in idx))


# graph6: size prefix, then the upper-triangle adjacency bits in column
# order (j = 2..n, i = 1..j-1), packed 6 per byte, each +63.

_G6_MAX_N = 258048


def _g6_size_bytes(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return chr(126) + "".join(chr(((n >> s) & 0x3F) + 63) for s in (12, 6, 0))


def graph6_bits_to_text(n: int, bits: list[int]) -> str:
    out = [_g6_size_bytes(n)]
    for i in range(0, len(bits), 6):
        chunk = bits[i : i + 6]
        chunk += [0] * (6 - len(chunk))
        val = 0
        for b in chunk:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def graph6_from_neighbors(neighbors) -> str:
    """Encode an adjacency list (indices 0..n-1) as graph6 text."""
    n = len(neighbors)
    if n >= _G6_MAX_N:
        raise ValueError(f"graph6 supports fewer than {_G6_MAX_N} vertices")
    sets = [set(row) for row in neighbors]
    bits = []
    for j in range(1, n):
        sj = sets[j]
        bits.extend(1 if i in sj else 0 for i in range(j))
    return graph6_bits_to_text(n, bits)


def to_graph6(G) -> str:
    """graph6 text of a graph (AvoidanceGraph, Graph, or raw adjacency)."""
    return graph6_from_neighbors(getattr(G, "neighbors", G))


def from_graph6(text: str) -> Graph:
    """Decode graph6 text back into an adjacency-list Graph."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise ValueError("empty graph6 text")
    data = [ord(ch) - 63 for ch in s]
    if any(not 0 <= v <= 63 for v in data):
        raise ValueError("graph6 text contains bytes outside the printable range")
    if data[0] == 63:
        if len(data) < 4:
            raise ValueError("truncated graph6 size prefix")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    bits = []
    for v in body:
        bits.extend((v >> s) & 1 for s in (5, 4, 3, 2, 1, 0))
    if any(bits[nbits:]):
        raise ValueError("nonzero padding bits in graph6 text")
    nbrs = [[] for _ in range(n)]
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                nbrs[i].append(j)
                nbrs[j].append(i)
            pos += 1
    return Graph(n=n, neighbors=tuple(tuple(sorted(row)) for row in nbrs))
