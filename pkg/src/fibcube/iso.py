"""Graph isomorphism via canonical labeling.

The engine is classic individualization-refinement: refine a vertex
coloring to its coarsest equitable partition, and while some color class
has more than one vertex, branch on individualizing each vertex of the
first largest non-singleton class.  Each leaf of the search tree is a
discrete coloring, i.e. a vertex ordering; the certificate is the graph6
text of the lexicographically least (invariant-sequence first, adjacency
encoding second) relabeled graph.

Three standard devices keep the tree small on cube-like graphs:

* every child node carries a relabeling-invariant signature of its refined
  partition, and only children attaining the minimal signature survive;
* whenever two leaves produce identical encodings, the composed
  permutation is an automorphism, and siblings lying in the orbit of an
  already-explored vertex under the discovered automorphisms are skipped;
* when plain refinement stalls with large color classes (near-regular
  graphs), vertices are pre-colored by their multisets of BFS distances
  to the members of the smallest classes, which is label-invariant and
  usually shatters the fake symmetry.

A per-canonicalization node budget (default 10**7 refinement calls) turns
pathological inputs into a hard error instead of a silent wrong answer.
"""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass
from hashlib import blake2b

from .cube import graph6_from_neighbors

DEFAULT_NODE_BUDGET = 10**7
MAX_CANON_VERTICES = 16384

_PROFILE_CELL_TRIGGER = 8
_PROFILE_MIN_VERTICES = 33
_PROFILE_MAX_SOURCES = 96
_MAX_GENERATORS = 512


class BudgetExceededError(RuntimeError):
    """Raised when a canonicalization exhausts its search-node budget."""


def _adjacency(G):
    return getattr(G, "neighbors", G)


def _labels(G):
    verts = getattr(G, "vertices", None)
    if verts is None:
        return list(range(len(_adjacency(G))))
    return list(verts)


# ---------------------------------------------------------------------------
# Equitable refinement


def refine(neighbors, colors, seeds=None) -> list[int]:
    """Coarsest equitable refinement of the partition encoded by `colors`.

    Two vertices end with the same color only if they started with the
    same color and have identical neighbor-color count vectors at every
    stage.  Color ids are assigned by a deterministic, label-invariant
    rule (splits processed in class-id order, parts ordered by neighbor
    count), so relabeling the graph permutes the result consistently.

    `seeds` restricts the initial splitter worklist to the given color
    values; only valid when the rest of the partition is already
    equitable (the incremental case after individualizing one vertex).
    """
    n = len(neighbors)
    distinct = sorted(set(colors))
    if distinct == list(range(len(distinct))):
        color_of = list(colors)
    else:
        remap = {c: i for i, c in enumerate(distinct)}
        color_of = [remap[c] for c in colors]
        if seeds is not None:
            seeds = [remap[c] for c in seeds]
    cells: dict[int, list[int]] = {i: [] for i in range(len(distinct))}
    for v, c in enumerate(color_of):
        cells[c].append(v)
    next_id = len(distinct)

    if seeds is None:
        queue = deque(cells)
        queued = set(cells)
    else:
        queue = deque(sorted(set(seeds)))
        queued = set(queue)
    cnt = [0] * n
    while queue:
        s = queue.popleft()
        queued.discard(s)
        touched = []
        for u in cells[s]:
            for w in neighbors[u]:
                if not cnt[w]:
                    touched.append(w)
                cnt[w] += 1
        by_class: dict[int, list[int]] = {}
        for w in touched:
            by_class.setdefault(color_of[w], []).append(w)
        for c in sorted(by_class):
            hits = by_class[c]
            cell = cells[c]
            groups: dict[int, list[int]] = {}
            for w in hits:
                groups.setdefault(cnt[w], []).append(w)
            if len(hits) < len(cell):
                groups[0] = [v for v in cell if not cnt[v]]
            if len(groups) == 1:
                continue
            parts = sorted(groups.items())
            for rank, (_, grp) in enumerate(parts):
                if rank == 0:
                    cells[c] = grp
                    cid = c
                else:
                    cid = next_id
                    next_id += 1
                    cells[cid] = grp
                    for v in grp:
                        color_of[v] = cid
                if cid not in queued:
                    queued.add(cid)
                    queue.append(cid)
        for w in touched:
            cnt[w] = 0
    return color_of


def _group_cells(color_of) -> dict[int, list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(color_of):
        cells.setdefault(c, []).append(v)
    return cells


def _partition_invariant(neighbors, color_of, cells) -> bytes:
    """Relabeling-invariant digest of an equitable coloring."""
    ids = sorted(cells)
    sig = [len(ids)]
    for c in ids:
        sig.append(len(cells[c]))
    for c in ids:
        u = cells[c][0]  # equitable: any member has the same count vector
        row: dict[int, int] = {}
        for w in neighbors[u]:
            cw = color_of[w]
            row[cw] = row.get(cw, 0) + 1
        sig.append(-1)
        for pair in sorted(row.items()):
            sig.extend(pair)
    return blake2b(array("q", sig).tobytes(), digest_size=16).digest()


def _coloring_digest(color_of) -> bytes:
    return blake2b(array("q", color_of).tobytes(), digest_size=16).digest()


# ---------------------------------------------------------------------------
# Distance-profile invariant


def _bfs_distances(neighbors, src, unreachable) -> list[int]:
    dist = [unreachable] * len(neighbors)
    dist[src] = 0
    queue = deque([src])
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for y in neighbors[x]:
            if dist[y] == unreachable:
                dist[y] = dx
                queue.append(y)
    return dist


def _distance_profile_colors(neighbors, color_of, cells) -> list[int]:
    """Sharpen a stalled coloring by distances to the smallest classes.

    Takes whole color classes, smallest first, as BFS sources (up to a
    fixed total) and recolors every vertex by its per-class sorted
    distance tuples.  Pure function of the colored graph, hence safe
    inside canonicalization.
    """
    n = len(neighbors)
    order = sorted(cells, key=lambda c: (len(cells[c]), c))
    chosen = []
    total = 0
    for c in order:
        size = len(cells[c])
        if size >= n or total + size > _PROFILE_MAX_SOURCES:
            continue
        chosen.append(c)
        total += size
    if not chosen:
        return color_of
    chosen.sort()
    unreachable = n + 1
    columns = {
        c: [_bfs_distances(neighbors, s, unreachable) for s in cells[c]] for c in chosen
    }
    keys = []
    for v in range(n):
        profile = tuple(
            tuple(sorted(col[v] for col in columns[c])) for c in chosen
        )
        keys.append((color_of[v], profile))
    rank = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [rank[k] for k in keys]


# ---------------------------------------------------------------------------
# Canonical search


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    max_depth: int = 0
    automorphisms: int = 0
    profile_applied: bool = False


class _CanonSearch:
    def __init__(self, neighbors, node_budget):
        self.adj = [tuple(row) for row in neighbors]
        self.n = len(neighbors)
        self.budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
        self.stats = SearchStats()
        self.best_rank = None
        self.best_vat = None
        self.best_base: tuple[int, ...] = ()
        self.gens: list[tuple[int, ...]] = []
        self.gen_set: set[tuple[int, ...]] = set()
        self.memo: set[tuple[bytes, bytes]] = set()

    def run(self) -> list[int]:
        colors = refine(self.adj, [0] * self.n)
        cells = _group_cells(colors)
        if self.n >= _PROFILE_MIN_VERTICES and max(map(len, cells.values())) > _PROFILE_CELL_TRIGGER:
            sharpened = _distance_profile_colors(self.adj, colors, cells)
            if sharpened is not colors:
                colors = refine(self.adj, sharpened)
                cells = _group_cells(colors)
                self.stats.profile_applied = True
        inv = _partition_invariant(self.adj, colors, cells)
        self._rec(colors, cells, (inv,), ())
        return self.best_vat

    def _target_cell(self, cells):
        best = None
        for c, members in cells.items():
            size = len(members)
            if size > 1 and (best is None or (size, -c) > best):
                best = (size, -c)
        return None if best is None else -best[1]

    def _leaf(self, color_of, inv_seq, base):
        """Record a discrete coloring.

        Returns None, or the depth to backjump to: when this leaf exactly
        reproduces the best one, the two search paths are related by an
        automorphism fixing their common prefix, so every remaining leaf
        below the divergence point is an image of an already-ranked leaf.
        """
        self.stats.leaves += 1
        vat = sorted(range(self.n), key=color_of.__getitem__)
        rank = inv_seq + (b"", self._encode(vat))
        if self.best_rank is None or rank < self.best_rank:
            self.best_rank = rank
            self.best_vat = vat
            self.best_base = base
            return None
        if rank != self.best_rank:
            return None
        g = [0] * self.n
        for p in range(self.n):
            g[self.best_vat[p]] = vat[p]
        gt = tuple(g)
        if (
            any(g[v] != v for v in range(self.n))
            and gt not in self.gen_set
            and len(self.gens) < _MAX_GENERATORS
        ):
            self.gens.append(gt)
            self.gen_set.add(gt)
            self.stats.automorphisms += 1
        divergence = 0
        for a, b in zip(self.best_base, base):
            if a != b:
                break
            divergence += 1
        return divergence

    def _encode(self, vat) -> bytes:
        pos_of = [0] * self.n
        for p, v in enumerate(vat):
            pos_of[v] = p
        chunks = []
        adj = self.adj
        for j in range(1, self.n):
            bits = 0
            for w in adj[vat[j]]:
                p = pos_of[w]
                if p < j:
                    bits |= 1 << p
            chunks.append(bits.to_bytes((j + 7) // 8, "little"))
        return b"".join(chunks)

    def _rec(self, color_of, cells, inv_seq, base):
        depth = len(base)
        if depth > self.stats.max_depth:
            self.stats.max_depth = depth
        target = self._target_cell(cells)
        if target is None:
            return self._leaf(color_of, inv_seq, base)

        explored: list[int] = []
        covered: set[int] = set()
        usable: list[tuple[int, ...]] = []
        gen_version = -1
        best_child_inv = None
        fresh_color = max(color_of) + 1
        for v in sorted(cells[target]):
            if len(self.gens) != gen_version:
                gen_version = len(self.gens)
                usable = [g for g in self.gens if all(g[b] == b for b in base)]
                covered = self._orbit_closure(set(explored), usable)
            if v in covered:
                continue
            self.stats.nodes += 1
            if self.stats.nodes > self.budget:
                raise BudgetExceededError(
                    f"canonicalization exceeded the {self.budget}-node search budget"
                )
            child_colors = list(color_of)
            child_colors[v] = fresh_color
            child_colors = refine(self.adj, child_colors, seeds=(target, fresh_color))
            child_cells = _group_cells(child_colors)
            ci = _partition_invariant(self.adj, child_colors, child_cells)
            if best_child_inv is None or ci < best_child_inv:
                best_child_inv = ci
            elif ci > best_child_inv:
                continue
            explored.append(v)
            covered.add(v)
            key = (
                blake2b(b"".join(inv_seq) + ci, digest_size=16).digest(),
                _coloring_digest(child_colors),
            )
            if key in self.memo:
                continue
            self.memo.add(key)
            jump = self._rec(child_colors, child_cells, inv_seq + (ci,), base + (v,))
            if jump is not None and jump < depth:
                return jump
        return None

    @staticmethod
    def _orbit_closure(seed: set[int], gens) -> set[int]:
        if not gens or not seed:
            return seed
        frontier = list(seed)
        while frontier:
            v = frontier.pop()
            for g in gens:
                w = g[v]
                if w not in seed:
                    seed.add(w)
                    frontier.append(w)
        return seed


def canonical_form(G, node_budget: int | None = None, stats_out: dict | None = None):
    """Canonical vertex order and graph6 text of the relabeled graph.

    Returns (graph6_text, order) where order[p] is the original index of
    the vertex placed at position p.  The text is identical for any
    relabeling of the same graph.
    """
    adj = _adjacency(G)
    n = len(adj)
    if n > MAX_CANON_VERTICES:
        raise ValueError(f"canonicalization capped at {MAX_CANON_VERTICES} vertices, got {n}")
    if n == 0:
        return graph6_from_neighbors([]), []
    search = _CanonSearch(adj, node_budget)
    vat = search.run()
    if stats_out is not None:
        s = search.stats
        stats_out.update(
            nodes=s.nodes,
            leaves=s.leaves,
            max_depth=s.max_depth,
            automorphisms=s.automorphisms,
            profile_applied=s.profile_applied,
        )
    pos_of = [0] * n
    for p, v in enumerate(vat):
        pos_of[v] = p
    canon_adj = [sorted(pos_of[w] for w in adj[v]) for v in vat]
    return graph6_from_neighbors(canon_adj), vat


def canonical_certificate(G, node_budget: int | None = None) -> str:
    """graph6 text of the canonically relabeled graph."""
    return canonical_form(G, node_budget)[0]


# ---------------------------------------------------------------------------
# Fingerprints and isomorphism decisions


@dataclass(frozen=True)
class Fingerprint:
    """Cheap relabeling-invariant summary; inequality certifies non-isomorphism."""

    n: int
    m: int
    degrees: tuple[int, ...]
    eccentricities: tuple[int, ...]
    color_class_sizes: tuple[int, ...]


def fingerprint(G) -> Fingerprint:
    """Invariant fingerprint: order, size, degrees, eccentricities, refinement cells.

    Eccentricity is the largest finite BFS distance from a vertex, so the
    fingerprint stays well-defined on disconnected graphs.
    """
    adj = _adjacency(G)
    n = len(adj)
    degrees = tuple(sorted(len(row) for row in adj))
    unreachable = n + 1
    eccs = []
    for v in range(n):
        dist = _bfs_distances(adj, v, unreachable)
        eccs.append(max(d for d in dist if d != unreachable))
    colors = refine(adj, [0] * n)
    sizes = tuple(sorted(len(cell) for cell in _group_cells(colors).values()))
    return Fingerprint(
        n=n,
        m=sum(degrees) // 2,
        degrees=degrees,
        eccentricities=tuple(sorted(eccs)),
        color_class_sizes=sizes,
    )


def _cheap_invariants(adj):
    degrees = tuple(sorted(len(row) for row in adj))
    colors = refine(adj, [0] * len(adj))
    sizes = tuple(sorted(len(cell) for cell in _group_cells(colors).values()))
    return degrees, sizes


def are_isomorphic(G, H, node_budget: int | None = None):
    """Isomorphism witness from G to H, or None.

    Fast-rejects on invariant mismatch, otherwise decides by canonical
    certificate equality and reads the witness off the two canonical
    orders.  The witness maps vertex labels when the inputs carry them,
    indices otherwise.
    """
    adjG, adjH = _adjacency(G), _adjacency(H)
    if len(adjG) != len(adjH):
        return None
    if _cheap_invariants(adjG) != _cheap_invariants(adjH):
        return None
    if len(adjG) <= 1024 and fingerprint(G) != fingerprint(H):
        return None
    certG, vatG = canonical_form(G, node_budget)
    certH, vatH = canonical_form(H, node_budget)
    if certG != certH:
        return None
    labG, labH = _labels(G), _labels(H)
    pos_of = [0] * len(adjG)
    for p, v in enumerate(vatG):
        pos_of[v] = p
    mapping = {labG[v]: labH[vatH[pos_of[v]]] for v in range(len(adjG))}
    if not verify_mapping(G, H, mapping):
        raise RuntimeError("internal error: certificate match produced an invalid witness")
    return mapping


def _as_func(m):
    if callable(m):
        return m
    if hasattr(m, "apply"):
        return m.apply
    return m.__getitem__


def verify_mapping(G, H, m) -> bool:
    """True iff `m` is an edge-preserving bijection from V(G) onto V(H)."""
    adjG, adjH = _adjacency(G), _adjacency(H)
    labG, labH = _labels(G), _labels(H)
    if len(adjG) != len(adjH):
        return False
    func = _as_func(m)
    idxH = {lab: i for i, lab in enumerate(labH)}
    try:
        image = [idxH[func(lab)] for lab in labG]
    except (KeyError, ValueError, IndexError):
        return False
    if len(set(image)) != len(adjH):
        return False
    setsH = [set(row) for row in adjH]
    edges = 0
    for u, row in enumerate(adjG):
        mu = image[u]
        for w in row:
            if w > u:
                edges += 1
                if image[w] not in setsH[mu]:
                    return False
    return edges == sum(len(r) for r in adjH) // 2
