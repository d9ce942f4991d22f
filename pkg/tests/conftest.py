import random

import pytest

from fibcube.iso import refine


def relabel(adj, rng: random.Random):
    """Random vertex relabeling of an adjacency list."""
    n = len(adj)
    perm = list(range(n))
    rng.shuffle(perm)
    out = [None] * n
    for v in range(n):
        out[perm[v]] = tuple(sorted(perm[w] for w in adj[v]))
    return out


def brute_isomorphism(adjG, adjH):
    """Independent oracle: backtracking over refinement-compatible bijections."""
    n = len(adjG)
    if n != len(adjH):
        return None
    colorsG = refine(adjG, [0] * n)
    colorsH = refine(adjH, [0] * n)
    cellsG, cellsH = {}, {}
    for v, c in enumerate(colorsG):
        cellsG.setdefault(c, []).append(v)
    for v, c in enumerate(colorsH):
        cellsH.setdefault(c, []).append(v)
    if sorted(cellsG) != sorted(cellsH):
        return None
    if any(len(cellsG[c]) != len(cellsH[c]) for c in cellsG):
        return None
    setsH = [set(row) for row in adjH]
    order = sorted(range(n), key=lambda v: (len(cellsG[colorsG[v]]), colorsG[v], v))
    mapping = [-1] * n
    used = [False] * n

    def bt(i):
        if i == n:
            return True
        v = order[i]
        for w in cellsH[colorsG[v]]:
            if used[w] or len(adjG[v]) != len(adjH[w]):
                continue
            if any(mapping[x] >= 0 and mapping[x] not in setsH[w] for x in adjG[v]):
                continue
            mapping[v] = w
            used[w] = True
            if bt(i + 1):
                return True
            mapping[v] = -1
            used[w] = False
        return False

    return mapping if bt(0) else None


@pytest.fixture(scope="session")
def cert_cache():
    """Session-wide certificate cache keyed by (d, factor)."""
    return {}
