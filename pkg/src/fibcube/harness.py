"""Exhaustive classification of forbidden factors by graph certificate.

For a dimension d and a range of factor lengths, build the avoidance
graph of every orbit-representative factor, canonicalize it, and bucket
the factors by certificate.  Multi-member buckets are exactly the
non-trivial isomorphic families; the three conjecture checkers interrogate
them for dimension stability, the length bound, and block-count equality.

Work items (build + canonicalize one factor) are independent, so the
classifier can fan out over a process pool; results are merged and sorted
for a deterministic table.  An optional append-only JSON-lines log makes
long classification runs resumable.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cube import build_graph
from .iso import canonical_certificate, refine
from .words import bit_change_count, representatives

MAX_CLASSIFY_DIMENSION = 11
DEFAULT_TIME_BUDGET_S = 1800.0

CONJECTURE_DIM_MINUS_1 = "dim_minus_1"
CONJECTURE_TWO_THIRDS = "two_thirds"
CONJECTURE_BLOCKS = "blocks"


class TimeBudgetExceededError(RuntimeError):
    """Raised when a classification run exhausts its wall-clock budget."""


class MixedLengthClassError(RuntimeError):
    """A certificate class mixed factors of different lengths."""

    def __init__(self, members):
        super().__init__(f"certificate class mixes factor lengths: {members}")
        self.members = members


@dataclass
class IsoClassTable:
    """Certificate -> sorted factor representatives, for one dimension."""

    d: int
    k_min: int
    k_max: int
    classes: dict[str, list[str]]

    @property
    def total_words(self) -> int:
        return sum(len(v) for v in self.classes.values())


@dataclass
class ConjectureReport:
    conjecture: str
    d: int
    verdict: bool | None
    counterexample: tuple | None = None
    wall_time_s: float = 0.0
    budget_exceeded: bool = False
    classes_tested: int = 0
    pairs_tested: int = 0
    notes: dict = field(default_factory=dict)


def _certificate_for(d: int, f: str, node_budget):
    return canonical_certificate(build_graph(d, f), node_budget)


def _pool_worker(item):
    d, f, node_budget = item
    return f, _certificate_for(d, f, node_budget)


def _load_log(log_path: str, d: int) -> dict[str, str]:
    known: dict[str, str] = {}
    if log_path and os.path.exists(log_path):
        with open(log_path, encoding="ascii") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                if rec["d"] == d:
                    known[rec["f"]] = rec["certificate"]
    return known


def isom_classes(
    d: int,
    k_min: int = 3,
    k_max: int | None = None,
    jobs: int = 1,
    node_budget: int | None = None,
    cert_cache: dict | None = None,
    log_path: str | None = None,
    deadline: float | None = None,
) -> IsoClassTable:
    """Classify representative factors of lengths [k_min, k_max] at dimension d.

    The default range is [3, d-1]; it may be empty.  `cert_cache` maps
    (d, f) to a certificate and is consulted and filled.  `deadline` is a
    time.monotonic() timestamp; crossing it raises TimeBudgetExceededError.
    """
    if not 2 <= d <= MAX_CLASSIFY_DIMENSION:
        raise ValueError(f"need 2 <= d <= {MAX_CLASSIFY_DIMENSION}, got {d}")
    if k_max is None:
        k_max = d - 1
    if k_min < 1 or k_max > d:
        raise ValueError(f"factor lengths must lie in [1, {d}], got [{k_min}, {k_max}]")
    if cert_cache is None:
        cert_cache = {}
    if log_path:
        cert_cache.update({(d, f): c for f, c in _load_log(log_path, d).items()})

    todo = []
    items = []
    for k in range(k_min, k_max + 1):
        for f in representatives(k):
            items.append(f)
            if (d, f) not in cert_cache:
                todo.append(f)

    fresh: list[tuple[str, str]] = []
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for f, cert in pool.map(_pool_worker, [(d, f, node_budget) for f in todo]):
                fresh.append((f, cert))
                if deadline is not None and time.monotonic() > deadline:
                    raise TimeBudgetExceededError(f"classification at d={d} ran out of time")
    else:
        for f in todo:
            if deadline is not None and time.monotonic() > deadline:
                raise TimeBudgetExceededError(f"classification at d={d} ran out of time")
            fresh.append((f, _certificate_for(d, f, node_budget)))

    log_fh = open(log_path, "a", encoding="ascii") if log_path else None
    try:
        for f, cert in fresh:
            cert_cache[(d, f)] = cert
            if log_fh:
                log_fh.write(json.dumps({"d": d, "k": len(f), "f": f, "certificate": cert}) + "\n")
    finally:
        if log_fh:
            log_fh.close()

    classes: dict[str, list[str]] = {}
    for f in items:
        classes.setdefault(cert_cache[(d, f)], []).append(f)
    for cert in classes:
        classes[cert].sort()
        if len({len(w) for w in classes[cert]}) > 1:
            raise MixedLengthClassError(classes[cert])
    return IsoClassTable(d=d, k_min=k_min, k_max=k_max, classes=classes)


def nontrivial_pairs(table: IsoClassTable) -> list[tuple[str, str]]:
    """All unordered factor pairs sharing a certificate class."""
    pairs = []
    for members in table.classes.values():
        for i, f in enumerate(members):
            for g in members[i + 1 :]:
                pairs.append((f, g))
    pairs.sort()
    return pairs


def pairwise_isomorphism_search(adjG, adjH, step_limit: int = 10**7):
    """Slow independent isomorphism decision by refinement-guided backtracking.

    Used to re-verify would-be counterexamples so that a canonicalization
    bug cannot produce a false alarm.  Returns a vertex-index mapping or
    None; raises on step exhaustion.
    """
    n = len(adjG)
    if n != len(adjH):
        return None
    colorsG = refine(adjG, [0] * n)
    colorsH = refine(adjH, [0] * n)
    cellsG: dict[int, list[int]] = {}
    cellsH: dict[int, list[int]] = {}
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
    steps = 0

    def bt(i: int) -> bool:
        nonlocal steps
        if i == n:
            return True
        v = order[i]
        for w in cellsH[colorsG[v]]:
            if used[w] or len(adjG[v]) != len(adjH[w]):
                continue
            steps += 1
            if steps > step_limit:
                raise TimeBudgetExceededError("pairwise isomorphism search exhausted its step limit")
            ok = True
            for x in adjG[v]:
                mx = mapping[x]
                if mx >= 0 and mx not in setsH[w]:
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if bt(i + 1):
                    return True
                mapping[v] = -1
                used[w] = False
        return False

    return mapping if bt(0) else None


def _pairwise_says_isomorphic(d: int, f: str, g: str) -> bool:
    """Independent slow-path isomorphism decision for counterexample vetting."""
    G = build_graph(d, f)
    H = build_graph(d, g)
    return pairwise_isomorphism_search(G.neighbors, H.neighbors) is not None


def check_conjecture_dim_minus_1(
    d: int,
    table: IsoClassTable | None = None,
    jobs: int = 1,
    node_budget: int | None = None,
    cert_cache: dict | None = None,
    time_budget_s: float = DEFAULT_TIME_BUDGET_S,
) -> ConjectureReport:
    """Factors isomorphic at dimension d must stay isomorphic at d-1."""
    if not 3 <= d <= MAX_CLASSIFY_DIMENSION:
        raise ValueError(f"need 3 <= d <= {MAX_CLASSIFY_DIMENSION}")
    t0 = time.monotonic()
    deadline = t0 + time_budget_s
    cert_cache = {} if cert_cache is None else cert_cache
    report = ConjectureReport(conjecture=CONJECTURE_DIM_MINUS_1, d=d, verdict=None)
    try:
        if table is None:
            table = isom_classes(
                d, jobs=jobs, node_budget=node_budget, cert_cache=cert_cache, deadline=deadline
            )
        pairs = nontrivial_pairs(table)
        report.classes_tested = len(table.classes)
        verdict = True
        for f, g in pairs:
            if time.monotonic() > deadline:
                raise TimeBudgetExceededError("conjecture check ran out of time")
            report.pairs_tested += 1
            for w in (f, g):
                if (d - 1, w) not in cert_cache:
                    cert_cache[(d - 1, w)] = _certificate_for(d - 1, w, node_budget)
            if cert_cache[(d - 1, f)] != cert_cache[(d - 1, g)]:
                if _pairwise_says_isomorphic(d - 1, f, g):
                    raise RuntimeError(
                        f"certificates disagree with pairwise search on ({f}, {g}) at d={d - 1}"
                    )
                verdict = False
                report.counterexample = (f, g, d - 1)
                break
        report.verdict = verdict
    except TimeBudgetExceededError:
        report.budget_exceeded = True
    report.wall_time_s = time.monotonic() - t0
    return report


def check_conjecture_two_thirds(
    d: int,
    table: IsoClassTable | None = None,
    jobs: int = 1,
    node_budget: int | None = None,
    cert_cache: dict | None = None,
    time_budget_s: float = DEFAULT_TIME_BUDGET_S,
) -> ConjectureReport:
    """Non-trivially isomorphic factors must satisfy 3|f| >= 2(d+1)."""
    if not 3 <= d <= MAX_CLASSIFY_DIMENSION:
        raise ValueError(f"need 3 <= d <= {MAX_CLASSIFY_DIMENSION}")
    t0 = time.monotonic()
    deadline = t0 + time_budget_s
    report = ConjectureReport(conjecture=CONJECTURE_TWO_THIRDS, d=d, verdict=None)
    try:
        if table is None:
            table = isom_classes(
                d, jobs=jobs, node_budget=node_budget, cert_cache=cert_cache, deadline=deadline
            )
        report.classes_tested = len(table.classes)
        verdict = True
        for members in table.classes.values():
            if len(members) < 2:
                continue
            report.pairs_tested += 1
            if 3 * len(members[0]) < 2 * (d + 1):
                verdict = False
                report.counterexample = (members[0], members[1], d)
                break
        report.verdict = verdict
    except TimeBudgetExceededError:
        report.budget_exceeded = True
    report.wall_time_s = time.monotonic() - t0
    return report


def check_conjecture_blocks(
    d: int,
    table: IsoClassTable | None = None,
    jobs: int = 1,
    node_budget: int | None = None,
    cert_cache: dict | None = None,
    time_budget_s: float = DEFAULT_TIME_BUDGET_S,
) -> ConjectureReport:
    """Factors sharing a certificate class must have equal bit-change counts."""
    if not 3 <= d <= MAX_CLASSIFY_DIMENSION:
        raise ValueError(f"need 3 <= d <= {MAX_CLASSIFY_DIMENSION}")
    t0 = time.monotonic()
    deadline = t0 + time_budget_s
    report = ConjectureReport(conjecture=CONJECTURE_BLOCKS, d=d, verdict=None)
    try:
        if table is None:
            table = isom_classes(
                d, jobs=jobs, node_budget=node_budget, cert_cache=cert_cache, deadline=deadline
            )
        report.classes_tested = len(table.classes)
        verdict = True
        for members in table.classes.values():
            if len(members) < 2:
                continue
            counts = {bit_change_count(w): w for w in members}
            report.pairs_tested += 1
            if len(counts) > 1:
                (_, f), (_, g) = sorted(counts.items())[:2]
                if not _pairwise_says_isomorphic(d, f, g):
                    raise RuntimeError(
                        f"class {members} mixes block counts but members are non-isomorphic"
                    )
                verdict = False
                report.counterexample = (f, g, d)
                break
        report.verdict = verdict
    except TimeBudgetExceededError:
        report.budget_exceeded = True
    report.wall_time_s = time.monotonic() - t0
    return report
