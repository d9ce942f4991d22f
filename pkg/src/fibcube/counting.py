"""Counting binary strings that avoid a forbidden factor.

The workhorse is a factor-matching automaton built from the pattern's
failure function: state s is the length of the longest suffix of the text
read so far that is a prefix of the pattern, with one extra absorbing
state once the pattern has occurred.  Counting avoiders of length d is a
dynamic program over the non-absorbing states, O(d * |f|) time and exact
integer arithmetic throughout.

A brute-force oracle (enumerate all 2**d strings, substring-test each) is
kept alongside for cross-checking at small d.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import all_words, check_word, contains_factor

MAX_COUNT_DIMENSION = 62
MAX_BRUTE_DIMENSION = 24


@dataclass(frozen=True)
class FactorAutomaton:
    """Deterministic automaton accepting exactly the strings containing `pattern`.

    `step[s]` is the pair (next state on '0', next state on '1'); the
    absorbing state equals len(pattern) and loops to itself.
    """

    pattern: str
    step: tuple[tuple[int, int], ...]

    @property
    def found(self) -> int:
        return len(self.pattern)


def build_automaton(f: str) -> FactorAutomaton:
    """Build the factor automaton for pattern `f` via its failure function."""
    check_word(f)
    k = len(f)
    # border[i] = length of the longest proper border of f[:i+1]
    border = [0] * k
    j = 0
    for i in range(1, k):
        while j and f[i] != f[j]:
            j = border[j - 1]
        if f[i] == f[j]:
            j += 1
        border[i] = j

    step = []
    for s in range(k):
        row = []
        for bit in "01":
            if f[s] == bit:
                row.append(s + 1)
            elif s == 0:
                row.append(0)
            else:
                row.append(step[border[s - 1]][int(bit)])
        step.append(tuple(row))
    step.append((k, k))
    return FactorAutomaton(pattern=f, step=tuple(step))


def automaton_accepts(a: FactorAutomaton, w: str) -> bool:
    """Run `w` through the automaton; True iff the pattern occurred."""
    s = 0
    found = a.found
    for ch in w:
        s = a.step[s][ch == "1"]
        if s == found:
            return True
    return False


def count_avoiders(d: int, f: str) -> int:
    """Number of length-d binary strings with no occurrence of `f`."""
    if not 0 <= d <= MAX_COUNT_DIMENSION:
        raise ValueError(f"d must be in [0, {MAX_COUNT_DIMENSION}], got {d}")
    a = build_automaton(f)
    k = a.found
    counts = [0] * k
    counts[0] = 1
    for _ in range(d):
        nxt = [0] * k
        for s, c in enumerate(counts):
            if not c:
                continue
            for bit in (0, 1):
                t = a.step[s][bit]
                if t < k:
                    nxt[t] += c
        counts = nxt
    return sum(counts)


def brute_count(d: int, f: str) -> int:
    """Oracle for count_avoiders: enumerate all 2**d strings and filter."""
    if not 0 <= d <= MAX_BRUTE_DIMENSION:
        raise ValueError(f"brute enumeration capped at d <= {MAX_BRUTE_DIMENSION}, got {d}")
    check_word(f)
    return sum(1 for w in all_words(d) if not contains_factor(w, f))


def verify_count_chain(d: int, k: int) -> bool:
    """Check the avoidance-count sandwich for every length-k pattern.

    For each f of length k:  n_d(0^{k-1}1) <= n_d(f) <= n_d(0^k),
    and strictly  n_d(0^k) < n_d(0^k 1)  whenever k + 1 <= d.
    """
    if not 1 <= k <= d:
        raise ValueError("need 1 <= k <= d")
    lo = count_avoiders(d, "0" * (k - 1) + "1")
    hi = count_avoiders(d, "0" * k)
    for f in all_words(k):
        n = count_avoiders(d, f)
        if not lo <= n <= hi:
            return False
    if k + 1 <= d and not hi < count_avoiders(d, "0" * k + "1"):
        return False
    return True
