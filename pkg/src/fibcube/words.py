"""Binary words and their combinatorial invariants.

A word is a plain Python string over the alphabet {'0', '1'}, 1-indexed in
all position-bearing APIs (`bit_change_indices`, `flip_bit` in the cube
module).  Words double as forbidden factors and as vertex labels of
hypercubes, so the length cap is 32: more than enough headroom for every
graph this library can build.
"""

from __future__ import annotations

MAX_WORD_LENGTH = 32

_FLIP = str.maketrans("01", "10")


def check_word(w: str) -> str:
    """Validate a binary word and return it unchanged."""
    if not isinstance(w, str) or not w:
        raise ValueError("word must be a non-empty string of 0s and 1s")
    if len(w) > MAX_WORD_LENGTH:
        raise ValueError(f"word longer than {MAX_WORD_LENGTH} bits: {len(w)}")
    if w.strip("01"):
        raise ValueError(f"word contains characters other than 0/1: {w!r}")
    return w


def complement(w: str) -> str:
    """Flip every bit.  An involution."""
    return w.translate(_FLIP)


def reverse(w: str) -> str:
    """Reverse the bit order.  An involution."""
    return w[::-1]


def orbit(w: str) -> set[str]:
    """Closure of `w` under reversal and complementation (the trivial variants)."""
    r = reverse(w)
    return {w, r, complement(w), complement(r)}


def canonical_rep(w: str) -> str:
    """Lexicographically least trivial variant of `w`.  Idempotent."""
    return min(orbit(w))


def is_trivial_pair(f: str, g: str) -> bool:
    """True iff `g` is a trivial variant of `f` (reversal, complement, or both)."""
    return g in orbit(f)


def bit_change_count(w: str) -> int:
    """Number of positions whose bit differs from its predecessor.

    Equals the number of maximal constant runs minus one.
    """
    return sum(1 for a, b in zip(w, w[1:]) if a != b)


def bit_change_indices(w: str) -> list[int]:
    """Ascending 1-based positions t >= 2 with w[t-1] != w[t]."""
    return [t for t in range(2, len(w) + 1) if w[t - 2] != w[t - 1]]


def autocorrelation(w: str) -> tuple[int, ...]:
    """Coefficients (c_0, ..., c_{k-1}) of the correlation polynomial of `w`.

    c_i is 1 exactly when the length-(k-i) suffix of `w` equals its
    length-(k-i) prefix; c_0 is always 1.
    """
    k = len(w)
    return tuple(1 if w[i:] == w[: k - i] else 0 for i in range(k))


def poly_value(coeffs: tuple[int, ...], z: int = 2) -> int:
    """Evaluate sum(c_i * z**i) at an integer point (default z=2)."""
    return sum(c * z**i for i, c in enumerate(coeffs))


def is_prime_word(w: str) -> bool:
    """True iff no proper suffix of `w` equals the prefix of the same length."""
    return not any(autocorrelation(w)[1:])


def representatives(k: int) -> list[str]:
    """All length-k words that are the canonical representative of their orbit.

    One word per orbit under {identity, reverse, complement, both}, sorted
    lexicographically.  Enumerates all 2**k strings, so keep k modest.
    """
    if not 1 <= k <= MAX_WORD_LENGTH:
        raise ValueError(f"k must be in [1, {MAX_WORD_LENGTH}], got {k}")
    fmt = f"0{k}b"
    return [w for v in range(1 << k) if (w := format(v, fmt)) == canonical_rep(w)]


def contains_factor(w: str, f: str) -> bool:
    """True iff `f` occurs in `w` as a contiguous substring."""
    return f in w


def all_words(k: int):
    """Yield all 2**k words of length k in lexicographic order."""
    if k == 0:
        yield ""
        return
    fmt = f"0{k}b"
    for v in range(1 << k):
        yield format(v, fmt)
