import random

import pytest

from fibcube import counting, words


def test_automaton_shape():
    a = counting.build_automaton("11")
    assert len(a.step) == 3
    assert a.step[1][1] == 2  # state 1 reading '1' hits the absorbing state
    assert a.step[2] == (2, 2)
    assert len(counting.build_automaton("0").step) == 2


def test_automaton_agrees_with_substring_scan():
    rng = random.Random(11)
    for _ in range(400):
        f = "".join(rng.choice("01") for _ in range(rng.randint(1, 6)))
        w = "".join(rng.choice("01") for _ in range(rng.randint(0, 16)))
        a = counting.build_automaton(f)
        assert counting.automaton_accepts(a, w) == words.contains_factor(w, f), (f, w)


def test_count_avoiders_small():
    assert counting.count_avoiders(3, "11") == 5
    assert counting.count_avoiders(4, "0110") == 15
    assert counting.count_avoiders(0, "1") == 1


def test_count_avoiders_factor_longer_than_word():
    for d in range(0, 8):
        assert counting.count_avoiders(d, "0" * (d + 1)) == 2**d
        assert counting.count_avoiders(d, "01" * (d + 1)) == 2**d


def test_fibonacci_recurrence():
    n = {1: 2, 2: 3}
    for d in range(3, 21):
        n[d] = n[d - 1] + n[d - 2]
    for d in range(1, 21):
        assert counting.count_avoiders(d, "11") == n[d]
    assert counting.count_avoiders(20, "11") == 17711


def test_brute_count():
    assert counting.brute_count(3, "11") == 5
    assert counting.brute_count(4, "0110") == 15
    assert counting.brute_count(0, "0110") == 1
    with pytest.raises(ValueError):
        counting.brute_count(25, "11")
    with pytest.raises(ValueError):
        counting.count_avoiders(63, "11")


def test_oracle_equivalence_sample():
    # the exhaustive |f| <= 6, d <= 14 sweep lives in the acceptance suite
    for f in ("0", "01", "010", "0011", "00101", "011010"):
        for d in range(0, 11):
            assert counting.count_avoiders(d, f) == counting.brute_count(d, f)


def test_symmetry_of_counts():
    for f in ("01", "001", "0011", "01101"):
        rf = words.reverse(f)
        cf = words.complement(f)
        for d in range(1, 12):
            n = counting.count_avoiders(d, f)
            assert counting.count_avoiders(d, rf) == n
            assert counting.count_avoiders(d, cf) == n


def test_equal_correlation_implies_equal_counts():
    # counts depend on the factor only through its correlation polynomial
    for k in range(1, 9):
        by_corr = {}
        for f in words.all_words(k):
            by_corr.setdefault(words.autocorrelation(f), []).append(f)
        for coeffs, group in by_corr.items():
            if len(group) < 2:
                continue
            for d in range(k, 17, 3):
                baseline = counting.count_avoiders(d, group[0])
                assert all(counting.count_avoiders(d, f) == baseline for f in group[1:])


def test_correlation_dominance_orders_counts():
    # coordinatewise-larger correlation vectors never give fewer avoiders
    for k in range(1, 7):
        lst = [(words.autocorrelation(f), f) for f in words.all_words(k)]
        for d in range(k, 15, 2):
            counts = {f: counting.count_avoiders(d, f) for _, f in lst}
            for c1, f1 in lst:
                for c2, f2 in lst:
                    if c1 != c2 and all(a >= b for a, b in zip(c1, c2)):
                        assert counts[f1] >= counts[f2], (f1, f2, d)


def test_extreme_factors_dominate_coordinatewise():
    # 0^k and 0^{k-1}1 bound every same-length correlation vector, which is
    # what the sandwich chain actually relies on
    for k in range(1, 9):
        top = words.autocorrelation("0" * k)
        bot = words.autocorrelation("0" * (k - 1) + "1")
        for f in words.all_words(k):
            c = words.autocorrelation(f)
            assert all(a >= b for a, b in zip(top, c))
            assert all(a >= b for a, b in zip(c, bot))


def test_value_at_two_alone_does_not_order_counts():
    # known counterexample: comparing only the correlation values at z=2 is
    # not a sound ordering hypothesis, incomparable vectors can cross over
    p1 = words.poly_value(words.autocorrelation("0010"))
    p2 = words.poly_value(words.autocorrelation("0101"))
    assert p1 == 9 and p2 == 5
    assert counting.count_avoiders(6, "0010") == 52
    assert counting.count_avoiders(6, "0101") == 53


def test_count_chain():
    assert counting.verify_count_chain(6, 3)
    assert counting.verify_count_chain(3, 3)
    assert counting.verify_count_chain(12, 5)
    with pytest.raises(ValueError):
        counting.verify_count_chain(3, 4)


def test_cross_length_chain():
    # n_d(f) <= n_d(0^k) < n_d(0^k 1) <= n_d(f') for |f| = k < |f'|
    d = 10
    for k in range(1, d):
        hi = counting.count_avoiders(d, "0" * k)
        bump = counting.count_avoiders(d, "0" * k + "1")
        assert hi < bump
        for f in words.all_words(k):
            assert counting.count_avoiders(d, f) <= hi
        for g in words.all_words(k + 1):
            assert bump <= counting.count_avoiders(d, g)
