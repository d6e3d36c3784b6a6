"""Pattern avoidance and smoothness against a naive wide-window search.

The implementation's windowed pattern scan is checked against an
exhaustive search over a deliberately wider window, and the avoider
counts are pinned both for finite symmetric groups and for the affine
enumeration.  Twisted spirals get their own battery: recognized, never
smooth, always rationally smooth.
"""

import random
from itertools import permutations

import pytest

from oracles import ball, naive_contains
from schubsmooth.affine import (
    coset_decompose,
    from_window,
    from_word,
    identity,
    longest_element,
    longest_length,
    poincare_polynomial,
)
from schubsmooth.errors import BudgetExceeded
from schubsmooth.smoothness import (
    PATTERN_3412,
    PATTERN_4231,
    SpiralSpec,
    contains_pattern,
    enumerate_smooth,
    is_rationally_smooth,
    is_smooth,
    is_twisted_spiral,
    pattern_occurrence,
    smooth_count,
    spiral,
    spiral_word,
    twisted_spiral,
)

# counts of elements of the finite symmetric group S_k avoiding both
# 3412 and 4231, k = 2..6 (the classical smooth-permutation counts)
FINITE_AVOIDERS = (2, 6, 22, 88, 366)


def test_pattern_argument_validation():
    w = identity(3)
    with pytest.raises(ValueError):
        contains_pattern(w, (1, 3, 2, 2))
    with pytest.raises(ValueError):
        contains_pattern(w, ())
    with pytest.raises(ValueError):
        contains_pattern(w, (1, 2, 4, 3))  # first value not above last


def test_containment_matches_wide_window_oracle():
    elements = set(ball(2, 8) | ball(3, 6))
    rng = random.Random(11)
    for n in (4, 5):
        for _ in range(20):
            word = [rng.randrange(n) for _ in range(rng.randrange(11))]
            elements.add(from_word(n, word))
    for w in elements:
        for p in (PATTERN_3412, PATTERN_4231):
            assert contains_pattern(w, p) == naive_contains(w, p), (w.window, p)


def test_occurrences_are_witnesses():
    for w in ball(3, 6):
        for p in (PATTERN_3412, PATTERN_4231):
            pos = pattern_occurrence(w, p)
            if pos is None:
                continue
            assert len(pos) == 4 and 1 <= pos[0] <= w.n
            assert all(a < b for a, b in zip(pos, pos[1:]))
            vals = [w.apply(i) for i in pos]
            shifted = [w.apply(i + w.n) for i in pos]
            for a in range(4):
                for b in range(a + 1, 4):
                    assert (vals[a] < vals[b]) == (p[a] < p[b])
                    # occurrences translate by the period
                    assert (shifted[a] < shifted[b]) == (p[a] < p[b])


def test_finite_symmetric_group_counts():
    for k, expected in zip(range(2, 7), FINITE_AVOIDERS):
        count = sum(1 for p in permutations(range(1, k + 1)) if is_smooth(from_window(k, p)))
        assert count == expected


def test_smooth_frozen_examples():
    assert is_smooth(identity(4))
    assert not is_smooth(from_window(4, (3, 4, 1, 2)))
    assert not is_smooth(from_window(4, (4, 2, 3, 1)))
    assert contains_pattern(from_window(4, (3, 4, 1, 2)), PATTERN_3412)
    assert contains_pattern(from_window(4, (4, 2, 3, 1)), PATTERN_4231)
    assert not is_smooth(from_word(2, [1, 0, 1]))
    assert is_smooth(longest_element(4, {1, 2}))


def test_avoidance_is_inverse_symmetric():
    for w in ball(3, 6) | enumerate_smooth(2):
        assert is_smooth(w) == is_smooth(w.inverse())


def test_parabolic_right_factor_of_smooth_is_smooth():
    for w in enumerate_smooth(3):
        for K in ({0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}):
            _, u = coset_decompose(w, K)
            assert is_smooth(u)


def test_enumerate_smooth_small_periods():
    two = enumerate_smooth(2)
    assert sorted(w.window for w in two) == [(-1, 4), (0, 3), (1, 2), (2, 1), (3, 0)]
    assert sorted(w.length for w in two) == [0, 1, 1, 2, 2]
    assert smooth_count(2) == 5
    assert smooth_count(3) == 31
    for n in (2, 3):
        found = enumerate_smooth(n)
        assert identity(n) in found
        assert {w.inverse() for w in found} == set(found)
        for w in found:
            assert is_rationally_smooth(w)
            assert not is_twisted_spiral(w)


def test_enumerate_smooth_budgets():
    with pytest.raises(ValueError):
        enumerate_smooth(1)
    with pytest.raises(BudgetExceeded):
        enumerate_smooth(2, max_length=3)
    with pytest.raises(BudgetExceeded):
        enumerate_smooth(3, budget_seconds=1e-9)


# ----------------------------------------------------------------------
# spirals


def test_spiral_words_are_reduced():
    assert spiral(SpiralSpec(0, 2, "x"), 3).reduced_word == (0, 2, 1, 0)
    for n in (2, 3, 4):
        for k in (2, 3):
            for i in range(n):
                for d in ("x", "y"):
                    spec = SpiralSpec(i, k, d)
                    word = spiral_word(spec, n)
                    assert len(word) == k * (n - 1)
                    assert spiral(spec, n).length == k * (n - 1)


def test_spiral_spec_validation():
    with pytest.raises(ValueError):
        SpiralSpec(0, 1, "x")
    with pytest.raises(ValueError):
        SpiralSpec(0, 2, "up")
    with pytest.raises(ValueError):
        spiral(SpiralSpec(5, 2, "x"), 3)


def test_twisted_spirals_recognized_never_smooth():
    for n in (2, 3, 4):
        others_len = {i: longest_length(n, frozenset(range(n)) - {i}) for i in range(n)}
        for k in (2, 3):
            for i in range(n):
                for d in ("x", "y"):
                    w = twisted_spiral(SpiralSpec(i, k, d), n)
                    assert w.length == k * (n - 1) + others_len[i]
                    assert is_twisted_spiral(w)
                    assert not is_smooth(w)
                    assert is_rationally_smooth(w)


def test_twisted_spiral_poincare_is_palindromic():
    w = twisted_spiral(SpiralSpec(0, 2, "x"), 3)
    assert w.length == 7
    p = poincare_polynomial(w)
    assert p.is_palindromic()
    assert p.degree == 7


def test_twisted_spiral_rejects_others():
    assert not is_twisted_spiral(identity(3))
    assert not is_twisted_spiral(longest_element(3, {1, 2}))
    assert not is_twisted_spiral(spiral(SpiralSpec(0, 2, "x"), 3))
    for w in enumerate_smooth(3):
        assert not is_twisted_spiral(w)
