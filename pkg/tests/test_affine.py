"""Window arithmetic against first-principles oracles.

Length is checked by counting inversions directly, multiplication by
composing window evaluations, and Bruhat order against the exhaustive
set of subword products.  The remaining tests pin down descents, reduced
words, parabolic data, and Poincare polynomials.
"""

import itertools
import random

import pytest

from oracles import ball, length_by_inversions, subword_lower_set
from schubsmooth.affine import (
    AffinePermutation,
    bruhat_leq,
    bruhat_lower_interval,
    coset_decompose,
    coset_decompose_left,
    from_window,
    from_word,
    identity,
    longest_element,
    longest_length,
    poincare_polynomial,
    simple_reflection,
)
from schubsmooth.errors import CapExceeded
from schubsmooth.poly import Polynomial


def random_elements(n, count, max_letters, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        word = [rng.randrange(n) for _ in range(rng.randrange(max_letters + 1))]
        out.append(from_word(n, word))
    return out


# ----------------------------------------------------------------------
# construction and evaluation


def test_window_validation():
    with pytest.raises(ValueError):
        AffinePermutation(1, (1,))
    with pytest.raises(ValueError):
        AffinePermutation(3, (1, 2))
    with pytest.raises(ValueError):
        AffinePermutation(3, (1, 4, 1))  # residues 1, 1, 1
    with pytest.raises(ValueError):
        AffinePermutation(3, (2, 3, 4))  # wrong sum
    assert from_window(3, [0, 2, 4]).window == (0, 2, 4)


def test_apply_is_periodic():
    w = from_word(4, [0, 3, 2, 1, 0])
    for i in range(-5, 10):
        assert w.apply(i + 4) == w.apply(i) + 4
    assert tuple(w.apply(i) for i in range(1, 5)) == w.window


def test_multiplication_composes_evaluations():
    for a, b in zip(random_elements(4, 25, 10, seed=1), random_elements(4, 25, 10, seed=2)):
        prod = a * b
        for i in range(-3, 9):
            assert prod.apply(i) == a.apply(b.apply(i))
    with pytest.raises(ValueError):
        identity(2) * identity(3)


def test_identity_and_inverse():
    for w in random_elements(3, 30, 10, seed=3):
        assert w * w.inverse() == identity(3)
        assert w.inverse() * w == identity(3)
        assert w.inverse().inverse() == w
    for a, b in zip(random_elements(5, 10, 8, seed=4), random_elements(5, 10, 8, seed=5)):
        assert (a * b).inverse() == b.inverse() * a.inverse()


def test_products_keep_windows_valid():
    # residue-distinctness and the fixed window sum survive arithmetic
    for w in random_elements(4, 20, 12, seed=6):
        for v in (w, w.inverse(), w * w):
            assert sorted(x % 4 for x in v.window) == [0, 1, 2, 3]
            assert sum(v.window) == 10


# ----------------------------------------------------------------------
# length, descents, words


def test_length_counts_inversions():
    for w in ball(2, 8) | ball(3, 6):
        assert w.length == length_by_inversions(w)
    for n in (4, 5):
        for w in random_elements(n, 25, 10, seed=n):
            assert w.length == length_by_inversions(w)
    assert identity(5).length == 0


def test_length_and_support_respect_inverse():
    for w in ball(3, 6):
        assert w.length == w.inverse().length
        assert w.support == w.inverse().support
        assert w.left_descents == w.inverse().right_descents


def test_descents_predict_length_change():
    for w in ball(3, 5) | ball(2, 7):
        n = w.n
        for i in range(n):
            right = w.times_s(i)
            assert abs(right.length - w.length) == 1
            assert (right.length < w.length) == (i in w.right_descents)
            left = w.s_times(i)
            assert abs(left.length - w.length) == 1
            assert (left.length < w.length) == (i in w.left_descents)


def test_from_word_is_a_homomorphism():
    rng = random.Random(7)
    for _ in range(25):
        u = [rng.randrange(4) for _ in range(rng.randrange(8))]
        v = [rng.randrange(4) for _ in range(rng.randrange(8))]
        assert from_word(4, u + v) == from_word(4, u) * from_word(4, v)
    assert simple_reflection(3, 0) == from_word(3, [0])


def test_reduced_word_reproduces_element():
    for w in ball(3, 6):
        word = w.reduced_word
        assert len(word) == w.length
        assert all(0 <= i < 3 for i in word)
        assert from_word(3, word) == w
    assert from_word(4, [2, 3, 1, 2]).reduced_word == (2, 3, 1, 2)
    assert from_word(4, [2, 3, 1, 2]).window == (3, 4, 1, 2)


def test_support_ignores_stripping_order():
    # strip to the identity choosing descents several different ways;
    # the set of letters used must always equal the support
    rng = random.Random(8)
    elements = random_elements(3, 50, 12, seed=9) + random_elements(4, 50, 12, seed=10)
    for w in elements:
        for pick in (min, max, lambda d: rng.choice(sorted(d))):
            letters = set()
            v = w
            while v.right_descents:
                i = pick(v.right_descents)
                letters.add(i)
                v = v.times_s(i)
            assert frozenset(letters) == w.support


# ----------------------------------------------------------------------
# parabolic subgroups


def test_longest_element_shape():
    for n, subset in [(4, {1}), (4, {1, 2}), (4, {0, 2}), (5, {0, 1, 3}), (5, {4, 0, 1})]:
        w0 = longest_element(n, subset)
        assert w0.right_descents == frozenset(subset)
        assert w0.length == longest_length(n, subset)
        assert w0 * w0 == identity(n)
        assert w0.support == frozenset(subset)


def test_longest_length_adds_over_runs():
    # {4, 0, 1} is one cyclic run of three nodes: a copy of S_4
    assert longest_length(5, {4, 0, 1}) == 6
    assert longest_length(5, {0, 2}) == 2
    with pytest.raises(ValueError):
        longest_length(3, {0, 1, 2})
    with pytest.raises(ValueError):
        longest_element(3, {0, 3})


def test_coset_decompose():
    subsets = [frozenset(s) for r in range(3) for s in itertools.combinations(range(3), r)]
    for w in ball(3, 6):
        for K in subsets:
            v, u = coset_decompose(w, K)
            assert v * u == w
            assert v.length + u.length == w.length
            assert not (v.right_descents & K)
            assert u.support <= K
            assert coset_decompose(v, K) == (v, identity(3))
            lu, lv = coset_decompose_left(w, K)
            assert lu * lv == w
            assert lu.support <= K
            assert not (lv.left_descents & K)


# ----------------------------------------------------------------------
# Bruhat order and Poincare polynomials


def test_bruhat_matches_subword_oracle():
    elements = sorted(ball(3, 5), key=lambda w: (w.length, w.window))
    for w in elements:
        lower = subword_lower_set(w)
        for x in elements:
            assert bruhat_leq(x, w) == (x in lower), (x.window, w.window)


def test_bruhat_lower_interval():
    w = longest_element(4, {1, 2})
    interval = bruhat_lower_interval(w)
    assert interval == subword_lower_set(w)
    assert max(x.length for x in interval) == w.length
    assert [x for x in interval if x.length == w.length] == [w]
    assert len(interval) == poincare_polynomial(w)(1)
    restricted = bruhat_lower_interval(w, {1})
    assert restricted == frozenset(x for x in interval if 1 not in x.right_descents)
    with pytest.raises(CapExceeded):
        bruhat_lower_interval(longest_element(5, {1, 2, 3}), cap=3)


def test_poincare_polynomial_counts_interval_by_length():
    for w in sorted(ball(3, 5), key=lambda w: (w.length, w.window))[::3]:
        lower = subword_lower_set(w)
        expected = [0] * (w.length + 1)
        for x in lower:
            expected[x.length] += 1
        assert poincare_polynomial(w) == Polynomial(tuple(expected))
    assert poincare_polynomial(identity(3)) == Polynomial.of(1)
    assert poincare_polynomial(longest_element(4, {1, 2})) == Polynomial.of(1, 2, 2, 1)
    with pytest.raises(ValueError):
        poincare_polynomial(longest_element(4, {1}), J={1})
