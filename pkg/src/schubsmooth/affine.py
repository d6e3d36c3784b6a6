"""Affine permutations in window notation.

An element w of the affine symmetric group of period n is a bijection of the
integers with w(i + n) = w(i) + n for all i and w(1) + ... + w(n) equal to
n(n+1)/2.  It is stored by its window [w(1), ..., w(n)]; the residues of the
window entries mod n are pairwise distinct.

The simple reflections s_0, ..., s_{n-1} are the nodes of an n-cycle (for
n = 2 the two nodes are joined by a single edge).  s_i transposes the
integers congruent to i and i+1 that are adjacent, periodically; on windows,
right multiplication by s_i with 1 <= i <= n-1 swaps positions i and i+1,
while s_0 swaps positions n and 1 across the window boundary with a +-n
shift.  Elements supported on a proper subset of the cycle generate finite
symmetric groups; full support means the element needs every s_i.

Length is counted by inversions between window classes,

    length(w) = sum over 1 <= i < j <= n of |floor((w(j) - w(i)) / n)|,

and i is a right descent iff w(i) > w(i+1), reading w(0) = w(n) - n at the
boundary.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import CapExceeded
from .poly import Polynomial


@dataclass(frozen=True)
class AffinePermutation:
    """An affine permutation with period n, stored by its window.

    >>> w = from_word(4, [2, 3, 1, 2])
    >>> w.window
    (3, 4, 1, 2)
    >>> w.length
    4
    >>> sorted(w.right_descents)
    [2]
    >>> w * w.inverse() == identity(4)
    True
    """

    n: int
    window: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.n
        if n < 2:
            raise ValueError(f"period must be at least 2, got {n}")
        if len(self.window) != n:
            raise ValueError(f"window must have length {n}, got {len(self.window)}")
        if len({v % n for v in self.window}) != n:
            raise ValueError(f"window residues mod {n} must be pairwise distinct")
        if sum(self.window) != n * (n + 1) // 2:
            raise ValueError(f"window must sum to {n * (n + 1) // 2}")

    def apply(self, i: int) -> int:
        """Value w(i) for any integer i, via w(i + n) = w(i) + n.

        >>> from_word(3, [0, 1]).apply(4) - from_word(3, [0, 1]).apply(1)
        3
        """
        n = self.n
        r = (i - 1) % n  # 0-based window index
        q = (i - 1 - r) // n
        return self.window[r] + q * n

    def __mul__(self, other: "AffinePermutation") -> "AffinePermutation":
        if self.n != other.n:
            raise ValueError(f"period mismatch: {self.n} vs {other.n}")
        return AffinePermutation(self.n, tuple(self.apply(v) for v in other.window))

    def inverse(self) -> "AffinePermutation":
        n = self.n
        win = [0] * n
        for i, v in enumerate(self.window, start=1):
            r = (v - 1) % n
            q = (v - 1 - r) // n
            win[r] = i - q * n
        return AffinePermutation(n, tuple(win))

    def times_s(self, i: int) -> "AffinePermutation":
        """Right multiplication by the simple reflection s_i."""
        n = self.n
        if not 0 <= i < n:
            raise ValueError(f"reflection index must be in 0..{n - 1}, got {i}")
        w = list(self.window)
        if i == 0:
            w[0], w[n - 1] = w[n - 1] - n, w[0] + n
        else:
            w[i - 1], w[i] = w[i], w[i - 1]
        return AffinePermutation(n, tuple(w))

    def s_times(self, i: int) -> "AffinePermutation":
        """Left multiplication by s_i: swap the values i, i+1 mod n."""
        n = self.n
        if not 0 <= i < n:
            raise ValueError(f"reflection index must be in 0..{n - 1}, got {i}")
        lo, hi = i % n, (i + 1) % n
        w = []
        for v in self.window:
            r = v % n
            if r == lo:
                w.append(v + 1)
            elif r == hi:
                w.append(v - 1)
            else:
                w.append(v)
        return AffinePermutation(n, tuple(w))

    @cached_property
    def length(self) -> int:
        n, win = self.n, self.window
        total = 0
        for j in range(1, n):
            vj = win[j]
            for i in range(j):
                d = vj - win[i]
                total += abs(d // n)
        return total

    def is_identity(self) -> bool:
        return self.length == 0

    @cached_property
    def right_descents(self) -> frozenset[int]:
        """Indices i with w(i) > w(i+1), reading w(0) = w(n) - n."""
        n, win = self.n, self.window
        out = {i for i in range(1, n) if win[i - 1] > win[i]}
        if win[n - 1] - n > win[0]:
            out.add(0)
        return frozenset(out)

    @cached_property
    def left_descents(self) -> frozenset[int]:
        return self.inverse().right_descents

    @cached_property
    def reduced_word(self) -> tuple[int, ...]:
        """Reduced word by greedy right-descent stripping, smallest index first.

        >>> from_word(3, [2, 1]).reduced_word
        (2, 1)
        """
        letters: list[int] = []
        w = self
        while True:
            d = w.right_descents
            if not d:
                break
            i = min(d)
            letters.append(i)
            w = w.times_s(i)
        return tuple(reversed(letters))

    @cached_property
    def support(self) -> frozenset[int]:
        """The set of letters appearing in any reduced word."""
        return frozenset(self.reduced_word)

    def __repr__(self) -> str:
        return f"AffinePermutation({self.n}, {self.window})"


def identity(n: int) -> AffinePermutation:
    return AffinePermutation(n, tuple(range(1, n + 1)))


def from_window(n: int, window: Sequence[int]) -> AffinePermutation:
    return AffinePermutation(n, tuple(window))


def simple_reflection(n: int, i: int) -> AffinePermutation:
    return identity(n).times_s(i)


def multiply(a: AffinePermutation, b: AffinePermutation) -> AffinePermutation:
    """Function form of a * b (b applied first)."""
    return a * b


def from_word(n: int, word: Iterable[int]) -> AffinePermutation:
    """Product s_{i_1} * s_{i_2} * ... for word = [i_1, i_2, ...].

    >>> identity(2).times_s(0).window
    (0, 3)
    >>> from_word(2, [0]).window
    (0, 3)
    """
    w = identity(n)
    for i in word:
        w = w.times_s(i)
    return w


def _cycle_components(n: int, subset: frozenset[int]) -> list[list[int]]:
    """Connected components of a vertex subset of the n-cycle, each listed
    in consecutive order.  The full cycle is a single component."""
    if len(subset) == n:
        return [list(range(n))]
    comps = []
    seen: set[int] = set()
    for start in sorted(subset):
        if start in seen or (start - 1) % n in subset:
            continue
        comp = []
        v = start
        while v in subset:
            comp.append(v)
            seen.add(v)
            v = (v + 1) % n
        comps.append(comp)
    return comps


def longest_length(n: int, subset: Iterable[int]) -> int:
    """Length of the longest element of the parabolic subgroup W_subset.

    Each connected run of m nodes is a copy of the symmetric group S_{m+1},
    contributing m(m+1)/2.
    """
    sub = frozenset(subset)
    if len(sub) >= n:
        raise ValueError("subset must be proper: the full cycle generates an infinite group")
    return sum(len(c) * (len(c) + 1) // 2 for c in _cycle_components(n, sub))


def longest_element(n: int, subset: Iterable[int]) -> AffinePermutation:
    """Longest element of W_subset for a proper subset of the cycle nodes.

    >>> longest_element(5, {0, 1, 3}).length
    4
    >>> longest_element(3, {1, 2}).reduced_word
    (1, 2, 1)
    """
    sub = frozenset(subset)
    if any(not 0 <= v < n for v in sub):
        raise ValueError(f"subset members must be node indices in 0..{n - 1}")
    if len(sub) >= n:
        raise ValueError("subset must be proper: the full cycle generates an infinite group")
    word: list[int] = []
    for comp in _cycle_components(n, sub):
        # standard longest word of type A on consecutive nodes v1..vm:
        # v1, v2 v1, v3 v2 v1, ...
        for k in range(len(comp)):
            word.extend(reversed(comp[: k + 1]))
    return from_word(n, word)


def coset_decompose(w: AffinePermutation, K: Iterable[int]) -> tuple[AffinePermutation, AffinePermutation]:
    """Parabolic decomposition w = v * u with v in W^K and u in W_K.

    v is the minimal-length representative of the coset w W_K, so v has no
    right descents in K, and length(w) = length(v) + length(u).

    >>> v, u = coset_decompose(from_word(4, [2, 1]), {1})
    >>> v.reduced_word, u.reduced_word
    ((2,), (1,))
    """
    ks = frozenset(K)
    v = w
    stripped: list[int] = []
    while True:
        d = v.right_descents & ks
        if not d:
            break
        i = min(d)
        stripped.append(i)
        v = v.times_s(i)
    u = from_word(w.n, reversed(stripped))
    return v, u


def coset_decompose_left(w: AffinePermutation, K: Iterable[int]) -> tuple[AffinePermutation, AffinePermutation]:
    """Parabolic decomposition w = u * v with u in W_K and v minimal in W_K w."""
    vv, uu = coset_decompose(w.inverse(), K)
    return uu.inverse(), vv.inverse()


def bruhat_leq(x: AffinePermutation, w: AffinePermutation) -> bool:
    """Bruhat order: x <= w iff x occurs as a subword of a reduced word of w.

    Decided by the lifting property: for i a right descent of w,
    x <= w iff (x s_i <= w s_i when i is a descent of x, else x <= w s_i).

    >>> bruhat_leq(from_word(3, [1]), from_word(3, [1, 2, 1]))
    True
    >>> bruhat_leq(from_word(3, [0]), from_word(3, [1, 2, 1]))
    False
    """
    if x.n != w.n:
        raise ValueError(f"period mismatch: {x.n} vs {w.n}")
    while True:
        if x.length > w.length:
            return False
        if x.length == 0:
            return True
        i = min(w.right_descents)
        w = w.times_s(i)
        if i in x.right_descents:
            x = x.times_s(i)


@lru_cache(maxsize=None)
def _lower_interval(w: AffinePermutation, cap: int) -> frozenset[AffinePermutation]:
    if w.length > cap:
        raise CapExceeded(f"interval of an element of length {w.length} exceeds cap {cap}")
    elems: set[AffinePermutation] = {identity(w.n)}
    for i in w.reduced_word:
        extra = set()
        for x in elems:
            y = x.times_s(i)
            if y.length > x.length:
                extra.add(y)
        elems |= extra
    return frozenset(elems)


def bruhat_lower_interval(
    w: AffinePermutation, J: Iterable[int] = (), cap: int = 16
) -> frozenset[AffinePermutation]:
    """All x <= w lying in W^J (no right descents in J).

    Every x <= w has a reduced word occurring as a subword of one fixed
    reduced word of w, so a left-to-right scan keeping length-increasing
    products collects the whole lower interval.

    >>> len(bruhat_lower_interval(longest_element(4, {1, 2}), ()))
    6
    """
    js = frozenset(J)
    interval = _lower_interval(w, cap)
    if not js:
        return interval
    return frozenset(x for x in interval if not (x.right_descents & js))


def poincare_polynomial(
    w: AffinePermutation, J: Iterable[int] = (), cap: int = 16
) -> Polynomial:
    """Rank generating polynomial of {x in W^J : x <= w}.

    >>> str(poincare_polynomial(longest_element(4, {1, 2})))
    '1 + 2*q + 2*q^2 + q^3'
    """
    js = frozenset(J)
    if w.right_descents & js:
        raise ValueError(f"w has right descents {sorted(w.right_descents & js)} in J: not in W^J")
    counts = Counter(x.length for x in bruhat_lower_interval(w, js, cap))
    return Polynomial.from_length_counts(counts)
