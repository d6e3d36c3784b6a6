"""Pattern avoidance, spiral elements, and smoothness of affine Schubert varieties.

An affine permutation w contains a finite pattern p = (p_1, ..., p_k) if there
are integers i_1 < ... < i_k with (w(i_1), ..., w(i_k)) in the same relative
order as p.  The Schubert variety of w is smooth iff w avoids both 3412 and
4231; it is rationally smooth iff w additionally may be a twisted spiral
element, i.e. a spiral x(i, m) or y(i, m) with m = k(n-1), k >= 2, times the
longest element of the parabolic on S minus {s_i}.

The pattern search is windowed.  Put D = max_i |w(i) - i| (shift-invariant).
Any inversion i < j, w(i) > w(j) has j - i < 2D, so for a pattern whose first
value exceeds its last, every occurrence fits inside a window of width 2D.
It therefore suffices to scan starting positions i_1 in one period.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .affine import AffinePermutation, coset_decompose, from_word, identity, longest_element, longest_length
from .errors import BudgetExceeded

PATTERN_3412: tuple[int, ...] = (3, 4, 1, 2)
PATTERN_4231: tuple[int, ...] = (4, 2, 3, 1)


def _check_pattern(p: tuple[int, ...]) -> None:
    k = len(p)
    if k == 0 or sorted(p) != list(range(1, k + 1)):
        raise ValueError(f"pattern must be a permutation of 1..k, got {p}")
    if p[0] <= p[-1]:
        raise ValueError(
            "windowed search is complete only for patterns whose first value "
            f"exceeds their last, got {p}"
        )


def pattern_occurrence(w: AffinePermutation, p: tuple[int, ...]) -> Optional[tuple[int, ...]]:
    """One occurrence of p in w as a tuple of positions, or None.

    >>> pattern_occurrence(identity(4), PATTERN_3412) is None
    True
    """
    _check_pattern(p)
    n, k = w.n, len(p)
    disp = max(abs(w.window[i] - (i + 1)) for i in range(n))
    if disp == 0:
        return None  # the identity has no inversions
    width = 2 * disp  # occurrence positions live in [i1, i1 + width)
    vals = [w.apply(i) for i in range(1, n + width)]

    def extend(positions: list[int], start: int) -> Optional[tuple[int, ...]]:
        t = len(positions)
        if t == k:
            return tuple(positions)
        limit = positions[0] + width  # exclusive upper bound on further positions
        for j in range(start, min(limit, len(vals) + 1)):
            vj = vals[j - 1]
            ok = True
            for a, pa in enumerate(positions):
                # relative order of chosen values must match the pattern prefix
                if (vals[pa - 1] < vj) != (p[a] < p[t]):
                    ok = False
                    break
            if ok:
                positions.append(j)
                hit = extend(positions, j + 1)
                if hit:
                    return hit
                positions.pop()
        return None

    for i1 in range(1, n + 1):
        hit = extend([i1], i1 + 1)
        if hit:
            return hit
    return None


def contains_pattern(w: AffinePermutation, p: tuple[int, ...]) -> bool:
    """Whether w contains the pattern p (p's first value must exceed its last).

    >>> contains_pattern(from_word(2, [0, 1, 0]), PATTERN_3412)
    True
    """
    return pattern_occurrence(w, p) is not None


def is_smooth(w: AffinePermutation) -> bool:
    """Smoothness of the Schubert variety of w: avoid 3412 and 4231.

    >>> is_smooth(from_word(3, [0, 1, 2]))
    True
    >>> is_smooth(from_word(2, [1, 0, 1]))
    False
    """
    return not contains_pattern(w, PATTERN_3412) and not contains_pattern(w, PATTERN_4231)


@dataclass(frozen=True)
class SpiralSpec:
    """Parameters of a spiral element: base node i, winding count k, direction.

    The element is x(i, m) = s_{i+m-1} ... s_{i+1} s_i for direction "x" and
    y(i, m) = s_{i-m+1} ... s_{i-1} s_i for direction "y", indices mod n,
    with m = k(n-1).
    """

    i: int
    k: int
    direction: str

    def __post_init__(self) -> None:
        if self.direction not in ("x", "y"):
            raise ValueError(f"direction must be 'x' or 'y', got {self.direction!r}")
        if self.k < 2:
            raise ValueError(f"winding count must be at least 2, got {self.k}")


def spiral_word(spec: SpiralSpec, n: int) -> tuple[int, ...]:
    m = spec.k * (n - 1)
    if spec.direction == "x":
        return tuple((spec.i + m - 1 - t) % n for t in range(m))
    return tuple((spec.i - m + 1 + t) % n for t in range(m))


def spiral(spec: SpiralSpec, n: int) -> AffinePermutation:
    """The spiral element of winding count k at node i.

    >>> spiral(SpiralSpec(0, 2, "x"), 3).reduced_word
    (0, 2, 1, 0)
    """
    if not 0 <= spec.i < n:
        raise ValueError(f"base node must be in 0..{n - 1}, got {spec.i}")
    w = from_word(n, spiral_word(spec, n))
    assert w.length == spec.k * (n - 1), "spiral words are reduced"
    return w


def twisted_spiral(spec: SpiralSpec, n: int) -> AffinePermutation:
    """spiral(spec) times the longest element of the parabolic on S minus s_i."""
    others = frozenset(range(n)) - {spec.i}
    return spiral(spec, n) * longest_element(n, others)


def is_twisted_spiral(w: AffinePermutation) -> bool:
    """Recognize twisted spiral elements.

    A twisted spiral has right descent set S minus {s_i}; stripping the
    longest element of that parabolic must leave a spiral with k >= 2.

    >>> is_twisted_spiral(twisted_spiral(SpiralSpec(0, 2, "x"), 3))
    True
    >>> is_twisted_spiral(identity(3))
    False
    """
    n = w.n
    if len(w.right_descents) != n - 1:
        return False
    (i,) = frozenset(range(n)) - w.right_descents
    others = frozenset(range(n)) - {i}
    v, u = coset_decompose(w, others)
    if u.length != longest_length(n, others):
        return False
    m = v.length
    if m <= 0 or m % (n - 1) != 0 or m // (n - 1) < 2:
        return False
    k = m // (n - 1)
    return any(v == spiral(SpiralSpec(i, k, d), n) for d in ("x", "y"))


def is_rationally_smooth(w: AffinePermutation) -> bool:
    """Rational smoothness: smooth, or a twisted spiral element."""
    return is_smooth(w) or is_twisted_spiral(w)


@lru_cache(maxsize=None)
def enumerate_smooth(
    n: int, max_length: Optional[int] = None, budget_seconds: Optional[float] = None
) -> frozenset[AffinePermutation]:
    """All smooth elements of the affine symmetric group of period n.

    Breadth-first by length over the whole group ball; stops once no new
    avoiders have appeared for 2n consecutive lengths and the running count
    matches the generating-function coefficient.  The avoider set is finite
    but carries no published length bound, hence the double stop rule.
    """
    from .series import series_A_closed  # deferred: keep module import light

    if n < 2:
        raise ValueError(f"period must be at least 2, got {n}")
    target = series_A_closed(n).coeffs[n]
    cap = max_length if max_length is not None else 10 * n + 10
    deadline = time.monotonic() + budget_seconds if budget_seconds else None

    level = {identity(n)}
    found: set[AffinePermutation] = {identity(n)}
    streak = 0
    length = 0
    while True:
        if streak >= 2 * n and len(found) == target:
            return frozenset(found)
        length += 1
        if length > cap:
            raise BudgetExceeded(
                f"no stop after length {cap}: found {len(found)} avoiders, expected {target}"
            )
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded(f"time budget exhausted at length {length}")
        nxt: set[AffinePermutation] = set()
        for w in level:
            for i in range(n):
                if i not in w.right_descents:
                    nxt.add(w.times_s(i))
        level = nxt
        new = {w for w in level if is_smooth(w)}
        if new:
            found |= new
            streak = 0
        else:
            streak += 1


def smooth_count(n: int) -> int:
    """|enumerate_smooth(n)|, the number of smooth affine Schubert varieties."""
    return len(enumerate_smooth(n))
