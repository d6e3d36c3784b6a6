"""Billey-Postnikov (BP) decompositions and Grassmannian fibre towers.

For J subset K subset S and w in W^J, write w = vu with v in W^K and
u in W_K; the decomposition is BP (relative to J) when the Poincare
polynomials multiply, P^J_w = P^K_v * P^J_u.  For J empty this is
equivalent to the combinatorial criterion S(v) ∩ K ⊆ D_L(u), which is what
we test; for general J we compare the polynomials directly (capped).

A BP decomposition is Grassmannian when |S(w) \\ K| = 1.  Iterating
Grassmannian BP decompositions until the support is exhausted produces a
complete decomposition w = v_1 v_2 ... v_m along a chain

    S(w) ∪ J = K_0 ⊋ K_1 ⊋ ... ⊋ K_m = J,   K_i = S(u_{i+1}) ∪ J,

dropping one node per level.  When every factor v_i is the maximal element
of W_{S(v_i)} modulo W_{K_i ∩ S(v_i)}, each level is a Grassmannian fibre
bundle and the base element is smooth; smooth elements always admit such a
decomposition, found by preferring s outside D_R(w) in increasing index and
falling back to maximal parabolic elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .affine import (
    AffinePermutation,
    coset_decompose,
    longest_element,
    longest_length,
    poincare_polynomial,
)
from .errors import NotSmooth
from .smoothness import is_smooth


def _require_quotient(w: AffinePermutation, js: frozenset[int]) -> None:
    bad = w.right_descents & js
    if bad:
        raise ValueError(f"w has right descents {sorted(bad)} in J: not in W^J")


def is_bp(
    w: AffinePermutation, K: Iterable[int], J: Iterable[int] = (), cap: int = 16
) -> bool:
    """Whether the parabolic decomposition of w along K is BP relative to J.

    >>> from .affine import from_word
    >>> is_bp(from_word(4, [2, 1]), {1})
    True
    >>> is_bp(from_word(4, [1, 2]), {1})
    False
    """
    ks, js = frozenset(K), frozenset(J)
    if not js <= ks:
        raise ValueError(f"J must be contained in K, got J={sorted(js)} K={sorted(ks)}")
    if any(not 0 <= i < w.n for i in ks):
        raise ValueError(f"K members must be node indices in 0..{w.n - 1}")
    _require_quotient(w, js)
    v, u = coset_decompose(w, ks)
    if not js:
        return (v.support & ks) <= u.left_descents
    lhs = poincare_polynomial(w, js, cap)
    rhs = poincare_polynomial(v, ks, cap) * poincare_polynomial(u, js, cap)
    return lhs == rhs


def _is_maximal_factor(v: AffinePermutation, K_next: frozenset[int]) -> bool:
    """v maximal in W_{S(v)} modulo W_{K ∩ S(v)}: test by the length identity."""
    sv = v.support
    if len(sv) >= v.n:
        return False  # full support: no longest element to compare against
    return v.length == longest_length(v.n, sv) - longest_length(v.n, K_next & sv)


def find_grassmannian_bp(
    w: AffinePermutation, J: Iterable[int] = (), cap: int = 16
) -> Optional[tuple[AffinePermutation, AffinePermutation, frozenset[int]]]:
    """A Grassmannian BP decomposition (v, u, K) of w relative to J, or None.

    K = (S(w) ∪ J) \\ {s} for the smallest admissible s.  Candidates with
    s outside D_R(w) and both factors supported in proper parabolics come
    first; if w is the maximal element of its (finite) support parabolic,
    any s works; finally a BP decomposition whose left factor has full
    support is accepted (the twisted spiral case).
    """
    js = frozenset(J)
    _require_quotient(w, js)
    sw = w.support
    if sw <= js:
        raise ValueError("S(w) is contained in J: nothing to decompose")
    full = sw | js
    n = w.n

    fallback: Optional[tuple[AffinePermutation, AffinePermutation, frozenset[int]]] = None
    for s in sorted(sw - js):
        if s in w.right_descents:
            continue
        K = full - {s}
        if not is_bp(w, K, js, cap):
            continue
        v, u = coset_decompose(w, K)
        if len(v.support) < n and len(u.support) < n:
            return v, u, K
        if fallback is None:
            fallback = (v, u, K)

    if len(sw) < n and w.length == longest_length(n, sw):
        # maximal element of a finite parabolic: every decomposition works
        s = min(sw - js)
        K = full - {s}
        if is_bp(w, K, js, cap):
            v, u = coset_decompose(w, K)
            return v, u, K

    return fallback


@dataclass(frozen=True)
class BPDecomposition:
    """A complete BP decomposition w = v_1 ... v_m relative to J.

    chain holds K_0 ⊇ ... ⊇ K_m with K_0 = S(w) ∪ J, K_m = J, and
    K_i = S(u_{i+1}) ∪ J; maximal[i] flags whether v_i is the maximal
    element of its coset quotient.
    """

    w: AffinePermutation
    relative: frozenset[int]
    factors: tuple[AffinePermutation, ...]
    chain: tuple[frozenset[int], ...]
    maximal: tuple[bool, ...]

    def __post_init__(self) -> None:
        assert len(self.chain) == len(self.factors) + 1
        assert sum(f.length for f in self.factors) == self.w.length
        for i in range(len(self.factors)):
            assert len(self.chain[i] - self.chain[i + 1]) == 1

    def all_maximal(self) -> bool:
        return all(self.maximal)


def complete_bp_decomposition(
    w: AffinePermutation, J: Iterable[int] = (), cap: int = 16
) -> Optional[BPDecomposition]:
    """Iterate find_grassmannian_bp until the support is exhausted.

    Returns None when some level admits no Grassmannian BP decomposition
    (or the chain property K_i = S(u_{i+1}) ∪ J fails, which cannot happen
    for J = ()).  Succeeds for every smooth w.
    """
    js = frozenset(J)
    _require_quotient(w, js)
    factors: list[AffinePermutation] = []
    chain: list[frozenset[int]] = [w.support | js]
    flags: list[bool] = []
    u = w
    while not u.support <= js:
        hit = find_grassmannian_bp(u, js, cap)
        if hit is None:
            return None
        v, u_next, K = hit
        if u_next.support | js != K:
            return None  # not Grassmannian with respect to S(u_{i+1}) ∪ J
        factors.append(v)
        flags.append(_is_maximal_factor(v, K))
        chain.append(K)
        u = u_next
    assert u.is_identity(), "W^J ∩ W_J is trivial"
    return BPDecomposition(
        w=w, relative=js, factors=tuple(factors), chain=tuple(chain), maximal=tuple(flags)
    )


@dataclass(frozen=True)
class GrassmannianLabel:
    """One fibre of the tower: the quotient W_{nodes} / W_{nodes minus missing}.

    nodes is the support interval of the factor, listed consecutively; the
    maximal coset element's Schubert variety is the Grassmannian Gr(a, m)
    of a-dimensional subspaces of an m-dimensional space.
    """

    nodes: tuple[int, ...]
    missing: int
    a: int
    m: int


def _linearize_interval(n: int, nodes: frozenset[int]) -> tuple[int, ...]:
    """List a proper connected cycle subset in consecutive order."""
    start = next(v for v in sorted(nodes) if (v - 1) % n not in nodes)
    out = []
    v = start
    while v in nodes:
        out.append(v)
        v = (v + 1) % n
    if len(out) != len(nodes):
        raise ValueError(f"nodes {sorted(nodes)} are not a connected interval")
    return tuple(out)


def fibre_tower(
    w: AffinePermutation, J: Iterable[int] = (), cap: int = 16
) -> tuple[GrassmannianLabel, ...]:
    """Grassmannian labels of the fibre bundle tower of a smooth element.

    Raises NotSmooth when no complete BP decomposition into maximal coset
    elements exists.

    >>> from .affine import longest_element
    >>> [(lab.a, lab.m) for lab in fibre_tower(longest_element(4, {1}))]
    [(1, 2)]
    """
    decomp = complete_bp_decomposition(w, J, cap)
    if decomp is None or not decomp.all_maximal():
        raise NotSmooth(f"no complete maximal BP decomposition for window {w.window}")
    labels = []
    for i, v in enumerate(decomp.factors):
        missing = next(iter(decomp.chain[i] - decomp.chain[i + 1]))
        nodes = _linearize_interval(w.n, v.support)
        a = nodes.index(missing) + 1
        labels.append(GrassmannianLabel(nodes=nodes, missing=missing, a=a, m=len(nodes) + 1))
    return tuple(labels)


def is_smooth_partial(w: AffinePermutation, J: Iterable[int]) -> bool:
    """Smoothness of the Schubert variety of w in the partial flag variety W/W_J.

    Equivalent to smoothness of w * u0 where u0 is the longest element of
    the parabolic on J ∩ S(w): the full Schubert variety fibres over the
    partial one with smooth fibre.
    """
    js = frozenset(J)
    _require_quotient(w, js)
    u0 = longest_element(w.n, js & w.support)
    return is_smooth(w * u0)
