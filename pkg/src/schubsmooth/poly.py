"""Integer polynomials in one variable q, dense and exact.

Just enough arithmetic for Poincare polynomials: addition, multiplication,
evaluation, and the palindromicity test q^deg * p(1/q) == p(q).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Polynomial:
    """Coefficients stored low degree first, trailing zeros trimmed.

    >>> p = Polynomial.of(1, 2, 2, 1)
    >>> p.degree
    3
    >>> p.is_palindromic()
    True
    >>> (p * Polynomial.of(1, 1)).coeffs
    (1, 3, 4, 3, 1)
    >>> p(1)
    6
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def of(cls, *coeffs: int) -> "Polynomial":
        return cls(tuple(coeffs))

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def from_length_counts(cls, counts: dict[int, int]) -> "Polynomial":
        """Build sum(counts[k] * q^k) from a length -> multiplicity mapping."""
        if not counts:
            return cls.zero()
        top = max(counts)
        return cls(tuple(counts.get(k, 0) for k in range(top + 1)))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial given degree -1."""
        return len(self.coeffs) - 1

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial.zero()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial(tuple(out))

    def __call__(self, value: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def is_palindromic(self) -> bool:
        """True iff the coefficient sequence reads the same in both directions."""
        return self.coeffs == tuple(reversed(self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*q" if c != 1 else "q")
            else:
                parts.append(f"{c}*q^{k}" if c != 1 else f"q^{k}")
        return " + ".join(parts)


def is_palindromic(p: Polynomial) -> bool:
    """Function form of Polynomial.is_palindromic.

    >>> is_palindromic(Polynomial.of(1, 2, 1))
    True
    >>> is_palindromic(Polynomial.of(1, 2))
    False
    """
    return p.is_palindromic()
