"""Normal-ordered polynomials in a single pair of bosonic ladder operators.

A polynomial is stored as a finite map ``(r, s) -> coefficient`` where a term
``(r, s, c)`` means ``c * adag^r a^s`` (all creation operators to the left).
Products are re-normal-ordered with the rewrite rule

    a * adag^r = adag^r * a + r * adag^(r-1)

applied recursively, so two polynomials representing the same operator always
have identical term maps.  Coefficients are complex floats; coefficients whose
magnitude drops below ``DROP_TOL`` after arithmetic are removed to keep the
canonical form free of cancellation dust.

All values are immutable after construction and every operation returns a new
polynomial, so instances are safe to share between threads.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

# Threshold below which a coefficient counts as an exact zero after arithmetic.
DROP_TOL = 1e-15


@lru_cache(maxsize=None)
def _reorder_powers(s: int, r: int) -> tuple:
    """Normal form of ``a^s adag^r`` as a tuple of ((r', s'), integer weight).

    Recursive application of the single rewrite rule; all weights are exact
    integers, so no floating error enters the reordering itself.
    """
    if s == 0 or r == 0:
        return (((r, s), 1),)
    acc: dict[tuple[int, int], int] = {}
    # a^s adag^r = a^(s-1) (adag^r a + r adag^(r-1))
    for (rp, sp), w in _reorder_powers(s - 1, r):
        key = (rp, sp + 1)
        acc[key] = acc.get(key, 0) + w
    for (rp, sp), w in _reorder_powers(s - 1, r - 1):
        key = (rp, sp)
        acc[key] = acc.get(key, 0) + r * w
    return tuple(sorted(acc.items()))


def _canonical(terms: dict) -> dict:
    """Sorted term map with near-zero coefficients dropped."""
    out = {}
    for key in sorted(terms):
        c = complex(terms[key])
        if abs(c) > DROP_TOL:
            out[key] = c
    return out


class LadderPolynomial:
    """Immutable normal-ordered polynomial in ``a`` and ``adag``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        object.__setattr__(self, "_terms", _canonical(terms or {}))

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "LadderPolynomial":
        return LadderPolynomial({})

    @staticmethod
    def identity(coeff: complex = 1.0) -> "LadderPolynomial":
        return LadderPolynomial({(0, 0): coeff})

    @staticmethod
    def annihilation() -> "LadderPolynomial":
        return LadderPolynomial({(0, 1): 1.0})

    @staticmethod
    def creation() -> "LadderPolynomial":
        return LadderPolynomial({(1, 0): 1.0})

    @staticmethod
    def number() -> "LadderPolynomial":
        return LadderPolynomial({(1, 1): 1.0})

    # -- plain accessors ----------------------------------------------------

    @property
    def terms(self) -> dict:
        """Copy of the canonical term map, sorted by (r, s)."""
        return dict(self._terms)

    def coefficient(self, r: int, s: int) -> complex:
        return self._terms.get((r, s), 0.0 + 0.0j)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Maximum total operator degree r + s (zero polynomial has degree 0)."""
        return max((r + s for r, s in self._terms), default=0)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def max_abs_imag(self) -> float:
        return max((abs(c.imag) for c in self._terms.values()), default=0.0)

    # -- algebra ------------------------------------------------------------

    def __add__(self, other: "LadderPolynomial") -> "LadderPolynomial":
        acc = dict(self._terms)
        for key, c in other._terms.items():
            acc[key] = acc.get(key, 0.0) + c
        return LadderPolynomial(acc)

    def __sub__(self, other: "LadderPolynomial") -> "LadderPolynomial":
        return self + (-other)

    def __neg__(self) -> "LadderPolynomial":
        return LadderPolynomial({k: -c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, LadderPolynomial):
            acc: dict[tuple[int, int], complex] = {}
            for (r1, s1), c1 in self._terms.items():
                for (r2, s2), c2 in other._terms.items():
                    c = c1 * c2
                    for (rp, sp), w in _reorder_powers(s1, r2):
                        key = (r1 + rp, sp + s2)
                        acc[key] = acc.get(key, 0.0) + w * c
            return LadderPolynomial(acc)
        return LadderPolynomial({k: other * c for k, c in self._terms.items()})

    def __rmul__(self, scalar) -> "LadderPolynomial":
        return LadderPolynomial({k: scalar * c for k, c in self._terms.items()})

    def commutator(self, other: "LadderPolynomial") -> "LadderPolynomial":
        return self * other - other * self

    def adjoint(self) -> "LadderPolynomial":
        """Hermitian adjoint: (r, s, c) -> (s, r, conj(c)).

        (adag^r a^s)^+ = adag^s a^r is itself normal ordered, so the powers
        swap and nothing needs reordering.
        """
        acc: dict[tuple[int, int], complex] = {}
        for (r, s), c in self._terms.items():
            key = (s, r)
            acc[key] = acc.get(key, 0.0) + c.conjugate()
        return LadderPolynomial(acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LadderPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    # -- Fock-basis representation ------------------------------------------

    def matrix_element(self, m: int, n: int) -> complex:
        """<m| poly |n> on number states, m, n >= 0.

        Term (r, s, c) lowers n by s and raises by r, so it contributes only
        when m = n - s + r and n >= s; the weight is the product of the ladder
        square roots accumulated on the way down and up.
        """
        if m < 0 or n < 0:
            raise ValueError("level indices must be nonnegative")
        total = 0.0 + 0.0j
        for (r, s), c in self._terms.items():
            if n < s or m != n - s + r:
                continue
            w = 1.0
            for i in range(s):
                w *= n - i
            for i in range(r):
                w *= n - s + 1 + i
            total += c * math.sqrt(w)
        return total

    def to_matrix(self, dim: int) -> np.ndarray:
        """Dense complex truncation with entry (m, n) = <m| poly |n>."""
        if dim < 1:
            raise ValueError("truncation size must be at least 1")
        out = np.zeros((dim, dim), dtype=complex)
        for (r, s), c in self._terms.items():
            for n in range(s, dim):
                m = n - s + r
                if m >= dim:
                    continue
                w = 1.0
                for i in range(s):
                    w *= n - i
                for i in range(r):
                    w *= n - s + 1 + i
                out[m, n] += c * math.sqrt(w)
        return out

    # -- misc ---------------------------------------------------------------

    def __repr__(self) -> str:
        if not self._terms:
            return "LadderPolynomial(0)"
        bits = []
        for (r, s), c in self._terms.items():
            op = "adag^%d a^%d" % (r, s) if r or s else "1"
            bits.append("(%s)*%s" % (format(c, "g"), op))
        return "LadderPolynomial(%s)" % " + ".join(bits)


def add(p: LadderPolynomial, q: LadderPolynomial) -> LadderPolynomial:
    return p + q


def multiply(p: LadderPolynomial, q: LadderPolynomial) -> LadderPolynomial:
    return p * q


def commutator(p: LadderPolynomial, q: LadderPolynomial) -> LadderPolynomial:
    return p.commutator(q)


def adjoint(p: LadderPolynomial) -> LadderPolynomial:
    return p.adjoint()
