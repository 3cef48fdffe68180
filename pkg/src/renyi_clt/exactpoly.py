"""Exact univariate polynomial arithmetic and Chebyshev-Hermite polynomials.

Polynomials are stored densely: ``coeffs[k]`` is the coefficient of ``x**k``.
Arithmetic is exact whenever the coefficients are ``int`` or
``fractions.Fraction``; float coefficients are accepted and simply propagate
through the same code paths (mixed inputs degrade to float).

The Chebyshev-Hermite (probabilists' Hermite) polynomials are the monic
family orthogonal under the standard normal weight, generated by

    H_{k+1}(x) = x * H_k(x) - k * H_{k-1}(x),    H_0 = 1,  H_1 = x,

with H_k' = k * H_{k-1} and the Appell-type relation
H_k'(x) - x * H_k(x) = -H_{k+1}(x).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = ["Poly", "hermite"]


def _is_zero(c) -> bool:
    return c == 0


class Poly:
    """Dense univariate polynomial with exact (or float) coefficients.

    Immutable: all operations return new instances.  The zero polynomial is
    represented by an empty coefficient tuple and has degree -1.
    """

    __slots__ = ("coeffs", "_float_cache")

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "_float_cache", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        """Coefficient of x**k (0 beyond the stored degree)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, float)):
            return self == Poly((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{k}")
        return "Poly(" + " + ".join(terms) + ")"

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, float)):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, float)):
            other = Poly((other,))
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, float)):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Poly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "Poly":
        """Exact formal derivative."""
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    # -- evaluation -----------------------------------------------------

    def float_coeffs(self) -> np.ndarray:
        """Coefficients as a float array (cached), low degree first."""
        if self._float_cache is None:
            arr = np.array([float(c) for c in self.coeffs], dtype=float)
            object.__setattr__(self, "_float_cache", arr)
        return self._float_cache

    def __call__(self, x):
        """Horner evaluation.

        Exact when ``x`` and the coefficients are rational; float otherwise.
        numpy arrays are evaluated with float coefficients.
        """
        if isinstance(x, np.ndarray):
            cs = self.float_coeffs()
            acc = np.zeros_like(x, dtype=float)
            for c in cs[::-1]:
                acc = acc * x + c
            return acc
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


_HERMITE_CACHE = [Poly((1,)), Poly((0, 1))]


def hermite(k: int) -> Poly:
    """Chebyshev-Hermite polynomial H_k (monic, degree k, integer coefficients)."""
    if k < 0:
        raise ValueError("hermite order must be non-negative")
    x = Poly.x()
    while len(_HERMITE_CACHE) <= k:
        m = len(_HERMITE_CACHE) - 1
        _HERMITE_CACHE.append(x * _HERMITE_CACHE[m] - m * _HERMITE_CACHE[m - 1])
    return _HERMITE_CACHE[k]
