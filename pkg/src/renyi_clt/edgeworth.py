"""Edgeworth corrections of the standard normal law.

The order-m correction for the density of a normalized sum Z_n of
standardized i.i.d. variables is the signed density

    phi_m(x) = phi(x) * (1 + sum_{k=1}^{m-2} Q_k(x) * n**(-k/2)),

where each correction polynomial is the partition sum

    Q_k(x) = sum 1/(r_1! ... r_k!) * prod_i (gamma_{i+2}/(i+2)!)**r_i
             * H_{k+2j}(x),

running over non-negative (r_1, ..., r_k) with r_1 + 2 r_2 + ... + k r_k = k
and j = r_1 + ... + r_k.  The companion distribution-function correction uses
the same coefficients with H_{k+2j-1} instead:

    Phi_m(x) = Phi(x) - phi(x) * sum_{k=1}^{m-2} R_k(x) * n**(-k/2),

which makes d/dx Phi_m = phi_m exactly, by H_{i+1} = x H_i - i H_{i-1}.

phi_m is exposed as a signed function: it may dip below zero far out in the
tails and no clipping is applied, so that exact integral identities (unit
mass, moment matching) survive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple, Optional

import numpy as np
from scipy.special import ndtr

from .cumulants import CumulantVector, compositions
from .exactpoly import Poly, hermite

__all__ = [
    "normal_pdf",
    "normal_cdf",
    "correction_polynomial",
    "cdf_correction_polynomial",
    "EdgeworthModel",
    "LeadingTerm",
    "leading_term",
    "truncation_radius",
]

_SQRT_2PI = math.sqrt(2 * math.pi)


def normal_pdf(x):
    """Standard normal density, scalar or array."""
    return np.exp(-0.5 * np.asarray(x, dtype=float) ** 2) / _SQRT_2PI


def normal_cdf(x):
    """Standard normal distribution function, scalar or array."""
    return ndtr(x)


def _composition_weight(parts, cumulants: CumulantVector):
    """prod_i (gamma_{i+2}/(i+2)!)**r_i / r_i! for one tuple (r_1..r_k)."""
    w = Fraction(1)
    for i, r_i in enumerate(parts, start=1):
        if r_i == 0:
            continue
        g = cumulants.gamma(i + 2)
        if g == 0:
            return 0
        w *= (Fraction(1, factorial(i + 2)) * g) ** r_i
        w *= Fraction(1, factorial(r_i))
    return w


def correction_polynomial(k: int, cumulants: CumulantVector) -> Poly:
    """Density-correction polynomial Q_k (exact for rational cumulants).

    Q_k has degree at most 3k, the parity of k, and vanishes identically when
    gamma_3, ..., gamma_{k+2} all vanish.
    """
    if k < 1:
        raise ValueError("correction index must be positive")
    cumulants.require_order(k + 2)
    total = Poly()
    for parts in compositions(k):
        w = _composition_weight(parts, cumulants)
        if w == 0:
            continue
        j = sum(parts)
        total = total + w * hermite(k + 2 * j)
    return total


def cdf_correction_polynomial(k: int, cumulants: CumulantVector) -> Poly:
    """CDF-correction polynomial R_k: same sum as Q_k with H_{k+2j-1}."""
    if k < 1:
        raise ValueError("correction index must be positive")
    cumulants.require_order(k + 2)
    total = Poly()
    for parts in compositions(k):
        w = _composition_weight(parts, cumulants)
        if w == 0:
            continue
        j = sum(parts)
        total = total + w * hermite(k + 2 * j - 1)
    return total


@dataclass(frozen=True)
class EdgeworthModel:
    """Correction of order m for a law with the given cumulants.

    Holds the polynomials Q_1..Q_{m-2} (and R_1..R_{m-2} for the CDF).
    Immutable and safe to share across threads.
    """

    order: int
    cumulants: CumulantVector
    q_polys: tuple
    r_polys: tuple

    @classmethod
    def from_cumulants(cls, cumulants, order: Optional[int] = None) -> "EdgeworthModel":
        if not isinstance(cumulants, CumulantVector):
            cumulants = CumulantVector(tuple(cumulants))
        m = cumulants.order if order is None else order
        if m < 2:
            raise ValueError("order must be at least 2")
        cumulants.require_order(m)
        qs = tuple(correction_polynomial(k, cumulants) for k in range(1, m - 1))
        rs = tuple(cdf_correction_polynomial(k, cumulants) for k in range(1, m - 1))
        return cls(order=m, cumulants=cumulants, q_polys=qs, r_polys=rs)

    def q(self, k: int) -> Poly:
        return self.q_polys[k - 1]

    def r(self, k: int) -> Poly:
        return self.r_polys[k - 1]

    def correction_factor(self, n: int, x):
        """1 + sum_k Q_k(x) n**(-k/2); the signed density is phi(x) times this."""
        if n < 1:
            raise ValueError("n must be a positive integer")
        acc = 1.0 if isinstance(x, np.ndarray) else 1
        for k, q in enumerate(self.q_polys, start=1):
            if q.is_zero():
                continue
            acc = acc + q(x) * n ** (-k / 2)
        return acc

    def density(self, n: int, x):
        """Signed corrected density phi_m(x) for the given n."""
        return normal_pdf(x) * self.correction_factor(n, x)

    def cdf(self, n: int, x):
        """Corrected distribution function Phi_m(x); tends to 0/1 at -/+inf."""
        if n < 1:
            raise ValueError("n must be a positive integer")
        corr = 0.0
        for k, rp in enumerate(self.r_polys, start=1):
            if rp.is_zero():
                continue
            corr = corr + rp(x) * n ** (-k / 2)
        return normal_cdf(x) - normal_pdf(x) * corr


class LeadingTerm(NamedTuple):
    """Index and value of the first non-vanishing correction."""

    k: int
    gamma_lead: object


def leading_term(model: EdgeworthModel) -> Optional[LeadingTerm]:
    """The unique k in [1, m-2] with gamma_3 = ... = gamma_{k+1} = 0 and
    gamma_{k+2} != 0, or None when all cumulants up to order m vanish
    (Gaussian-matching case).

    With the lower cumulants vanishing, gamma_{k+2} equals the difference
    between the (k+2)-nd moments of X and of the standard normal.
    """
    c = model.cumulants
    for j in range(3, model.order + 1):
        if c.gamma(j) != 0:
            return LeadingTerm(k=j - 2, gamma_lead=c.gamma(j))
    return None


def truncation_radius(s: float, n: int) -> float:
    """sqrt((s-2) log n): the radius on which phi_m stays positive for large n.

    Provided as a diagnostic; no routine in this package applies it silently.
    """
    if s < 2:
        raise ValueError("moment order s must be >= 2")
    if n < 1:
        raise ValueError("n must be a positive integer")
    return math.sqrt((s - 2) * math.log(n)) if n > 1 else 0.0
