"""Asymptotic expansion coefficients for L^r norms and Renyi entropies of
normalized sums.

Everything here is organized around the expansion, valid when the base law
has enough moments (s >= 2, m = [s]):

    int p_n(x)**r dx = int phi(x)**r dx * (1 + sum_{j<=J} a_j n**(-j))
                       + o(n**(-(s-2)/2)),        J = [(m-2)/2],

with coefficients

    a_j * int phi**r = sum (r)_{k_1+...+k_{2j}} / (k_1! ... k_{2j}!)
                       * int Q_1**k_1 ... Q_{2j}**k_{2j} phi**r dx

over non-negative k_1..k_{2j} with k_1 + 2 k_2 + ... + 2j k_{2j} = 2j, where
(r)_k = r (r-1) ... (r-k+1) is the falling factorial.  Odd half-powers drop
out by parity, so the series runs over integer powers of 1/n.

Pushing the a-series through log and power maps yields the entropy and
entropy-power expansions

    h_r(Z_n) = h_r(Z) + sum b_j n**(-j) + o(n**(-(s-2)/2)),
    N_r(Z_n) = N_r(Z) * (1 + sum c_j n**(-j)) + o(n**(-(s-2)/2)),

with b-series = -1/(r-1) * log(a-series) and
c-series = (a-series)**(-2/(r-1)); in particular c_1 = 2 b_1 and

    b_1 = b(r) = -(1/r) * [ (2-r)/12 * gamma_3**2 + (r-1)/8 * gamma_4 ],

extended by continuity to b(1) = -gamma_3**2/12 and
b(inf) = gamma_3**2/12 - gamma_4/8.  The sign of b(r) decides the eventual
monotonicity of the entropy power sequence N_r(Z_n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .cumulants import CumulantVector, compositions
from .edgeworth import correction_polynomial
from .exactpoly import Poly
from .gaussint import gauss_power_integral, gauss_power_mass

__all__ = [
    "TruncatedSeries",
    "falling_factorial",
    "a_coefficient",
    "a1_closed_form",
    "a2_from_integrals",
    "b_coefficient",
    "ExpansionCoefficients",
    "entropy_expansion",
    "leading_entropy_coefficient",
    "kl_rate_coefficient",
    "sign_change_threshold",
    "monotonicity_prediction",
    "gaussian_renyi_entropy",
    "gaussian_entropy_power",
    "INCREASING",
    "DECREASING",
    "INDETERMINATE",
]

INCREASING = "eventually_increasing"
DECREASING = "eventually_decreasing"
INDETERMINATE = "indeterminate"


class TruncatedSeries:
    """Formal series in u = n**(-1/2), truncated at a fixed order.

    ``coeffs[i]`` multiplies u**i.  ``remainder_exponent`` rho tags the
    o(n**(-rho)) remainder the series carries; arithmetic takes the minimum
    of the operands' tags and the minimum of their orders, so a result never
    claims accuracy its inputs did not have.
    """

    __slots__ = ("coeffs", "remainder_exponent")

    def __init__(self, coeffs, remainder_exponent=math.inf):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("series needs at least the constant coefficient")
        self.remainder_exponent = remainder_exponent

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i <= self.order else 0

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)}, rho={self.remainder_exponent})"

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, float, Fraction)):
            return TruncatedSeries((other,) + (0,) * self.order, math.inf)
        return None

    def _meet(self, other):
        return (
            min(self.order, other.order),
            min(self.remainder_exponent, other.remainder_exponent),
        )

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        m, rho = self._meet(other)
        return TruncatedSeries(
            [self.coeff(i) + other.coeff(i) for i in range(m + 1)], rho
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.remainder_exponent)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, Fraction)):
            return TruncatedSeries(
                [c * other for c in self.coeffs], self.remainder_exponent
            )
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        m, rho = self._meet(other)
        out = [0] * (m + 1)
        for i, a in enumerate(self.coeffs[: m + 1]):
            if a == 0:
                continue
            for j in range(m + 1 - i):
                b = other.coeff(j)
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(out, rho)

    __rmul__ = __mul__

    # -- compositions ----------------------------------------------------

    def _deviation(self):
        """y with self = c0 * (1 + y); y has zero constant term."""
        c0 = self.coeffs[0]
        return TruncatedSeries(
            [0] + [c / c0 for c in self.coeffs[1:]], self.remainder_exponent
        )

    def log(self) -> "TruncatedSeries":
        """Truncated composition with log; requires positive constant term."""
        c0 = self.coeffs[0]
        if not c0 > 0:
            raise ValueError("series log needs a positive constant term")
        y = self._deviation()
        out = TruncatedSeries(
            (math.log(c0),) + (0,) * self.order, self.remainder_exponent
        )
        power = y
        for i in range(1, self.order + 1):
            out = out + power * Fraction((-1) ** (i + 1), i)
            if i < self.order:
                power = power * y
        return out

    def exp(self) -> "TruncatedSeries":
        """Truncated composition with exp."""
        c0 = self.coeffs[0]
        y = TruncatedSeries(
            (0,) + self.coeffs[1:], self.remainder_exponent
        )
        out = TruncatedSeries((1,) + (0,) * self.order, self.remainder_exponent)
        power = y
        for i in range(1, self.order + 1):
            out = out + power * Fraction(1, factorial(i))
            if i < self.order:
                power = power * y
        return out * math.exp(c0)

    def pow(self, q) -> "TruncatedSeries":
        """Truncated binomial composition (1 + y)**q; constant term must be > 0."""
        c0 = self.coeffs[0]
        if not c0 > 0:
            raise ValueError("series pow needs a positive constant term")
        y = self._deviation()
        out = TruncatedSeries((1,) + (0,) * self.order, self.remainder_exponent)
        power = y
        coef = 1
        for i in range(1, self.order + 1):
            coef = coef * (q - (i - 1)) / i
            out = out + power * coef
            if i < self.order:
                power = power * y
        scale = c0**q if isinstance(q, int) else float(c0) ** q
        return out * scale


def falling_factorial(r, k: int):
    """(r)_k = r (r-1) ... (r-k+1), with (r)_0 = 1."""
    out = 1
    for i in range(k):
        out = out * (r - i)
    return out


def _require_r(r) -> None:
    if not r > 1:
        raise ValueError(f"index r must exceed 1, got {r}")


def a_coefficient(j: int, r: float, cumulants: CumulantVector) -> float:
    """Normalized coefficient a_j of n**(-j) in the L^r-norm expansion.

    Assembled generically for any j: enumerate the exponent tuples, multiply
    out the correction polynomials exactly, integrate against phi**r, divide
    by int phi**r.
    """
    if j < 1:
        raise ValueError("coefficient index must be positive")
    _require_r(r)
    cumulants.require_order(2 * j + 2)
    qs = [correction_polynomial(i, cumulants) for i in range(1, 2 * j + 1)]
    total = 0.0
    for ks in compositions(2 * j):
        prod = Poly((1,))
        for q, k_i in zip(qs, ks):
            if k_i == 0:
                continue
            if q.is_zero():
                prod = Poly()
                break
            prod = prod * q**k_i
        if prod.is_zero():
            continue
        weight = falling_factorial(r, sum(ks))
        for k_i in ks:
            weight /= factorial(k_i)
        total += weight * gauss_power_integral(prod, r)
    return total / gauss_power_mass(r)


def a1_closed_form(r: float, cumulants: CumulantVector) -> float:
    """Closed form for A_1 = a_1 * int phi**r, the n**(-1) term of int p_n**r:

        A_1(r) = (r-1) / ((2 pi)**((r-1)/2) r**(3/2))
                 * [ (2-r)/12 * gamma_3**2 + (r-1)/8 * gamma_4 ].
    """
    _require_r(r)
    cumulants.require_order(4)
    g3 = float(cumulants.gamma(3))
    g4 = float(cumulants.gamma(4))
    bracket = (2 - r) / 12 * g3**2 + (r - 1) / 8 * g4
    pref = math.exp(-0.5 * (r - 1) * math.log(2 * math.pi) - 1.5 * math.log(r))
    return (r - 1) * pref * bracket


def a2_from_integrals(r: float, cumulants: CumulantVector) -> float:
    """A_2 = a_2 * int phi**r assembled term by term:

        A_2 = r int Q_4 phi**r + (r)_2/2 int (Q_2**2 + 2 Q_1 Q_3) phi**r
              + (r)_3/2 int Q_1**2 Q_2 phi**r + (r)_4/24 int Q_1**4 phi**r.
    """
    _require_r(r)
    cumulants.require_order(6)
    q1 = correction_polynomial(1, cumulants)
    q2 = correction_polynomial(2, cumulants)
    q3 = correction_polynomial(3, cumulants)
    q4 = correction_polynomial(4, cumulants)
    total = r * gauss_power_integral(q4, r)
    total += (
        falling_factorial(r, 2) / 2 * gauss_power_integral(q2 * q2 + 2 * q1 * q3, r)
    )
    total += falling_factorial(r, 3) / 2 * gauss_power_integral(q1 * q1 * q2, r)
    total += falling_factorial(r, 4) / 24 * gauss_power_integral(q1**4, r)
    return total


def b_coefficient(r, cumulants: CumulantVector):
    """First-order entropy coefficient b(r), including the limit branches:

        b(r)   = -(1/r) [ (2-r)/12 gamma_3**2 + (r-1)/8 gamma_4 ]  (1 < r < inf)
        b(1)   = -gamma_3**2 / 12
        b(inf) = gamma_3**2 / 12 - gamma_4 / 8

    Exact (Fraction) when the cumulants and r are rational.
    """
    cumulants.require_order(4)
    g3 = cumulants.gamma(3)
    g4 = cumulants.gamma(4)
    third = Fraction(1, 12)
    eighth = Fraction(1, 8)
    if r == math.inf:
        return third * g3**2 - eighth * g4
    if r == 1:
        return -third * g3**2
    if not r > 1:
        raise ValueError(f"index r must be >= 1 (or inf), got {r}")
    return -((2 - r) * third * g3**2 + (r - 1) * eighth * g4) / r


@dataclass(frozen=True)
class ExpansionCoefficients:
    """a_j, b_j, c_j up to J = [(m-2)/2] for a given index r.

    The c-series satisfies 1 + sum c_j n**(-j) = (1 + sum a_j n**(-j))**(-2/(r-1))
    truncated at order J; in particular c_1 = 2 b_1.
    """

    a: tuple
    b: tuple
    c: tuple
    r: float
    cumulants: CumulantVector
    remainder_exponent: float

    @property
    def terms(self) -> int:
        return len(self.a)

    def entropy_offset(self, n: int) -> float:
        """sum_j b_j n**(-j): the predicted h_r(Z_n) - h_r(Z)."""
        return sum(bj * n ** -(j + 1) for j, bj in enumerate(self.b))

    def entropy_power_factor(self, n: int) -> float:
        """1 + sum_j c_j n**(-j): the predicted N_r(Z_n) / N_r(Z)."""
        return 1.0 + sum(cj * n ** -(j + 1) for j, cj in enumerate(self.c))


def entropy_expansion(m: int, r: float, cumulants: CumulantVector) -> ExpansionCoefficients:
    """Entropy and entropy-power expansion coefficients through order
    J = [(m-2)/2], where m is the available (integer) moment order.

    For m <= 3 the coefficient lists are empty and only the remainder tag
    rho = (m-2)/2 survives.
    """
    _require_r(r)
    if m < 2:
        raise ValueError("moment order m must be at least 2")
    terms = (m - 2) // 2
    rho = (m - 2) / 2
    a = tuple(a_coefficient(j, r, cumulants) for j in range(1, terms + 1))
    if terms == 0:
        return ExpansionCoefficients(
            a=(), b=(), c=(), r=r, cumulants=cumulants, remainder_exponent=rho
        )
    coeffs = [1.0] + [0.0] * (2 * terms)
    for j, aj in enumerate(a, start=1):
        coeffs[2 * j] = aj
    series = TruncatedSeries(coeffs, rho)
    b_series = series.log() * (-1.0 / (r - 1))
    c_series = series.pow(-2.0 / (r - 1))
    b = tuple(b_series.coeff(2 * j) for j in range(1, terms + 1))
    c = tuple(c_series.coeff(2 * j) for j in range(1, terms + 1))
    return ExpansionCoefficients(
        a=a, b=b, c=c, r=r, cumulants=cumulants, remainder_exponent=rho
    )


def leading_entropy_coefficient(k: int, r: float, gamma_2k):
    """Leading entropy coefficient b_{k-1} when the first 2k-1 moments match
    the Gaussian ones:

        b_{k-1} = gamma_{2k} / (2**k k!) * (1/r - 1)**(k-1).
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    _require_r(r)
    if gamma_2k == 0:
        return 0.0
    return gamma_2k * Fraction(1, 2**k * factorial(k)) * (1 / r - 1) ** (k - 1)


def kl_rate_coefficient(r, cumulants: CumulantVector):
    """B_1(r) = -b(r): the n**(-1) rate of h_r(Z) - h_r(Z_n).

    Positive B_1 means the Renyi 'distance' to the Gaussian shrinks like a
    KL divergence would; it turns negative exactly for r beyond
    :func:`sign_change_threshold` when that threshold exists.
    """
    return -b_coefficient(r, cumulants)


def sign_change_threshold(cumulants: CumulantVector):
    """r_0 = (4 gamma_3**2 - 3 gamma_4) / (2 gamma_3**2 - 3 gamma_4), the index
    above which B_1(r) < 0.  Defined only when gamma_3 != 0 and
    gamma_4 < (2/3) gamma_3**2; returns None otherwise.
    """
    cumulants.require_order(4)
    g3 = cumulants.gamma(3)
    g4 = cumulants.gamma(4)
    if g3 == 0:
        return None
    g32 = g3 * g3
    if not g4 < Fraction(2, 3) * g32:
        return None
    return (4 * g32 - 3 * g4) / (2 * g32 - 3 * g4)


def monotonicity_prediction(r, cumulants: CumulantVector) -> str:
    """Eventual monotonicity of N_r(Z_n), decided by the sign of b(r):
    increasing when b(r) < 0, decreasing when b(r) > 0, indeterminate at 0.
    Accepts 1 <= r <= inf.
    """
    b = b_coefficient(r, cumulants)
    if b < 0:
        return INCREASING
    if b > 0:
        return DECREASING
    return INDETERMINATE


def gaussian_renyi_entropy(r) -> float:
    """h_r of the standard normal: (1/2) log(2 pi) + log(r)/(2(r-1)),
    with the limits (1/2) log(2 pi e) at r = 1 and (1/2) log(2 pi) at r = inf.
    """
    if r == 1:
        return 0.5 * math.log(2 * math.pi * math.e)
    if r == math.inf:
        return 0.5 * math.log(2 * math.pi)
    _require_r(r)
    return 0.5 * math.log(2 * math.pi) + math.log(r) / (2 * (r - 1))


def gaussian_entropy_power(r) -> float:
    """N_r of the standard normal: 2 pi r**(1/(r-1)) (2 pi e at r=1, 2 pi at inf)."""
    return math.exp(2 * gaussian_renyi_entropy(r))
