"""Sup-norm expansion of the corrected density and the r = infinity entropy
power branch.

The order-6 corrected density phi_6 attains its maximum at a point

    x*(n) = a_1 n**(-1/2) + a_2 n**(-3/2) + O(n**(-5/2)),
    a_1 = -gamma_3/2,
    a_2 = gamma_3**3/4 - (5/12) gamma_3 gamma_4 + gamma_5/8,

and expanding phi_6 there gives

    ||p_n||_inf = phi(0) * (1 + A/n + B/n**2) + o(n**(-2)),
    A = (1/8) (gamma_4 - (2/3) gamma_3**2),

with B assembled from the correction polynomials evaluated along x*(n).
In entropy-power form,

    N_inf(Z_n) = N_inf(Z) * (1 - At/n + Bt/n**2) + o(n**(-2)),
    At = 2A = (1/4)(gamma_4 - (2/3) gamma_3**2),    Bt = 3A**2 - 2B,

so N_inf(Z_n) is eventually increasing iff gamma_4 > (2/3) gamma_3**2 and
eventually decreasing under the reverse strict inequality.

All coefficient formulas are evaluated in exact rational arithmetic when the
cumulants are rational; floats only appear on conversion at the edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from .cumulants import CumulantVector
from .edgeworth import EdgeworthModel
from .exactpoly import Poly
from .expansion import DECREASING, INCREASING, INDETERMINATE

__all__ = [
    "extremum_series",
    "SupNormExpansion",
    "supnorm_coefficients",
    "ninf_expansion",
    "solve_extremum",
    "monotonicity_prediction_inf",
]


def extremum_series(cumulants: CumulantVector):
    """(a_1, a_2) of the maximizer series x*(n) = a_1/sqrt(n) + a_2/n**(3/2).

    Both vanish for symmetric laws (gamma_3 = gamma_5 = 0).
    """
    cumulants.require_order(5)
    g3 = cumulants.gamma(3)
    g4 = cumulants.gamma(4)
    g5 = cumulants.gamma(5)
    a1 = -Fraction(1, 2) * g3
    a2 = Fraction(1, 4) * g3**3 - Fraction(5, 12) * g3 * g4 + Fraction(1, 8) * g5
    return a1, a2


@dataclass(frozen=True)
class SupNormExpansion:
    """Coefficients of the sup-norm and N_inf expansions.

    a1, a2 locate the maximizer; b1..b4 collect the contributions of the four
    correction polynomials at the maximizer; A, B are the n**(-1) and
    n**(-2) sup-norm coefficients; A_tilde = 2A and B_tilde = 3A**2 - 2B are
    their entropy-power counterparts.
    """

    a1: object
    a2: object
    b1: object
    b2: object
    b3: object
    b4: object
    A: object
    B: object
    A_tilde: object
    B_tilde: object


def supnorm_coefficients(cumulants: CumulantVector) -> SupNormExpansion:
    """All coefficients of the expansion of ||p_n||_inf / phi(0)."""
    cumulants.require_order(6)
    g3 = cumulants.gamma(3)
    g4 = cumulants.gamma(4)
    g5 = cumulants.gamma(5)
    g6 = cumulants.gamma(6)
    a1, a2 = extremum_series(cumulants)

    b1 = Fraction(1, 6) * g3 * (a1**3 - 3 * a2)
    b2 = (Fraction(45, 72) * g3**2 - Fraction(6, 24) * g4) * a1**2
    b3 = (
        Fraction(945, 1296) * g3**3
        - Fraction(105, 144) * g3 * g4
        + Fraction(15, 120) * g5
    ) * a1
    b4 = (
        Fraction(10395, 31104) * g3**4
        - Fraction(945, 1728) * g3**2 * g4
        + Fraction(105, 720) * g3 * g5
        + Fraction(105, 1152) * g4**2
        - Fraction(15, 720) * g6
    )

    # coefficient of 1/n in the correction factor at the maximizer
    q_lin = Fraction(1, 4) * g3**2 + Fraction(3, 24) * g4 - Fraction(15, 72) * g3**2
    b_sum = b1 + b2 + b3 + b4
    A = -Fraction(1, 2) * a1**2 + q_lin
    B = b_sum + Fraction(1, 8) * a1**4 - a1 * a2 - Fraction(1, 2) * q_lin * a1**2
    A_tilde = 2 * A
    B_tilde = 3 * A**2 - 2 * B
    return SupNormExpansion(
        a1=a1, a2=a2, b1=b1, b2=b2, b3=b3, b4=b4,
        A=A, B=B, A_tilde=A_tilde, B_tilde=B_tilde,
    )


def ninf_expansion(cumulants: CumulantVector):
    """(A_tilde, B_tilde) of N_inf(Z_n) = N_inf(Z)(1 - A_tilde/n + B_tilde/n**2)."""
    sn = supnorm_coefficients(cumulants)
    return sn.A_tilde, sn.B_tilde


def solve_extremum(cumulants: CumulantVector, n: int) -> float:
    """Root of phi_6'(x) nearest the origin, by Newton iteration safeguarded
    with bisection on [-1, 1], started from the series prediction a_1/sqrt(n).

    Raises when the derivative has no sign change on [-1, 1] or when the
    corrected density is not positive near the origin (n too small).
    """
    cumulants.require_order(6)
    if n < 1:
        raise ValueError("n must be a positive integer")
    model = EdgeworthModel.from_cumulants(cumulants, order=6)

    # phi_6'(x) = phi(x) * g(x) with g built from the correction polynomials
    factor = Poly((1,))
    for k in range(1, 5):
        factor = factor + float(n) ** (-k / 2) * model.q(k)
    g = -Poly.x() * factor
    for k in range(1, 5):
        g = g + float(n) ** (-k / 2) * model.q(k).derivative()
    g_prime = g.derivative()

    a1, _ = extremum_series(cumulants)
    x0 = float(a1) / sqrt(n)
    if factor(0.0) <= 0 or factor(x0) <= 0:
        raise ValueError(f"corrected density not positive near 0 at n={n}")

    lo, hi = -1.0, 1.0
    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0:
        return lo
    if g_hi == 0:
        return hi
    if (g_lo > 0) == (g_hi > 0):
        raise ValueError("extremum not localized in [-1, 1]")

    x = min(max(x0, lo), hi)
    for _ in range(100):
        gx = g(x)
        if gx == 0:
            return x
        if (gx > 0) == (g_lo > 0):
            lo = x
        else:
            hi = x
        dgx = g_prime(x)
        step_ok = dgx != 0
        if step_ok:
            x_new = x - gx / dgx
            step_ok = lo < x_new < hi
        if not step_ok:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) < 1e-13:
            return x_new
        x = x_new
    return x


def monotonicity_prediction_inf(cumulants: CumulantVector) -> str:
    """Eventual monotonicity of N_inf(Z_n): increasing iff
    gamma_4 > (2/3) gamma_3**2, decreasing under the reverse strict
    inequality, indeterminate at equality.
    """
    cumulants.require_order(4)
    g3 = cumulants.gamma(3)
    g4 = cumulants.gamma(4)
    gap = g4 - Fraction(2, 3) * g3 * g3
    if gap > 0:
        return INCREASING
    if gap < 0:
        return DECREASING
    return INDETERMINATE
