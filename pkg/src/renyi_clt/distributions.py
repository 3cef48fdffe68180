"""Standardized base laws: density, characteristic function, exact moments.

Every spec describes a law with mean 0 and variance 1 and exposes

    density(x)   -- vectorized pdf
    cf(t)        -- vectorized characteristic function E exp(itX) (complex)
    moments(m)   -- raw moments alpha_1..alpha_m, exact rationals wherever
                    the law allows it (m <= 8)
    n_min        -- smallest n for which |cf(t/sqrt(n))|**n is integrable,
                    i.e. for which the normalized sum Z_n has a bounded
                    density recoverable by Fourier inversion

The built-in families:

* ``Uniform``: uniform on (-sqrt(3), sqrt(3)); |cf| ~ 1/|t|, n_min = 2.
* ``StandardizedGamma(alpha)``: (xi - alpha)/sqrt(alpha) for xi ~
  Gamma(alpha); |cf(t)| = (1 + t**2/alpha)**(-alpha/2), n_min is the
  smallest n with n*alpha > 1.
* ``TwoSidedExponential``: Laplace with variance 1; cf = 1/(1 + t**2/2).
* ``GaussianMixture``: finite normal mixture, standardized by construction.
* ``GridDensity``: a tabulated density on a uniform grid; cf and moments by
  quadrature.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb, factorial

import numpy as np
from scipy.integrate import simpson
from scipy.special import gammaln

from .gaussint import double_factorial

__all__ = [
    "DistributionSpec",
    "Uniform",
    "StandardizedGamma",
    "TwoSidedExponential",
    "GaussianMixture",
    "GridDensity",
    "from_name",
]

_SQRT3 = math.sqrt(3.0)


def _exact_sqrt(value):
    """sqrt of a rational as a Fraction, or None when irrational."""
    try:
        frac = Fraction(value)
    except (TypeError, ValueError):
        return None
    if frac < 0:
        return None
    num = math.isqrt(frac.numerator)
    den = math.isqrt(frac.denominator)
    if num * num == frac.numerator and den * den == frac.denominator:
        return Fraction(num, den)
    return None


class DistributionSpec:
    """Interface shared by all standardized base laws."""

    name = "base"
    n_min = 1

    def density(self, x):
        raise NotImplementedError

    def cf(self, t):
        raise NotImplementedError

    def moments(self, order: int):
        raise NotImplementedError

    def _check_order(self, order: int) -> None:
        if not 1 <= order <= 8:
            raise ValueError("moments are provided for orders 1..8")

    def __repr__(self):
        return f"{type(self).__name__}()"


class Uniform(DistributionSpec):
    """Uniform law on (-sqrt(3), sqrt(3))."""

    name = "uniform"
    n_min = 2

    def density(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(np.abs(x) <= _SQRT3, 1.0 / (2.0 * _SQRT3), 0.0)

    def cf(self, t):
        t = np.asarray(t, dtype=float)
        # sin(sqrt(3) t) / (sqrt(3) t) with the removable singularity at 0
        return np.sinc(_SQRT3 * t / np.pi).astype(complex)

    def moments(self, order: int):
        self._check_order(order)
        out = []
        for k in range(1, order + 1):
            out.append(Fraction(3 ** (k // 2), k + 1) if k % 2 == 0 else 0)
        return out


class StandardizedGamma(DistributionSpec):
    """(xi - alpha)/sqrt(alpha) for xi ~ Gamma(alpha, 1); alpha > 0.

    Cumulants: gamma_k = (k-1)! * alpha**(1 - k/2); they (and hence the
    moments) are exact rationals whenever sqrt(alpha) is rational.
    """

    name = "gamma"

    def __init__(self, alpha):
        if not alpha > 0:
            raise ValueError("alpha must be positive")
        self.alpha = alpha
        self.sqrt_alpha = math.sqrt(float(alpha))
        self._exact_root = _exact_sqrt(alpha)
        self.n_min = math.floor(1 / alpha) + 1

    def __repr__(self):
        return f"StandardizedGamma(alpha={self.alpha})"

    def density(self, x):
        x = np.asarray(x, dtype=float)
        y = float(self.alpha) + self.sqrt_alpha * x
        with np.errstate(divide="ignore", invalid="ignore"):
            logpdf = (
                (float(self.alpha) - 1.0) * np.log(y) - y - gammaln(float(self.alpha))
            )
            vals = np.where(y > 0, np.exp(logpdf) * self.sqrt_alpha, 0.0)
        return vals

    def cf(self, t):
        t = np.asarray(t, dtype=float)
        base = 1.0 - 1j * t / self.sqrt_alpha
        return np.power(base, -float(self.alpha)) * np.exp(-1j * t * self.sqrt_alpha)

    def _cumulants(self, order: int):
        root = self._exact_root
        gammas = [0, 1]
        for k in range(3, order + 1):
            if k % 2 == 0:
                g = factorial(k - 1) * Fraction(self.alpha) ** (1 - k // 2)
            elif root is not None:
                g = factorial(k - 1) * root ** (2 - k)
            else:
                g = factorial(k - 1) * float(self.alpha) ** (1 - k / 2)
            gammas.append(g)
        return gammas[:order]

    def moments(self, order: int):
        self._check_order(order)
        gammas = self._cumulants(order)
        # alpha_n = sum_j C(n-1, j-1) gamma_j alpha_{n-j}, alpha_0 = 1
        alpha = [1]
        for n in range(1, order + 1):
            alpha.append(
                sum(
                    comb(n - 1, j - 1) * gammas[j - 1] * alpha[n - j]
                    for j in range(1, n + 1)
                    if gammas[j - 1] != 0
                )
            )
        return alpha[1:]


class TwoSidedExponential(DistributionSpec):
    """Laplace law with variance 1: density exp(-sqrt(2)|x|)/sqrt(2)."""

    name = "two_sided_exponential"
    n_min = 1

    _RATE = math.sqrt(2.0)

    def density(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-self._RATE * np.abs(x)) / self._RATE

    def cf(self, t):
        t = np.asarray(t, dtype=float)
        return (1.0 / (1.0 + t * t / 2.0)).astype(complex)

    def moments(self, order: int):
        self._check_order(order)
        return [
            Fraction(factorial(k), 2 ** (k // 2)) if k % 2 == 0 else 0
            for k in range(1, order + 1)
        ]


class GaussianMixture(DistributionSpec):
    """Finite normal mixture sum_i w_i N(mu_i, sigma_i**2), standardized.

    Construction enforces sum w = 1, sum w mu = 0 and
    sum w (mu**2 + sigma**2) = 1 (exactly for rational parameters, to 1e-10
    otherwise).
    """

    name = "gaussian_mixture"
    n_min = 1

    def __init__(self, weights, means, sigmas):
        if not (len(weights) == len(means) == len(sigmas)) or not weights:
            raise ValueError("weights, means, sigmas must be equal-length, non-empty")
        if any(not s > 0 for s in sigmas):
            raise ValueError("all sigmas must be positive")
        self.weights = tuple(weights)
        self.means = tuple(means)
        self.sigmas = tuple(sigmas)
        exact = self._exact_params() is not None
        tol = 0 if exact else 1e-10
        total = sum(self.weights)
        mean = sum(w * m for w, m in zip(self.weights, self.means))
        second = sum(
            w * (m * m + s * s)
            for w, m, s in zip(self.weights, self.means, self.sigmas)
        )
        if abs(total - 1) > tol or abs(mean) > tol or abs(second - 1) > tol:
            raise ValueError(
                "mixture is not standardized: "
                f"mass={total}, mean={mean}, second moment={second}"
            )

    @classmethod
    def standard_normal(cls) -> "GaussianMixture":
        return cls((1,), (0,), (1,))

    def _exact_params(self):
        try:
            w = [Fraction(v) for v in self.weights]
            m = [Fraction(v) for v in self.means]
            s2 = [Fraction(v) ** 2 for v in self.sigmas]
        except (TypeError, ValueError):
            return None
        return w, m, s2

    def __repr__(self):
        return (
            f"GaussianMixture(weights={self.weights}, means={self.means}, "
            f"sigmas={self.sigmas})"
        )

    def density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x, dtype=float)
        for w, m, s in zip(self.weights, self.means, self.sigmas):
            w, m, s = float(w), float(m), float(s)
            out += w * np.exp(-0.5 * ((x - m) / s) ** 2) / (s * math.sqrt(2 * math.pi))
        return out

    def cf(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for w, m, s in zip(self.weights, self.means, self.sigmas):
            w, m, s = float(w), float(m), float(s)
            out += w * np.exp(1j * m * t - 0.5 * (s * t) ** 2)
        return out

    def moments(self, order: int):
        self._check_order(order)
        exact = self._exact_params()
        if exact is not None:
            ws, ms, s2s = exact
        else:
            ws = [float(v) for v in self.weights]
            ms = [float(v) for v in self.means]
            s2s = [float(v) ** 2 for v in self.sigmas]
        out = []
        for k in range(1, order + 1):
            total = 0
            for w, m, s2 in zip(ws, ms, s2s):
                comp = 0
                for j in range(0, k + 1, 2):
                    # E (m + s Z)**k term with Z**j
                    comp += comb(k, j) * m ** (k - j) * s2 ** (j // 2) * double_factorial(j - 1)
                total += w * comp
            if isinstance(total, Fraction) and total.denominator == 1:
                total = total.numerator
            out.append(total)
        return out


class GridDensity(DistributionSpec):
    """Density tabulated on a uniform grid (linear interpolation off-lattice).

    The tabulation must describe a standardized law: unit mass, zero mean and
    unit variance are verified by Simpson quadrature to 1e-10 at
    construction.  ``n_min`` defaults to 1 and must be supplied by the caller
    when the tabulated law needs more smoothing.
    """

    name = "grid"

    def __init__(self, x, p, n_min: int = 1, check_tol: float = 1e-10):
        x = np.asarray(x, dtype=float)
        p = np.asarray(p, dtype=float)
        if x.ndim != 1 or x.shape != p.shape or x.size < 8:
            raise ValueError("x and p must be equal-length 1-d arrays (>= 8 points)")
        steps = np.diff(x)
        if steps.min() <= 0 or np.ptp(steps) > 1e-9 * steps.mean():
            raise ValueError("x must be an increasing uniform grid")
        if p.min() < 0:
            raise ValueError("tabulated density has negative values")
        self.x = x
        self.p = p
        self.h = float(steps.mean())
        self.n_min = int(n_min)
        mass = simpson(p, dx=self.h)
        mean = simpson(p * x, dx=self.h)
        second = simpson(p * x * x, dx=self.h)
        if (
            abs(mass - 1) > check_tol
            or abs(mean) > check_tol
            or abs(second - 1) > check_tol
        ):
            raise ValueError(
                "tabulated density is not standardized: "
                f"mass={mass}, mean={mean}, second moment={second}"
            )

    def density(self, x):
        x = np.asarray(x, dtype=float)
        return np.interp(x, self.x, self.p, left=0.0, right=0.0)

    def cf(self, t):
        # exact characteristic function of the piecewise-linear density:
        # the hat basis contributes a sinc^2 factor, which also kills the
        # lattice aliases of the plain exponential sum beyond pi/h
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty(t.shape, dtype=complex)
        pw = self.p * self.h
        chunk = max(1, int(2**22 // max(self.p.size, 1)))
        for lo in range(0, t.size, chunk):
            ts = t[lo : lo + chunk]
            lattice = np.exp(1j * np.outer(ts, self.x)) @ pw
            out[lo : lo + chunk] = lattice * np.sinc(ts * self.h / (2 * np.pi)) ** 2
        return out

    def moments(self, order: int):
        self._check_order(order)
        return [
            float(simpson(self.p * self.x**k, dx=self.h))
            for k in range(1, order + 1)
        ]


def from_name(name: str, **params) -> DistributionSpec:
    """Factory for the supported spec names.

    ``uniform``, ``gamma`` (param ``alpha``), ``two_sided_exponential``,
    ``gaussian_mixture`` (params ``weights``, ``means``, ``sigmas``),
    ``gaussian`` (degenerate mixture), ``grid`` (params ``x``, ``p``,
    optional ``n_min``).
    """
    key = name.strip().lower()
    if key == "uniform":
        _require_params(params, set())
        return Uniform()
    if key in ("gamma", "standardized_gamma"):
        _require_params(params, {"alpha"})
        return StandardizedGamma(params["alpha"])
    if key == "two_sided_exponential":
        _require_params(params, set())
        return TwoSidedExponential()
    if key == "gaussian_mixture":
        _require_params(params, {"weights", "means", "sigmas"})
        return GaussianMixture(params["weights"], params["means"], params["sigmas"])
    if key == "gaussian":
        _require_params(params, set())
        return GaussianMixture.standard_normal()
    if key == "grid":
        allowed = {"x", "p", "n_min"}
        missing = {"x", "p"} - set(params)
        extra = set(params) - allowed
        if missing or extra:
            raise ValueError(f"grid spec needs x, p (and optional n_min); got {sorted(params)}")
        return GridDensity(params["x"], params["p"], n_min=params.get("n_min", 1))
    raise ValueError(f"unsupported distribution {name!r}")


def _require_params(params, allowed) -> None:
    got = set(params)
    if got != allowed:
        raise ValueError(
            f"expected parameters {sorted(allowed)}, got {sorted(got)}"
        )
