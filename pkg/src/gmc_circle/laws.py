"""Closed-form laws of the circle chaos mass and related exact quantities.

The moment formula E[Y^p] = Gamma(1 - p gamma^2/4) / Gamma(1 - gamma^2/4)^p
(valid for p < 4/gamma^2) drives everything here: the explicit density and
sampler of the total mass Y, the shift recursion for the unnormalized
moments U(gamma, p), the circular Selberg (Morris) integral oracle, the
degenerate- and dual-insertion product laws, the power-law tail constant,
and the critical limit density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import tanhsinh
from scipy.optimize import brentq
from scipy.special import k0 as _bessel_k0, k1 as _bessel_k1

from . import status
from .errors import DomainError, MomentBlowupError, QuadratureError
from .special_fn import EULER_GAMMA, lngamma

_TWO_PI = 2.0 * math.pi


def _check_gamma(gamma: float) -> None:
    if not 0.0 < gamma < 2.0:
        raise DomainError(f"gamma must lie in (0,2), got {gamma!r}")


def _check_moment_order(gamma: float, p: float) -> None:
    limit = 4.0 / (gamma * gamma)
    if p >= limit:
        raise MomentBlowupError(
            f"moment of order p={p!r} is infinite for gamma={gamma!r}: needs p < 4/gamma^2 = {limit!r}"
        )


def exact_moment(gamma: float, p: float) -> float:
    """E[Y_gamma^p] = Gamma(1 - p gamma^2/4) / Gamma(1 - gamma^2/4)^p, p < 4/gamma^2."""
    _check_gamma(gamma)
    _check_moment_order(gamma, p)
    g4 = gamma * gamma / 4.0
    return math.exp(lngamma(1.0 - p * g4) - p * lngamma(1.0 - g4))


def u_value(gamma: float, p: float) -> float:
    """Unnormalized moment U(gamma,p) = E[(int e^{(gamma/2)X} dtheta)^p] = (2 pi)^p E[Y^p]."""
    return _TWO_PI**p * exact_moment(gamma, p)


def shift_ratio(gamma: float, p: float) -> float:
    """Exact ratio U(gamma,p)/U(gamma,p-1) from the connection coefficients:
    2 pi Gamma(1 - p gamma^2/4) / (Gamma(1 - gamma^2/4) Gamma(1 - (p-1) gamma^2/4)).
    """
    _check_gamma(gamma)
    if p > 0.0:
        raise DomainError(f"shift ratio is stated for p <= 0, got {p!r}")
    g4 = gamma * gamma / 4.0
    return _TWO_PI * math.exp(
        lngamma(1.0 - p * g4) - lngamma(1.0 - g4) - lngamma(1.0 - (p - 1.0) * g4)
    )


# ---------------------------------------------------------------------------
# Exact law of the total mass
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FbLaw:
    """Law of the normalized mass: Y = (1/beta) Z^{-gamma^2/4}, Z standard exponential,
    with beta = Gamma(1 - gamma^2/4)."""

    gamma: float
    beta: float = field(init=False)

    def __post_init__(self):
        _check_gamma(self.gamma)
        object.__setattr__(self, "beta", math.exp(lngamma(1.0 - self.gamma * self.gamma / 4.0)))

    @property
    def _tail_exponent(self) -> float:
        return 4.0 / (self.gamma * self.gamma)

    def density(self, y) -> np.ndarray | float:
        q = self._tail_exponent
        y_arr = np.asarray(y, dtype=float)
        out = np.zeros_like(y_arr)
        pos = y_arr > 0.0
        by = self.beta * y_arr[pos]
        out[pos] = q * self.beta * by ** (-q - 1.0) * np.exp(-(by**-q))
        return float(out) if np.ndim(y) == 0 else out

    def cdf(self, y) -> np.ndarray | float:
        q = self._tail_exponent
        y_arr = np.asarray(y, dtype=float)
        out = np.zeros_like(y_arr)
        pos = y_arr > 0.0
        out[pos] = np.exp(-((self.beta * y_arr[pos]) ** -q))
        return float(out) if np.ndim(y) == 0 else out

    def ppf(self, u) -> np.ndarray | float:
        return (-np.log(u)) ** (-1.0 / self._tail_exponent) / self.beta

    def median(self) -> float:
        return float(self.ppf(0.5))

    def sample(self, rng: np.random.Generator, size: int | None = None):
        """Exact sampler via the exponential representation."""
        z = rng.standard_exponential(size)
        return z ** (-self.gamma * self.gamma / 4.0) / self.beta


# ---------------------------------------------------------------------------
# Morris integral oracle (independent quadrature route to the integer moments)
# ---------------------------------------------------------------------------

def _tanhsinh_integral(f, a: float, b: float, rtol: float) -> float:
    res = tanhsinh(f, a, b, rtol=rtol, atol=0.0)
    if not np.all(res.success):
        raise QuadratureError(f"tanh-sinh quadrature failed on [{a}, {b}] at rtol={rtol}")
    return float(res.integral)


def morris_oracle(gamma: float, p: int, rtol: float = 1e-9) -> float:
    """Integer moment of Y by direct quadrature of the circular Selberg integrand.

    One rotation is factored out: p=2 reduces to a 1-D integral, p=3 to a 2-D
    iterated one.  The pair-interaction singularities |theta_i - theta_j|^{-gamma^2/2}
    are integrable and handled by tanh-sinh quadrature.
    """
    _check_gamma(gamma)
    if p not in (2, 3):
        raise DomainError(f"morris_oracle supports p in {{2, 3}}, got {p!r}")
    _check_moment_order(gamma, float(p))
    s = gamma * gamma / 2.0

    if p == 2:
        # (1/2pi) int_0^{2pi} |1-e^{i phi}|^{-s} dphi = (1/pi) int_0^pi (2 sin x)^{-s} dx
        return _tanhsinh_integral(lambda x: (2.0 * np.sin(x)) ** (-s), 0.0, math.pi, rtol) / math.pi

    def chord(d):
        return 2.0 * np.abs(np.sin(0.5 * d))

    def inner(phi1: float) -> float:
        def f(phi2):
            return (chord(phi2) * chord(phi1 - phi2)) ** (-s)

        return _tanhsinh_integral(f, 0.0, phi1, rtol) + _tanhsinh_integral(f, phi1, _TWO_PI, rtol)

    def outer(phi1_arr):
        return np.array([chord(v) ** (-s) * inner(v) for v in np.atleast_1d(phi1_arr)])

    return _tanhsinh_integral(outer, 0.0, _TWO_PI, rtol) / (_TWO_PI**2)


# ---------------------------------------------------------------------------
# Insertion product laws
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LawPair:
    """Exact moment of a weighted-mass observable plus its product-law decomposition:
    the observable equals Y * X^{exponent} in law with X ~ Beta(beta_a, beta_b)."""

    moment: float
    beta_a: float
    beta_b: float
    exponent: float
    status: str


def beta_moment(a: float, b: float, s: float) -> float:
    """E[X^s] for X ~ Beta(a, b); requires a + s > 0."""
    if a <= 0.0 or b <= 0.0:
        raise DomainError("beta parameters must be positive")
    if a + s <= 0.0:
        raise MomentBlowupError(f"Beta({a},{b}) moment of order {s} is infinite")
    return math.exp(lngamma(a + s) - lngamma(a) + lngamma(a + b) - lngamma(a + b + s))


def sample_beta(rng: np.random.Generator, a: float, b: float, size: int | None = None):
    """Beta variate from the ratio of two gamma variates (exact in law)."""
    x = rng.gamma(a, size=size)
    y = rng.gamma(b, size=size)
    return x / (x + y)


def corollary_law_pair(gamma: float, p: float) -> LawPair:
    """Degenerate-insertion observable (weight |1-e^{i theta}|^{gamma^2/2}):
    moment formula and the decomposition Y * X1^{-gamma^2/4}, X1 ~ Beta(1+gamma^2/4, gamma^2/4)."""
    _check_gamma(gamma)
    _check_moment_order(gamma, p)
    g4 = gamma * gamma / 4.0
    log_m = (
        lngamma(1.0 - p * g4)
        - p * lngamma(1.0 - g4)
        + lngamma(1.0 + 2.0 * g4)
        + lngamma(1.0 + (1.0 - p) * g4)
        - lngamma(1.0 + g4)
        - lngamma(1.0 + (2.0 - p) * g4)
    )
    return LawPair(
        moment=math.exp(log_m),
        beta_a=1.0 + g4,
        beta_b=g4,
        exponent=-g4,
        status=status.PROVED_IDENTITY,
    )


def conjecture_law_pair(gamma: float, p: float) -> LawPair:
    """Dual-insertion observable (weight |1-e^{i theta}|^2): conjectured moment and
    decomposition Y * X2^{-1}, X2 ~ Beta(1+4/gamma^2, 4/gamma^2)."""
    _check_gamma(gamma)
    _check_moment_order(gamma, p)
    g4 = gamma * gamma / 4.0
    q = 1.0 / g4  # 4/gamma^2
    log_m = (
        lngamma(1.0 - p * g4)
        - p * lngamma(1.0 - g4)
        + lngamma(1.0 + 2.0 * q)
        + lngamma(1.0 + q - p)
        - lngamma(1.0 + q)
        - lngamma(1.0 + 2.0 * q - p)
    )
    return LawPair(
        moment=math.exp(log_m),
        beta_a=1.0 + q,
        beta_b=q,
        exponent=-1.0,
        status=status.CONJECTURE,
    )


# ---------------------------------------------------------------------------
# Tail constant and critical limit
# ---------------------------------------------------------------------------

def tail_constant(gamma: float) -> float:
    """Universal constant R1(gamma) in the power-law tail of 1-D chaos masses:
    (2 pi)^{4/gamma^2 - 1} / ((1 - gamma^2/4) Gamma(1 - gamma^2/4)^{4/gamma^2})."""
    _check_gamma(gamma)
    g4 = gamma * gamma / 4.0
    q = 1.0 / g4
    return math.exp((q - 1.0) * math.log(_TWO_PI) - math.log(1.0 - g4) - q * lngamma(1.0 - g4))


def critical_density(y) -> np.ndarray | float:
    """Density y^{-2} exp(-1/y) of twice the critical derivative-martingale mass;
    equivalently ln of that variable is standard Gumbel."""
    y_arr = np.asarray(y, dtype=float)
    out = np.zeros_like(y_arr)
    pos = y_arr > 0.0
    out[pos] = y_arr[pos] ** -2.0 * np.exp(-1.0 / y_arr[pos])
    return float(out) if np.ndim(y) == 0 else out


# ---------------------------------------------------------------------------
# Sum of two independent standard Gumbel laws (limit shape of recentered maxima)
# ---------------------------------------------------------------------------

GUMBEL_CONV_MEAN = 2.0 * EULER_GAMMA
GUMBEL_CONV_VARIANCE = math.pi * math.pi / 3.0


def gumbel_conv_cdf(x) -> np.ndarray | float:
    """CDF of G1 + G2 for independent standard Gumbels: s K_1(s) with s = 2 e^{-x/2}."""
    x_arr = np.asarray(x, dtype=float)
    s = 2.0 * np.exp(-0.5 * x_arr)
    out = np.where(s < 1e-6, 1.0, s * _bessel_k1(np.maximum(s, 1e-6)))
    return float(out) if np.ndim(x) == 0 else out


def gumbel_conv_pdf(x) -> np.ndarray | float:
    """Density 2 e^{-x} K_0(2 e^{-x/2})."""
    x_arr = np.asarray(x, dtype=float)
    s = 2.0 * np.exp(-0.5 * x_arr)
    out = 2.0 * np.exp(-x_arr) * _bessel_k0(np.maximum(s, 1e-300))
    return float(out) if np.ndim(x) == 0 else out


def gumbel_conv_median() -> float:
    return float(brentq(lambda x: gumbel_conv_cdf(x) - 0.5, -5.0, 10.0, xtol=1e-12))
