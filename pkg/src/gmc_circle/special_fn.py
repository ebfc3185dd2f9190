"""Self-contained special functions: gamma, Barnes G, Gauss hypergeometric.

Everything here is pure float64 arithmetic with no dependency outside the
standard library, so the closed-form side of every identity in the toolkit
is independent of the numerical libraries used by the simulation side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DivergenceError, DomainError, ParameterError, PoleError

EULER_GAMMA = 0.5772156649015328606065

# Lanczos approximation, g = 7, 9 coefficients.  Relative error is a few
# ulps over the positive axis, comfortably below the 1e-12 contract.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


def _is_nonpositive_integer(x: float, tol: float = 0.0) -> bool:
    if x > 0.5:
        return False
    r = round(x)
    return abs(x - r) <= tol


def _sinpi(x: float) -> float:
    # sin(pi*x) with the argument reduced exactly in float arithmetic,
    # accurate even very close to integers.
    n = round(x)
    r = x - n
    s = math.sin(math.pi * r)
    return -s if n % 2 else s


def _lanczos_sum(x: float) -> float:
    # x >= 0.5 assumed; returns the rational part A_g(x-1).
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (x - 1.0 + i)
    return acc


def gamma(x: float) -> float:
    """Gamma function for real ``x`` off the non-positive integers."""
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"gamma: non-finite argument {x!r}")
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma: pole at non-positive integer argument {x!r}")
    if x < 0.5:
        # Reflection formula; _sinpi keeps accuracy near the poles.
        return math.pi / (_sinpi(x) * gamma(1.0 - x))
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _SQRT_TWO_PI * t ** (z + 0.5) * math.exp(-t) * _lanczos_sum(x)


def lngamma(x: float) -> float:
    """log Gamma(x) for x > 0 (log-space form of the same approximation)."""
    if not x > 0.0:
        raise DomainError(f"lngamma: argument must be positive, got {x!r}")
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(x))


def rgamma(x: float) -> float:
    """1/Gamma(x); returns 0.0 at the poles instead of raising."""
    if _is_nonpositive_integer(x):
        return 0.0
    return 1.0 / gamma(x)


# ---------------------------------------------------------------------------
# Barnes G
# ---------------------------------------------------------------------------

def _zeta_int(n: int) -> float:
    # Riemann zeta at integer n >= 2: direct sum plus Euler-Maclaurin tail.
    if n < 2:
        raise DomainError("zeta helper defined for integer arguments >= 2")
    k_max = 32
    s = sum(k ** (-float(n)) for k in range(1, k_max))
    k = float(k_max)
    tail = k ** (1.0 - n) / (n - 1.0) + 0.5 * k ** (-float(n))
    tail += n / 12.0 * k ** (-(n + 1.0))
    tail -= n * (n + 1) * (n + 2) / 720.0 * k ** (-(n + 3.0))
    tail += n * (n + 1) * (n + 2) * (n + 3) * (n + 4) / 30240.0 * k ** (-(n + 5.0))
    return s + tail


_ZETA_TABLE = tuple(_zeta_int(n) for n in range(2, 72))


def _log_barnes_taylor(z: float) -> float:
    # log G(1+z) for |z| <= 0.5, from the Weierstrass product resummed as a
    # zeta-weighted power series.
    acc = 0.5 * z * math.log(2.0 * math.pi) - 0.5 * (z + (1.0 + EULER_GAMMA) * z * z)
    zp = z * z
    sign = 1.0
    for m in range(3, 72):
        zp *= z
        term = sign * _ZETA_TABLE[m - 3] * zp / m
        acc += term
        if abs(term) < 1e-18 * (abs(acc) + 1e-30):
            break
        sign = -sign
    return acc


def log_barnes_g(x: float) -> float:
    """log G(x) for x > 0, G the Barnes function (G(1)=1, G(x+1)=Gamma(x)G(x))."""
    if not x > 0.0:
        raise DomainError(f"barnes_g: argument must be positive, got {x!r}")
    shift = 0.0
    while x >= 1.5:
        x -= 1.0
        shift += lngamma(x)
    while x < 0.5:
        shift -= lngamma(x)
        x += 1.0
    return shift + _log_barnes_taylor(x - 1.0)


def barnes_g(x: float) -> float:
    """Barnes G function for x > 0."""
    return math.exp(log_barnes_g(x))


# ---------------------------------------------------------------------------
# Gauss hypergeometric series with connection formula
# ---------------------------------------------------------------------------

_SERIES_MAX_TERMS = 10_000
_SERIES_STOP = 1e-16


@dataclass(frozen=True)
class HypParams:
    """Hypergeometric parameter triple (A, B, C)."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if _is_nonpositive_integer(self.c):
            raise ParameterError(f"hypergeometric C parameter is a non-positive integer: {self.c!r}")

    @classmethod
    def from_gamma_p(cls, gamma_val: float, p: float) -> "HypParams":
        """Parameter map used by the insertion-observable ODE:
        A = -gamma^2 p/4, B = -gamma^2/4, C = gamma^2 (1-p)/4 + 1.
        """
        g4 = gamma_val * gamma_val / 4.0
        return cls(a=-g4 * p, b=-g4, c=g4 * (1.0 - p) + 1.0)


def _is_polynomial_case(a: float, b: float) -> bool:
    def neg_int(v: float) -> bool:
        return v <= 1e-12 and abs(v - round(v)) < 1e-12

    return neg_int(a) or neg_int(b)


def _series_2f1(a: float, b: float, c: float, x: float) -> float:
    total = 1.0
    term = 1.0
    for k in range(_SERIES_MAX_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x
        total += term
        if term == 0.0 or abs(term) < _SERIES_STOP * abs(total):
            return total
    raise DivergenceError(
        f"2F1 series did not converge in {_SERIES_MAX_TERMS} terms for "
        f"(A,B,C,x)=({a},{b},{c},{x})"
    )


def gauss_value(params: HypParams) -> float:
    """F(A,B,C,1) = Gamma(C) Gamma(C-A-B) / (Gamma(C-A) Gamma(C-B)); needs C-A-B > 0."""
    a, b, c = params.a, params.b, params.c
    s = c - a - b
    if s <= 0.0 and not _is_polynomial_case(a, b):
        raise DivergenceError(f"2F1 diverges at x=1 for C-A-B={s!r} <= 0")
    return gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b)


def hyp2f1(params: HypParams, x: float) -> float:
    """Gauss hypergeometric F(A,B,C,x) on x in [0,1].

    Direct series for x <= 1/2; for x > 1/2 the two-term connection formula
    in powers of 1-x, which requires C-A-B non-integer (the series
    terminates when A or B is a non-positive integer, and then it is used
    for every x).  At x=1 the classical Gauss evaluation applies.
    """
    a, b, c = params.a, params.b, params.c
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"hyp2f1 supports x in [0,1], got {x!r}")
    if x == 0.0:
        return 1.0
    if _is_polynomial_case(a, b):
        return _series_2f1(a, b, c, x)
    if x == 1.0:
        return gauss_value(params)
    if x <= 0.5:
        return _series_2f1(a, b, c, x)
    s = c - a - b
    if abs(s - round(s)) < 1e-10:
        raise PoleError(
            f"connection formula degenerates: C-A-B={s!r} is (numerically) an integer; "
            "the toolkit refuses this point rather than taking a limit"
        )
    y = 1.0 - x
    coeff1 = gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b)
    coeff2 = gamma(c) * gamma(-s) * rgamma(a) * rgamma(b)
    part1 = coeff1 * _series_2f1(a, b, a + b - c + 1.0, y) if coeff1 != 0.0 else 0.0
    part2 = coeff2 * y ** s * _series_2f1(c - a, c - b, s + 1.0, y) if coeff2 != 0.0 else 0.0
    return part1 + part2


# ---------------------------------------------------------------------------
# Connection matrix between the bases at x=0 and x=1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConnectionMatrix:
    """2x2 change of basis mapping coefficients (C1, C2) of the expansion at
    t=0 onto coefficients (B1, B2) of the expansion at t=1."""

    m11: float
    m12: float
    m21: float
    m22: float

    def apply(self, c1: float, c2: float) -> tuple[float, float]:
        return (self.m11 * c1 + self.m12 * c2, self.m21 * c1 + self.m22 * c2)

    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21


def _checked_gamma(x: float, label: str) -> float:
    if _is_nonpositive_integer(x, tol=1e-12):
        raise PoleError(f"connection matrix entry has a gamma pole: {label} = {x!r}")
    return gamma(x)


def connection_matrix(gamma_val: float, p: float) -> ConnectionMatrix:
    """Basis-change coefficients for the parameter map (gamma, p), p <= 0.

    Numerator gamma poles (gamma = sqrt(2) makes -1 - gamma^2/2 integral) are
    rejected; a pole in a denominator makes the corresponding entry vanish,
    which is the regular limit (e.g. the second-row first entry at p = 0).
    """
    if not 0.0 < gamma_val < 2.0:
        raise DomainError(f"gamma must lie in (0,2), got {gamma_val!r}")
    if p > 0.0:
        raise DomainError(f"connection matrix defined for p <= 0, got {p!r}")
    g4 = gamma_val * gamma_val / 4.0
    top = _checked_gamma(1.0 + 2.0 * g4, "1 + gamma^2/2")
    bottom = _checked_gamma(-1.0 - 2.0 * g4, "-1 - gamma^2/2")
    left = _checked_gamma(g4 * (1.0 - p) + 1.0, "gamma^2 (1-p)/4 + 1")
    right = _checked_gamma(g4 * (p - 1.0) + 1.0, "gamma^2 (p-1)/4 + 1")
    m11 = top * left * rgamma(1.0 + g4) * rgamma(g4 * (2.0 - p) + 1.0)
    m12 = top * right * rgamma(1.0 + g4) * rgamma(g4 * p + 1.0)
    m21 = bottom * left * rgamma(-g4) * rgamma(-g4 * p)
    m22 = bottom * right * rgamma(-g4) * rgamma(g4 * (p - 2.0))
    return ConnectionMatrix(m11=m11, m12=m12, m21=m21, m22=m22)
