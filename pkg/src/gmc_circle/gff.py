"""Truncated Gaussian free field on the unit circle via random Fourier series.

The field is X_N(theta) = sum_{n=1}^{N} sqrt(2/n) (a_n cos n theta + b_n sin n theta)
with a_n, b_n independent standard normals, which reproduces the covariance
C_N(phi) = sum_{n<=N} (2/n) cos(n phi) exactly at every truncation level; as
N grows this converges to the log kernel 2 ln 1/|e^{i theta} - e^{i theta'}|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AliasingError, DomainError


def harmonic_number(n: int) -> float:
    """H_n = sum_{k=1}^{n} 1/k."""
    if n < 0:
        raise DomainError(f"harmonic_number needs n >= 0, got {n}")
    return float(np.sum(1.0 / np.arange(1, n + 1)))


def pointwise_variance(n_modes: int) -> float:
    """Exact variance of the truncated field at any point: 2 H_N."""
    return 2.0 * harmonic_number(n_modes)


@dataclass(frozen=True)
class FourierField:
    """One realization of the truncated field.

    Coefficients are stored with the sqrt(2/n) mode weights already applied,
    so cos_coeffs[n-1] ~ N(0, 2/n).
    """

    n_modes: int
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    def __post_init__(self):
        if self.n_modes < 1:
            raise DomainError("FourierField needs at least one mode")
        if len(self.cos_coeffs) != self.n_modes or len(self.sin_coeffs) != self.n_modes:
            raise DomainError("coefficient arrays must have length n_modes")


@dataclass(frozen=True)
class FieldGrid:
    """Field values on the uniform grid theta_j = 2 pi j / M."""

    m_points: int
    values: np.ndarray
    n_modes: int


def sample_field(n_modes: int, rng: np.random.Generator) -> FourierField:
    """Draw a field realization from ``rng``.

    The 2N unit normals are consumed interleaved (cos_1, sin_1, cos_2, ...),
    so the first 2N' draws of a deeper field coincide with a direct draw at
    truncation N' < N.  Refinement ladders rely on this nesting.
    """
    if n_modes < 1:
        raise DomainError(f"n_modes must be >= 1, got {n_modes}")
    z = rng.standard_normal(2 * n_modes)
    scale = np.sqrt(2.0 / np.arange(1, n_modes + 1))
    return FourierField(n_modes=n_modes, cos_coeffs=z[0::2] * scale, sin_coeffs=z[1::2] * scale)


def _spectrum(field: FourierField, m_points: int) -> np.ndarray:
    n = field.n_modes
    spec = np.zeros(m_points // 2 + 1, dtype=np.complex128)
    spec[1 : n + 1] = 0.5 * m_points * (field.cos_coeffs - 1j * field.sin_coeffs)
    if n == m_points // 2:
        # Nyquist mode: cosine representable on the grid, sine vanishes there.
        spec[n] = m_points * field.cos_coeffs[n - 1]
    return spec


def evaluate_on_grid(field: FourierField, m_points: int) -> FieldGrid:
    """Evaluate the trigonometric sum on the uniform M-point grid (exact, via FFT)."""
    if m_points < 2 * field.n_modes:
        raise AliasingError(
            f"m_points={m_points} < 2*n_modes={2 * field.n_modes}: grid cannot carry the top mode"
        )
    values = np.fft.irfft(_spectrum(field, m_points), n=m_points)
    return FieldGrid(m_points=m_points, values=values, n_modes=field.n_modes)


def truncated_covariance(n_modes: int, phi) -> np.ndarray | float:
    """C_N(phi) = sum_{n<=N} (2/n) cos(n phi); accepts scalar or array phi."""
    phi_arr = np.atleast_1d(np.asarray(phi, dtype=float))
    n = np.arange(1, n_modes + 1)
    out = np.empty_like(phi_arr)
    step = max(1, 2**22 // max(n_modes, 1))  # bound the outer-product workspace
    for start in range(0, len(phi_arr), step):
        block = phi_arr[start : start + step]
        out[start : start + len(block)] = np.cos(np.outer(block, n)) @ (2.0 / n)
    return float(out[0]) if np.isscalar(phi) or np.ndim(phi) == 0 else out


def limit_covariance(phi) -> np.ndarray | float:
    """N -> infinity kernel 2 ln 1/|1 - e^{i phi}| = -ln(2 - 2 cos phi)."""
    return -np.log(2.0 - 2.0 * np.cos(phi))
