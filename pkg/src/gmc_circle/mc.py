"""Seeded, worker-count-independent Monte-Carlo harness and test statistics.

Replica i always consumes the counter-based stream keyed by (seed, i), so the
assembled sample vector is a pure function of (task, n, seed) no matter how
the work is scheduled.  Suites that need several mutually independent sample
sets under one seed separate them with the ``part`` namespace, which offsets
the stream ids far beyond any replica count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import status as status_flags
from .errors import DomainError

_MASK64 = (1 << 64) - 1
_PART_SHIFT = 40  # replica counts stay far below 2**40

# Asymptotic Kolmogorov-Smirnov critical coefficients c(alpha); the toolkit
# fixes the 1% level globally so that large test batteries stay quiet.
KS_COEFFICIENTS = {0.10: 1.224, 0.05: 1.358, 0.01: 1.628}
KS_LEVEL = 0.01


@dataclass(frozen=True)
class RngStream:
    """Handle for one reproducible substream."""

    seed: int
    stream_id: int

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed & _MASK64, self.stream_id & _MASK64], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


def stream_for(seed: int, replica: int, part: int = 0) -> RngStream:
    return RngStream(seed=seed, stream_id=(part << _PART_SHIFT) | replica)


class ReplicaError(RuntimeError):
    """Raised when a replica task fails; carries the replica index."""

    def __init__(self, index: int, cause: BaseException):
        super().__init__(f"replica {index} failed: {cause!r}")
        self.index = index


def _run_range(task: Callable, seed: int, part: int, start: int, stop: int) -> np.ndarray:
    first = None
    out = None
    for i in range(start, stop):
        try:
            res = np.atleast_1d(np.asarray(task(stream_for(seed, i, part).generator()), dtype=float))
        except Exception as exc:  # noqa: BLE001 - reported with the replica index
            raise ReplicaError(i, exc) from exc
        if out is None:
            first = res.shape
            out = np.empty((stop - start,) + first, dtype=float)
        out[i - start] = res
    return out


def run_replicas(
    task: Callable[[np.random.Generator], float | np.ndarray],
    n: int,
    seed: int,
    workers: int = 1,
    part: int = 0,
) -> np.ndarray:
    """Run ``task`` on n independent substreams and assemble results by index.

    The output is a deterministic function of (task, n, seed, part) and does
    not depend on ``workers`` or scheduling order.  Tasks must be picklable
    when workers > 1.  Returns shape (n,) for scalar tasks, else (n, k).
    """
    if n < 1:
        raise DomainError(f"run_replicas needs n >= 1, got {n}")
    if workers <= 1 or n == 1:
        out = _run_range(task, seed, part, 0, n)
    else:
        chunk = max(1, math.ceil(n / (workers * 4)))
        spans = [(s, min(s + chunk, n)) for s in range(0, n, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_range, *zip(*[(task, seed, part, a, b) for a, b in spans])))
        out = np.concatenate(parts, axis=0)
    return out[:, 0] if out.ndim == 2 and out.shape[1] == 1 else out


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class McReport:
    """Monte-Carlo summary for one estimated quantity."""

    estimate: float
    std_error: float
    n_samples: int
    seed: int
    status: str
    ks_statistic: float | None = None
    ks_pass: bool | None = None
    ladder: tuple[tuple[int, float], ...] | None = None

    def __post_init__(self):
        if self.status not in status_flags.ALL_STATUSES:
            raise DomainError(f"unknown status flag {self.status!r}")
        if self.ladder is not None:
            res = [r for r, _ in self.ladder]
            if any(b <= a for a, b in zip(res, res[1:])):
                raise DomainError("ladder resolutions must be strictly increasing")


def mean_and_se(samples: np.ndarray) -> tuple[float, float]:
    """Sample mean and its standard error (sample std / sqrt(n))."""
    x = np.asarray(samples, dtype=float)
    n = len(x)
    se = float(np.std(x, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return float(np.mean(x)), se


def ratio_and_se(num: np.ndarray, den: np.ndarray) -> tuple[float, float]:
    """mean(num)/mean(den) with a delta-method standard error (paired samples)."""
    a, b = np.asarray(num, float), np.asarray(den, float)
    n = len(a)
    ma, mb = float(np.mean(a)), float(np.mean(b))
    r = ma / mb
    cov = np.cov(a, b, ddof=1)
    var = (cov[0, 0] / ma**2 + cov[1, 1] / mb**2 - 2.0 * cov[0, 1] / (ma * mb)) * r * r / n
    return r, math.sqrt(max(var, 0.0))


@dataclass(frozen=True)
class KsResult:
    statistic: float
    critical: float
    passed: bool


def ks_one_sample(samples: np.ndarray, cdf: Callable, level: float = KS_LEVEL) -> KsResult:
    """Sup-distance of the empirical CDF against ``cdf`` with the asymptotic
    critical value c(level)/sqrt(n)."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = len(x)
    if n < 50:
        raise DomainError(f"one-sample KS needs n >= 50, got {n}")
    f = np.asarray(cdf(x), dtype=float)
    grid = np.arange(1, n + 1) / n
    d = float(max(np.max(grid - f), np.max(f - (grid - 1.0 / n))))
    crit = KS_COEFFICIENTS[level] / math.sqrt(n)
    return KsResult(statistic=d, critical=crit, passed=d <= crit)


def ks_two_sample(a: np.ndarray, b: np.ndarray, level: float = KS_LEVEL) -> KsResult:
    """Two-sample sup-distance with critical value c(level) sqrt((m+n)/(m n))."""
    xs = np.sort(np.asarray(a, dtype=float))
    ys = np.sort(np.asarray(b, dtype=float))
    m, n = len(xs), len(ys)
    allv = np.concatenate([xs, ys])
    fa = np.searchsorted(xs, allv, side="right") / m
    fb = np.searchsorted(ys, allv, side="right") / n
    d = float(np.max(np.abs(fa - fb)))
    crit = KS_COEFFICIENTS[level] * math.sqrt((m + n) / (m * n))
    return KsResult(statistic=d, critical=crit, passed=d <= crit)
