"""Simulation of the fractional Ornstein-Uhlenbeck process.

The SDE dX_t = -theta X_t dt + dB_t (fBm driver, H > 1/2) has the explicit
solution X_t = e^(-theta t) (x0 + int_0^t e^(theta s) dB_s).  We advance X on
a fine grid of step delta/oversample with the exponential-Euler recursion

    X_{t+d} = e^(-theta d) X_t + dB,

which is exact for the drift and leaves only the left-point Young-integral
error, and subsample every `oversample`-th point to get the observed series.
"""

import csv
import io
from dataclasses import dataclass, field

import numpy as np
import scipy.integrate
import scipy.signal

from .errors import DomainError, SizeError
from .fbm import FbmGrid, IncrementSeries, RngSeed, sample_circulant

__all__ = [
    "ModelParams",
    "SamplingScheme",
    "ObservedPath",
    "simulate_path",
    "exact_second_moment",
    "write_path_csv",
    "read_path_csv",
]

#: guard on the total number of fine-grid steps per path
MAX_FINE_STEPS = 2**26


@dataclass
class ModelParams:
    """Drift theta > 0, Hurst parameter in (1/2, 1), initial value x0."""

    theta: float
    hurst: float
    x0: float = 0.0

    def __post_init__(self):
        if not (self.theta > 0.0 and np.isfinite(self.theta)):
            raise DomainError(f"theta must be positive and finite, got {self.theta}")
        if not (0.5 < self.hurst < 1.0):
            raise DomainError(f"hurst must lie in (1/2, 1), got {self.hurst}")
        if not np.isfinite(self.x0):
            raise DomainError(f"x0 must be finite, got {self.x0}")


@dataclass
class SamplingScheme:
    """Equidistant observations t_i = i * delta, i = 0..n; horizon T = n * delta."""

    n: int
    delta: float
    oversample: int = 8

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"n must be >= 2, got {self.n}")
        if not (self.delta > 0.0 and np.isfinite(self.delta)):
            raise DomainError(f"delta must be positive and finite, got {self.delta}")
        if self.oversample < 1:
            raise DomainError(f"oversample must be >= 1, got {self.oversample}")

    @classmethod
    def from_gamma(cls, n: int, gamma: float, oversample: int = 8) -> "SamplingScheme":
        """Mesh schedule delta = n^(-gamma)."""
        if not (0.0 < gamma < 1.0):
            raise DomainError(f"gamma must lie in (0, 1), got {gamma}")
        return cls(n=n, delta=float(n) ** (-gamma), oversample=oversample)

    @property
    def horizon(self) -> float:
        return self.n * self.delta

    @property
    def fine_step(self) -> float:
        return self.delta / self.oversample


@dataclass
class ObservedPath:
    """Discretely observed trajectory X_{t_0}, ..., X_{t_n}."""

    params: ModelParams
    scheme: SamplingScheme
    x: np.ndarray
    meta: dict = field(default_factory=dict)


def simulate_path(
    params: ModelParams,
    scheme: SamplingScheme,
    seed: RngSeed,
    increments: IncrementSeries | None = None,
) -> ObservedPath:
    """Simulate one observed path.

    `increments` is a test hook: when given, it must be an IncrementSeries on
    the fine grid of the scheme and is used instead of a fresh fGn draw.
    """
    n, m = scheme.n, scheme.oversample
    total = n * m
    if total > MAX_FINE_STEPS:
        raise SizeError(f"n * oversample = {total} exceeds guard {MAX_FINE_STEPS}")
    fine = FbmGrid(step=scheme.fine_step, count=total, hurst=params.hurst)
    if increments is None:
        incs = sample_circulant(fine, seed)
    else:
        incs = increments
        if incs.grid.count != total:
            raise DomainError(
                f"injected increments have count {incs.grid.count}, expected {total}"
            )

    a = np.exp(-params.theta * fine.step)
    # noise[j] = sum_{k<=j} a^(j-k) dB_k, i.e. the driven part of X at (j+1)*step
    noise = scipy.signal.lfilter([1.0], [1.0, -a], incs.values)
    x_fine = np.empty(total + 1)
    x_fine[0] = params.x0
    x_fine[1:] = noise
    if params.x0 != 0.0:
        x_fine[1:] += params.x0 * np.exp(
            -params.theta * fine.step * np.arange(1, total + 1)
        )
    x = x_fine[::m].copy()
    meta = {
        "method": incs.method,
        "fallback": incs.fallback,
        "seed": seed.seed,
        "stream": seed.stream,
    }
    return ObservedPath(params=params, scheme=scheme, x=x, meta=meta)


def exact_second_moment(params: ModelParams, t: float) -> float:
    """E[X_t^2] by adaptive quadrature, to ~1e-8 relative error.

    E[X_t^2] = x0^2 e^(-2 theta t)
             + (H(2H-1)/theta) int_0^t z^(2H-2) (e^(-theta z) - e^(theta(z-2t))) dz.

    The substitution w = z^(2H-1) removes the z^(2H-2) endpoint singularity,
    so a plain adaptive rule sees a smooth integrand.
    """
    if not (t > 0.0 and np.isfinite(t)):
        raise DomainError(f"t must be positive and finite, got {t}")
    th, h, x0 = params.theta, params.hurst, params.x0
    p = 1.0 / (2.0 * h - 1.0)

    def integrand(w):
        z = w**p
        return np.exp(-th * z) - np.exp(th * (z - 2.0 * t))

    val, _ = scipy.integrate.quad(
        integrand, 0.0, t ** (2.0 * h - 1.0), epsabs=0.0, epsrel=1e-10, limit=200
    )
    return x0**2 * np.exp(-2.0 * th * t) + (h / th) * val


def write_path_csv(path: ObservedPath, dest) -> None:
    """Write the observed path as CSV with header `i,t,x`."""
    own = isinstance(dest, (str, bytes)) or hasattr(dest, "__fspath__")
    fh = open(dest, "w", newline="") if own else dest
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["i", "t", "x"])
        delta = path.scheme.delta
        for i, xi in enumerate(path.x):
            writer.writerow([i, f"{i * delta:.17g}", f"{xi:.17g}"])
    finally:
        if own:
            fh.close()


def read_path_csv(src) -> tuple[np.ndarray, float]:
    """Read a path CSV produced by write_path_csv; returns (x, delta)."""
    own = isinstance(src, (str, bytes)) or hasattr(src, "__fspath__")
    fh = open(src, "r", newline="") if own else src
    try:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["i", "t", "x"]:
            raise DomainError(f"expected CSV header i,t,x, got {header}")
        ts, xs = [], []
        for row in reader:
            if not row:
                continue
            ts.append(float(row[1]))
            xs.append(float(row[2]))
    finally:
        if own:
            fh.close()
    if len(xs) < 3:
        raise DomainError("path CSV must contain at least 3 observations")
    delta = ts[1] - ts[0]
    if delta <= 0:
        raise DomainError("time column must be strictly increasing")
    return np.asarray(xs), delta
