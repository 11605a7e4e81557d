"""Model-implied spectra/covariances and estimation from sample paths.

Model side: the dyadic spectral density of a (locally frozen)
moving-average process is ``g(u, x) = sigma**2 * A(u, x)**2`` with
``A(u, .)`` the Walsh polynomial of the frozen coefficients; for
comparison the classical time-varying density
``f(u, lam) = sigma**2/(2 pi) |sum_k a_k(u) e^{-i lam k}|**2`` is also
provided.  Covariances follow by exact quadrature: finite-order densities
are step functions on dyadic cells, so integrals over [0, 1) are plain
grid averages.

Estimation side: the finite Walsh transform of a data segment, its
periodogram (squared transform over the segment length), optional moving
average smoothing over neighboring bins, and the segmented local
estimator that applies the periodogram on aligned power-of-two blocks to
track a time-varying spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dyadic import fwht, grid_values
from .poly import WalshPolynomial
from .processes import ProcessSpec, SamplePath, dma_coefficient_rows


@dataclass(frozen=True)
class SpectralGrid:
    """Density values on a (rescaled time) x (frequency) grid."""

    u_values: np.ndarray
    x_values: np.ndarray  # dyadic grid points, or angular frequencies for "fourier"
    values: np.ndarray  # shape (len(u_values), len(x_values))
    kind: str  # "dyadic" | "fourier"


@dataclass(frozen=True)
class Periodogram:
    """Walsh periodogram of one data segment."""

    segment_start: int
    size: int  # segment length N (power of two)
    u0: float  # rescaled midpoint of the segment
    x_values: np.ndarray
    values: np.ndarray

    def mean_level(self) -> float:
        return float(np.mean(self.values))


@dataclass(frozen=True)
class CovarianceSequence:
    """Covariances R(tau), tau = 0..len-1, of a (frozen) dyadic stationary process."""

    values: np.ndarray
    sigma: float = 1.0
    u0: float | None = None


def _coeffs(obj) -> np.ndarray:
    if isinstance(obj, WalshPolynomial):
        return obj.coefficients
    return WalshPolynomial(np.asarray(obj, dtype=np.float64)).coefficients


# --------------------------------------------------------------------------
# model-implied quantities


def tv_dyadic_density(spec: ProcessSpec, u_values, m: int) -> SpectralGrid:
    """Time-varying dyadic spectral density g(u, x) on grid_points(m).

    Each row is the squared Walsh-polynomial amplitude of the frozen
    moving-average coefficients at that u (autoregressive kinds are
    converted first), scaled by the innovation variance.  Values on a
    grid coarser than the coefficient block are exact point evaluations,
    computed at the block resolution and subsampled.
    """
    u = np.atleast_1d(np.asarray(u_values, dtype=np.float64))
    rows = dma_coefficient_rows(spec, u)
    size = rows.shape[1]
    m = int(m)
    m_eval = max(m, size.bit_length() - 1)
    padded = np.zeros((u.size, 1 << m_eval))
    padded[:, :size] = rows
    amps = fwht(padded)
    stride = (1 << m_eval) >> m
    g = spec.innovations.sigma**2 * amps[:, ::stride] ** 2
    return SpectralGrid(u_values=u, x_values=grid_values(m), values=g, kind="dyadic")


def tv_fourier_density(spec: ProcessSpec, u_values, lambda_values) -> SpectralGrid:
    """Classical time-varying spectral density of the same coefficient curves.

    f(u, lam) = sigma**2 / (2 pi) * |sum_k a_k(u) exp(-i lam k)|**2, for
    moving-average kinds only.  The squared modulus is used (the sum is
    complex), which is the standard convention.
    """
    if spec.kind not in ("tvDMA", "modulated"):
        raise ValueError("the Fourier comparison density needs a moving-average kind")
    u = np.atleast_1d(np.asarray(u_values, dtype=np.float64))
    lam = np.atleast_1d(np.asarray(lambda_values, dtype=np.float64))
    rows = dma_coefficient_rows(spec, u)
    k = np.arange(rows.shape[1])
    phases = np.exp(-1j * lam[:, None] * k[None, :])  # (len(lam), L)
    transfer = rows @ phases.T  # (len(u), len(lam)) complex
    f = spec.innovations.sigma**2 / (2.0 * np.pi) * np.abs(transfer) ** 2
    return SpectralGrid(u_values=u, x_values=lam, values=f, kind="fourier")


def dma_covariance(coeffs, sigma: float, tau: int) -> float:
    """Covariance R(tau) = sigma**2 sum_k a_k a_{k XOR tau} of a moving average.

    Closed form of the spectral integral (orthonormality collapses the
    cross terms).  Lags at or beyond the coefficient block are exactly 0.
    """
    a = _coeffs(coeffs)
    tau = int(tau)
    if tau < 0:
        raise ValueError("tau must be >= 0")
    if tau >= a.size:
        return 0.0
    idx = np.arange(a.size) ^ tau
    return float(sigma**2 * np.dot(a, a[idx]))


def covariance_from_density(density_row, tau: int) -> float:
    """R(tau) as the exact grid quadrature of W(tau, x) against the density.

    The density of a finite-order process is constant on dyadic cells, so
    the integral over [0, 1) is the plain average over grid_points(m).
    """
    g = np.asarray(density_row, dtype=np.float64)
    if g.ndim != 1 or g.size == 0 or g.size & (g.size - 1):
        raise ValueError("density row must have power-of-two length")
    tau = int(tau)
    if not 0 <= tau < g.size:
        raise ValueError(f"tau must lie in [0, {g.size}), got {tau}")
    return float(fwht(g)[tau] / g.size)


def empirical_dyadic_covariance(path, tau: int, segment: tuple[int, int] | None = None) -> float:
    """Sample XOR-lag covariance over an aligned segment of the path.

    (1/N) sum over the segment of (X_t - mean)(X_{t XOR tau} - mean);
    alignment (start a multiple of N) keeps t XOR tau inside the segment.
    """
    values = path.values if isinstance(path, SamplePath) else np.asarray(path, dtype=np.float64)
    if segment is None:
        segment = (0, values.size)
    start, n = map(int, segment)
    if n < 1 or n & (n - 1):
        raise ValueError(f"segment length must be a power of two, got {n}")
    if start % n != 0:
        raise ValueError(f"segment start {start} is not aligned to length {n}")
    if start < 0 or start + n > values.size:
        raise ValueError("segment leaves the path")
    tau = int(tau)
    if not 0 <= tau < n:
        raise ValueError(f"tau must lie in [0, {n}), got {tau}")
    seg = values[start : start + n]
    centered = seg - np.mean(seg)
    return float(np.dot(centered, centered[np.arange(n) ^ tau]) / n)


# --------------------------------------------------------------------------
# estimation from data


def finite_walsh_transform(data) -> np.ndarray:
    """d(x_j) = sum_n X_n W(n, x_j) on grid_points(log2 N); batched over leading axes."""
    return fwht(data)


def walsh_periodogram(data, segment_start: int = 0, total_length: int | None = None) -> Periodogram:
    """Periodogram I(x_j) = d(x_j)**2 / N of one segment.

    ``total_length`` rescales the segment midpoint u0 to the full series;
    by default the segment is the whole series (u0 = 1/2).
    """
    x = np.asarray(data, dtype=np.float64)
    if x.ndim != 1 or x.size == 0 or x.size & (x.size - 1):
        raise ValueError("periodogram needs a one-dimensional power-of-two segment")
    n = x.size
    total = n if total_length is None else int(total_length)
    d = fwht(x)
    return Periodogram(
        segment_start=int(segment_start),
        size=n,
        u0=(segment_start + n / 2) / total,
        x_values=grid_values(n.bit_length() - 1),
        values=d * d / n,
    )


def smooth_periodogram(p: Periodogram, half_width: int) -> Periodogram:
    """Moving average over 2*half_width+1 adjacent bins, reflecting at the ends.

    Reflection keeps the total mass unchanged; half_width=0 is the identity.
    """
    w = int(half_width)
    if w < 0:
        raise ValueError("half_width must be >= 0")
    if w == 0:
        return p
    padded = np.pad(p.values, w, mode="symmetric")
    kernel = np.full(2 * w + 1, 1.0 / (2 * w + 1))
    return replace(p, values=np.convolve(padded, kernel, mode="valid"))


def segmented_local_spectrum(path, N: int, step: int | None = None) -> list[Periodogram]:
    """Per-segment periodograms of a path, tracking a time-varying spectrum.

    Default is aligned, non-overlapping segments (step = N), for which
    the XOR indexing of each segment is internally consistent; other
    steps give overlapping segments, useful as a smoother but heuristic.
    """
    values = path.values if isinstance(path, SamplePath) else np.asarray(path, dtype=np.float64)
    T = values.size
    N = int(N)
    if N < 1 or N & (N - 1):
        raise ValueError(f"segment length must be a power of two, got {N}")
    if N > T:
        raise ValueError(f"segment length {N} exceeds the path length {T}")
    if step is None:
        step = N
    step = int(step)
    if step < 1:
        raise ValueError("step must be >= 1")
    out = []
    for start in range(0, T - N + 1, step):
        out.append(walsh_periodogram(values[start : start + N], segment_start=start, total_length=T))
    return out


def walsh_spectrum_from_cov(cov: CovarianceSequence, m: int) -> np.ndarray:
    """Spectrum f(x_j) = sum_{tau < 2**m} R(tau) W(tau, x_j) from covariances.

    Inverse of `covariance_from_density` when R is supported below 2**m.
    """
    m = int(m)
    size = 1 << m
    r = np.asarray(cov.values, dtype=np.float64)
    if r.size < size:
        raise ValueError(f"need at least {size} covariances, got {r.size}")
    return fwht(r[:size])
