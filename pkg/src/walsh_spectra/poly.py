"""Algebra of finite Walsh polynomials under XOR convolution.

A Walsh polynomial is a finite expansion ``phi(x) = sum_j c_j W(j, x)``
with coefficients on a power-of-two index block.  The product of two such
polynomials is the XOR convolution of their coefficients, and the algebra
is diagonalized by the Walsh-Hadamard transform: the grid values
``phi(x_0), ..., phi(x_{L-1})`` are the eigenvalues of the coset matrix
``Sigma[i, j] = c_{i XOR j}``.  Inversion, determinants, and the
autoregressive <-> moving-average conversions all run through that
diagonalization in O(L log L); the dense linear-algebra routes survive in
the test suite as oracles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dyadic import fwht, walsh

#: relative threshold below which a grid value counts as a zero of the polynomial
SINGULARITY_RTOL = 1e-9


class SingularPolynomialError(ValueError):
    """The polynomial vanishes at a grid point, so it has no reciprocal.

    Carries the offending grid index and value.  When raised while
    converting a time-varying process, the rescaled time is attached by
    the caller via the ``where`` argument.
    """

    def __init__(self, grid_index: int, value: float, where=None):
        self.grid_index = grid_index
        self.value = value
        self.where = where
        at = f" (at u={where})" if where is not None else ""
        super().__init__(
            f"polynomial vanishes at grid point {grid_index}{at}: value {value!r}"
        )


def _pad_pow2(coeffs) -> np.ndarray:
    c = np.atleast_1d(np.asarray(coeffs, dtype=np.float64))
    if c.ndim != 1:
        raise ValueError("coefficients must be one-dimensional")
    if c.size == 0:
        raise ValueError("need at least one coefficient")
    size = 1
    while size < c.size:
        size *= 2
    if size != c.size:
        c = np.concatenate([c, np.zeros(size - c.size)])
    return c


@dataclass(frozen=True)
class WalshPolynomial:
    """Coefficient vector (c_0, ..., c_{L-1}), zero-padded to L = 2**m."""

    coefficients: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _pad_pow2(self.coefficients))

    @property
    def length(self) -> int:
        return self.coefficients.size

    @property
    def order_exponent(self) -> int:
        return self.length.bit_length() - 1

    def padded_to(self, length: int) -> "WalshPolynomial":
        if length < self.length:
            raise ValueError("cannot shrink a polynomial")
        out = np.zeros(length)
        out[: self.length] = self.coefficients
        return WalshPolynomial(out)

    def evaluate(self, x) -> float:
        """Pointwise value sum_j c_j W(j, x); constant on each dyadic cell."""
        total = 0.0
        for j, c in enumerate(self.coefficients):
            if c != 0.0:
                total += c * walsh(j, x)
        return total

    def grid_values(self) -> np.ndarray:
        """Values (phi(x_0), ..., phi(x_{L-1})) on the dyadic grid, via `fwht`."""
        return fwht(self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, WalshPolynomial):
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if a.size != b.size:
            size = max(a.size, b.size)
            a = self.padded_to(size).coefficients
            b = other.padded_to(size).coefficients
        return bool(np.array_equal(a, b))


def unit(length: int = 1) -> WalshPolynomial:
    """The constant polynomial 1 (coefficient vector e_0), the convolution unit."""
    c = np.zeros(length)
    c[0] = 1.0
    return WalshPolynomial(c)


def from_grid(values) -> WalshPolynomial:
    """Polynomial taking the given values on the dyadic grid (inverse of grid_values)."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1 or v.size == 0 or v.size & (v.size - 1):
        raise ValueError("grid values must be a vector of power-of-two length")
    return WalshPolynomial(fwht(v) / v.size)


def _common(a: WalshPolynomial, b: WalshPolynomial) -> tuple[np.ndarray, np.ndarray]:
    size = max(a.length, b.length)
    return a.padded_to(size).coefficients, b.padded_to(size).coefficients


def xor_convolve(a: WalshPolynomial, b: WalshPolynomial) -> WalshPolynomial:
    """Coefficient product c_h = sum_j a_j b_{j XOR h}.

    Equals the pointwise product of grid values, so it is computed as
    transform -> multiply -> inverse transform.
    """
    ca, cb = _common(a, b)
    size = ca.size
    return WalshPolynomial(fwht(fwht(ca) * fwht(cb)) / size)


def sigma_matrix(poly: WalshPolynomial) -> np.ndarray:
    """XOR-coset matrix with entry [i, j] = c_{i XOR j} (symmetric)."""
    idx = np.arange(poly.length)
    return poly.coefficients[idx[:, None] ^ idx[None, :]]


def sigma_determinant(poly: WalshPolynomial) -> float:
    """det of `sigma_matrix`, computed as the product of the grid values.

    Nonzero exactly when the polynomial has no zero grid value, which is
    the invertibility condition used throughout.
    """
    return float(np.prod(poly.grid_values()))


def invert(poly: WalshPolynomial, rtol: float = SINGULARITY_RTOL) -> WalshPolynomial:
    """Reciprocal polynomial eta with phi(x) * eta(x) = 1 on [0, 1).

    Computed on the grid (reciprocal of the grid values, transformed
    back), which is the O(L log L) route; the dense solve
    ``sigma_matrix(phi) @ d = e_0`` gives the same coefficients and is
    kept as a test oracle.

    Raises `SingularPolynomialError` when some grid value is within
    ``rtol * max |grid value|`` of zero.
    """
    grid = poly.grid_values()
    scale = np.max(np.abs(grid))
    bad = np.abs(grid) <= rtol * scale
    if scale == 0.0 or np.any(bad):
        j = int(np.argmin(np.abs(grid)))
        raise SingularPolynomialError(j, float(grid[j]))
    return from_grid(1.0 / grid)


def to_moving_average(ar: WalshPolynomial, ma: WalshPolynomial) -> WalshPolynomial:
    """Moving-average coefficients K with ar * K = ma (convolution sense).

    Both operands are zero-padded to the larger block before converting.
    Raises `SingularPolynomialError` if the autoregressive polynomial has
    a zero grid value.
    """
    ca, cb = _common(ar, ma)
    return xor_convolve(invert(WalshPolynomial(ca)), WalshPolynomial(cb))


def to_autoregressive(ar: WalshPolynomial, ma: WalshPolynomial) -> WalshPolynomial:
    """Autoregressive coefficients G with ma * G = ar; dual of `to_moving_average`."""
    ca, cb = _common(ar, ma)
    return xor_convolve(invert(WalshPolynomial(cb)), WalshPolynomial(ca))
