"""Dyadic (XOR) arithmetic, Walsh functions, and the fast Walsh-Hadamard transform.

Everything downstream reduces to the conventions fixed here:

* Time indices and lags are non-negative integers added bitwise (XOR).
* Points of the unit interval are dyadic rationals ``j / 2**m``, stored in
  canonical form (trailing zero bits stripped).  All integrals over [0, 1)
  of the functions handled by this package are exact finite sums on such
  grids, because every function involved is piecewise constant on dyadic
  cells.
* ``walsh(n, x)`` follows the Paley/Rademacher-product enumeration: the
  binary digits of ``n`` select which fractional bits of ``x`` contribute
  a sign.  On the grid ``x_j = j / 2**m`` this gives
  ``walsh(n, x_j) = (-1) ** <bits(n), reverse_bits_m(j)>``, so the fast
  transform is a natural-order butterfly followed by a bit reversal of the
  output index.  The sign-product evaluator is the reference; the butterfly
  must agree with it exactly.

All transforms are unnormalized: applying `fwht` twice multiplies by the
length, which keeps the Hadamard matrix identities exact in integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

INDEX_CAP = 1 << 62
GRID_EXPONENT_CAP = 24
MATRIX_EXPONENT_CAP = 12


def _check_index(n, what: str = "index") -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"{what} must be an integer, got {type(n).__name__}")
    n = int(n)
    if n < 0:
        raise ValueError(f"{what} must be non-negative, got {n}")
    if n >= INDEX_CAP:
        raise ValueError(f"{what} {n} exceeds the 2**62 cap")
    return n


def dyadic_add(a: int, b: int) -> int:
    """Dyadic sum of two non-negative integers: bitwise exclusive-or.

    Commutative, associative, self-inverse (``dyadic_add(n, n) == 0``)
    with identity 0.
    """
    return _check_index(a, "a") ^ _check_index(b, "b")


@dataclass(frozen=True)
class DyadicPoint:
    """A dyadic rational ``numerator / 2**resolution`` in [0, 1).

    Stored in canonical form: trailing zero bits of the fractional
    expansion are stripped, so 2/4 and 1/2 compare equal.  This realizes
    the finite-expansion convention (expansions ending in all zeros).
    """

    numerator: int
    resolution: int

    def __post_init__(self):
        j = _check_index(self.numerator, "numerator")
        m = self.resolution
        if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
            raise TypeError("resolution must be an integer")
        m = int(m)
        if m < 0:
            raise ValueError("resolution must be >= 0")
        if j >= (1 << m):
            raise ValueError(f"numerator {j} out of range for resolution {m}")
        while m > 0 and j % 2 == 0:
            if j == 0:
                m = 0
                break
            j //= 2
            m -= 1
        object.__setattr__(self, "numerator", j)
        object.__setattr__(self, "resolution", m)

    @classmethod
    def zero(cls) -> "DyadicPoint":
        return cls(0, 0)

    @classmethod
    def from_float(cls, x: float) -> "DyadicPoint":
        """Exact conversion of a binary float in [0, 1)."""
        if not 0.0 <= x < 1.0:
            raise ValueError(f"point must lie in [0, 1), got {x}")
        frac, exp = math.frexp(x)  # x = frac * 2**exp, frac in [0.5, 1)
        mant = int(frac * (1 << 53))
        res = 53 - exp
        return cls(mant, res)

    @property
    def value(self) -> float:
        return self.numerator / (1 << self.resolution)

    def fractional_bit(self, i: int) -> int:
        """The digit x_i of x = sum_{i>=1} x_i 2**-i (0 beyond the resolution)."""
        if i < 1:
            raise ValueError("fractional bits are indexed from 1")
        if i > self.resolution:
            return 0
        return (self.numerator >> (self.resolution - i)) & 1

    def __float__(self) -> float:
        return self.value


def _as_point(x) -> DyadicPoint:
    if isinstance(x, DyadicPoint):
        return x
    return DyadicPoint.from_float(float(x))


def dyadic_add_points(x, y) -> DyadicPoint:
    """Dyadic sum of two points: XOR of fractional expansions at common resolution."""
    x = _as_point(x)
    y = _as_point(y)
    m = max(x.resolution, y.resolution)
    jx = x.numerator << (m - x.resolution)
    jy = y.numerator << (m - y.resolution)
    return DyadicPoint(jx ^ jy, m)


def rademacher(k: int, x) -> int:
    """The k-th Rademacher sign of x: negative iff fractional bit k+1 is set."""
    k = _check_index(k, "k")
    x = _as_point(x)
    return -1 if x.fractional_bit(k + 1) else 1


def walsh(n: int, x) -> int:
    """Walsh function value W(n, x) in {-1, +1}.

    W(0, .) is identically +1; for n > 0 the value is the product of the
    Rademacher signs selected by the set bits of n.  This sign-product form
    is the reference implementation that the matrix and transform code is
    tested against.
    """
    n = _check_index(n, "n")
    x = _as_point(x)
    sign = 1
    i = 0
    while n:
        if n & 1 and x.fractional_bit(i + 1):
            sign = -sign
        n >>= 1
        i += 1
    return sign


def grid_points(m: int) -> list[DyadicPoint]:
    """The 2**m dyadic grid points j / 2**m in increasing order."""
    m = _check_index(m, "m")
    if m > GRID_EXPONENT_CAP:
        raise ValueError(f"grid exponent {m} exceeds the cap {GRID_EXPONENT_CAP}")
    return [DyadicPoint(j, m) for j in range(1 << m)]


def grid_values(m: int) -> np.ndarray:
    """Same grid as `grid_points`, as a float vector (plot/estimator axes)."""
    m = _check_index(m, "m")
    if m > GRID_EXPONENT_CAP:
        raise ValueError(f"grid exponent {m} exceeds the cap {GRID_EXPONENT_CAP}")
    return np.arange(1 << m, dtype=np.float64) / (1 << m)


def bit_reverse(j: int, m: int) -> int:
    """Reverse the low m bits of j."""
    out = 0
    for _ in range(m):
        out = (out << 1) | (j & 1)
        j >>= 1
    return out


def bit_reversal_permutation(m: int) -> np.ndarray:
    """Vector r with r[j] = bit_reverse(j, m)."""
    idx = np.arange(1 << m, dtype=np.int64)
    rev = np.zeros_like(idx)
    for k in range(m):
        rev |= ((idx >> k) & 1) << (m - 1 - k)
    return rev


def hadamard_matrix(m: int) -> np.ndarray:
    """Walsh-ordered Hadamard matrix: entry [j, n] = walsh(n, x_j), x_j = j/2**m.

    Integer matrix with H @ H.T == 2**m * I exactly.  It is symmetric, so
    it is also its own inverse up to the factor 2**m.  Note det is not
    always positive (m = 1 gives -2); only |det| = (2**m)**(2**(m-1)) is
    asserted by the test suite.
    """
    m = _check_index(m, "m")
    if m > MATRIX_EXPONENT_CAP:
        raise ValueError(f"matrix exponent {m} exceeds the cap {MATRIX_EXPONENT_CAP}")
    size = 1 << m
    rev = bit_reversal_permutation(m)
    n = np.arange(size, dtype=np.int64)
    overlap = np.bitwise_and(rev[:, None], n[None, :])
    parity = np.bitwise_count(overlap).astype(np.int64) & 1
    return (1 - 2 * parity).astype(np.int32)


def fwht(values) -> np.ndarray:
    """Fast Walsh-Hadamard transform along the last axis (unnormalized).

    Returns ``H @ v`` for the Walsh-ordered matrix of `hadamard_matrix`:
    ``out[..., j] = sum_n v[..., n] * walsh(n, x_j)``.  Implemented as the
    natural-order butterfly followed by a bit-reversal permutation of the
    output index.  Applying it twice multiplies by the length.
    """
    a = np.array(values, dtype=np.float64)
    n = a.shape[-1]
    if n == 0 or n & (n - 1):
        raise ValueError(f"length must be a power of two, got {n}")
    m = n.bit_length() - 1
    shape = a.shape
    a = a.reshape(-1, n)
    rows = a.shape[0]
    h = 1
    while h < n:
        a = a.reshape(rows, n // (2 * h), 2, h)
        top = a[:, :, 0, :].copy()
        a[:, :, 0, :] += a[:, :, 1, :]
        a[:, :, 1, :] = top - a[:, :, 1, :]
        a = a.reshape(rows, n)
        h *= 2
    if m > 1:
        a = a[:, bit_reversal_permutation(m)]
    return a.reshape(shape)


def inverse_fwht(values) -> np.ndarray:
    """Inverse of `fwht`: divides the forward transform by the length."""
    out = fwht(values)
    return out / out.shape[-1]
