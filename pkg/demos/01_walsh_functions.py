"""Walsh functions and dyadic arithmetic, from first principles.

Walks through the XOR additive structure on time indices and on the unit
interval, tabulates the first Walsh functions, and checks the matrix
identities that make the fast transform possible.
"""

import time

import numpy as np

from walsh_spectra import (
    DyadicPoint,
    dyadic_add,
    dyadic_add_points,
    fwht,
    grid_points,
    hadamard_matrix,
    walsh,
)

print("== dyadic addition is bitwise XOR ==")
print("5 (+) 3 =", dyadic_add(5, 3), "   (101 XOR 011 = 110)")
print("n (+) n =", dyadic_add(12, 12), "  every element is its own inverse")
half, quarter = DyadicPoint(1, 1), DyadicPoint(1, 2)
print("1/2 (+) 1/4 =", dyadic_add_points(half, quarter).value, " (.10 XOR .01 = .11)")

print()
print("== the first eight Walsh functions on the dyadic grid x = j/8 ==")
pts = grid_points(3)
print("      " + "  ".join(f"{p.value:5.3f}" for p in pts))
for n in range(8):
    row = "  ".join(f"{walsh(n, p):+5d}" for p in pts)
    print(f"W({n},.)  {row}")

print()
print("== the Walsh-ordered Hadamard matrix diagonalizes everything ==")
m = 3
h = hadamard_matrix(m).astype(np.int64)
print(f"H is symmetric: {np.array_equal(h, h.T)}")
print(f"H @ H' = 2^{m} I exactly: {np.array_equal(h @ h.T, (1 << m) * np.eye(1 << m, dtype=np.int64))}")

print()
print("== the fast transform is the matrix product, in O(N log N) ==")
rng = np.random.default_rng(0)
v = rng.standard_normal(1 << m)
print("max |fwht(v) - H v| =", np.max(np.abs(fwht(v) - h @ v)))
print("fwht(fwht(v)) / 2^m recovers v:", np.allclose(fwht(fwht(v)) / (1 << m), v))

big = rng.standard_normal(1 << 20)
start = time.perf_counter()
fwht(big)
print(f"one transform of 2^20 points: {1e3 * (time.perf_counter() - start):.0f} ms")
