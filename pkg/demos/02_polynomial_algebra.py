"""The XOR-convolution algebra of Walsh polynomials.

A vector of coefficients (c_0, ..., c_{L-1}) represents the function
sum_j c_j W(j, x).  Products of such functions convolve the coefficients
over XOR of the indices, the coset matrix [c_{i XOR j}] has the grid
values as eigenvalues, and division works wherever no grid value is zero.
The worked example is the autoregression 2 X_t + X_{t XOR 1} = eps_t.
"""

import numpy as np

from walsh_spectra import (
    SingularPolynomialError,
    WalshPolynomial,
    invert,
    sigma_determinant,
    sigma_matrix,
    to_moving_average,
    unit,
    xor_convolve,
)

phi = WalshPolynomial([2.0, 1.0])
print("phi coefficients:", phi.coefficients)
print("phi on the grid {0, 1/2}:", phi.grid_values())
print("coset matrix:\n", sigma_matrix(phi))
print("det via grid product:", sigma_determinant(phi), " (= 2*2 - 1*1)")

print()
print("== inversion: find eta with phi(x) eta(x) = 1 ==")
eta = invert(phi)
print("eta coefficients:", eta.coefficients, " (should be 2/3, -1/3)")
print("phi * eta =", xor_convolve(phi, eta).coefficients)

print()
print("== a singular polynomial has a zero grid value ==")
try:
    invert(WalshPolynomial([1.0, 1.0]))
except SingularPolynomialError as exc:
    print("caught:", exc)

print()
print("== autoregression to moving average ==")
# solve 2 X_t + X_{t XOR 1} = eps_t: the moving-average form is
# X_t = (2/3) eps_t - (1/3) eps_{t XOR 1}
k = to_moving_average(WalshPolynomial([2.0, 1.0]), unit())
print("K =", k.coefficients)
rng = np.random.default_rng(1)
eps = rng.standard_normal(64)
t = np.arange(64)
x = k.coefficients[0] * eps + k.coefficients[1] * eps[t ^ 1]
print("recursion residual:", np.max(np.abs(2 * x + x[t ^ 1] - eps)))

print()
print("== mixed example: ar (2,1), ma (1,1) ==")
k = to_moving_average(WalshPolynomial([2.0, 1.0]), WalshPolynomial([1.0, 1.0]))
print("K =", k.coefficients, " (1/3, 1/3)")
b = sigma_matrix(WalshPolynomial([2.0, 1.0]))
a = sigma_matrix(WalshPolynomial([1.0, 1.0]))
print("operator identity holds:", np.allclose(np.linalg.solve(b, a), sigma_matrix(k)))
