"""Time-varying spectral density surfaces, dyadic and classical.

The dyadic density of a frozen moving average is the squared Walsh
amplitude of its coefficients; the classical density replaces Walsh
functions with complex exponentials.  The two surfaces of the built-in
presets illustrate how the square-wave basis produces piecewise-constant
spectra in x where the classical one is smooth in lambda.
"""

import numpy as np

from walsh_spectra import (
    covariance_from_density,
    dma_coefficient_rows,
    dma_covariance,
    preset_spec,
    tv_dyadic_density,
    tv_fourier_density,
)

spec = preset_spec("figure1")
u = np.linspace(0.0, 1.0, 9)

print("== dyadic density g(u, x) of the order-1 preset (2 x-cells) ==")
grid = tv_dyadic_density(spec, u, 1)
print("   u      g(u, [0,1/2))   g(u, [1/2,1))")
for i, ui in enumerate(u):
    print(f"  {ui:4.2f}   {grid.values[i, 0]:12.5f}   {grid.values[i, 1]:12.5f}")

print()
print("== the classical surface of the same coefficients, f(u, lambda) ==")
lam = np.linspace(0.0, np.pi, 5)
fgrid = tv_fourier_density(spec, u[:3], lam)
print("   u \\ lambda " + "  ".join(f"{v:7.3f}" for v in lam))
for i in range(3):
    print(f"  {u[i]:4.2f}       " + "  ".join(f"{v:7.4f}" for v in fgrid.values[i]))

print()
print("== the order-2 preset needs 4 x-cells away from u = 0 ==")
spec2 = preset_spec("figure2")
grid2 = tv_dyadic_density(spec2, [0.0, 0.5], 2)
print("u = 0.0:", np.round(grid2.values[0], 5), " (order drops to 1 here: pairs repeat)")
print("u = 0.5:", np.round(grid2.values[1], 5))

print()
print("== densities integrate back to covariances exactly ==")
row = tv_dyadic_density(spec, [0.25], 1).values[0]
frozen = dma_coefficient_rows(spec, np.array([0.25]))[0]
for tau in range(2):
    quad = covariance_from_density(row, tau)
    closed = dma_covariance(frozen, spec.innovations.sigma, tau)
    print(f"  R({tau}): quadrature {quad:.12f}   closed form {closed:.12f}")
