"""
Reproducing kernel and disc quadrature
======================================

The basic identities everything else is built on: monomial inner
products, the kernel as a geometric series, and the polar quadrature
rule that integrates against normalized area measure.
"""

import numpy as np

from berglab import (
    PowerSeries,
    QuadratureSpec,
    bergman_inner_product,
    disc_quadrature,
    kernel_eval,
    normalized_kernel_coeffs,
)

# <z^m, z^n> = delta_{mn} / (n + 1): the basis is orthogonal but not
# orthonormal, hence the sqrt(n + 1) scaling used elsewhere
for n in range(4):
    f = PowerSeries(np.eye(5)[n])
    print(f"||z^{n}||^2 = {bergman_inner_product(f, f).real:.6f}  (exact 1/{n + 1})")

# the kernel at coincident points is 1 / (1 - |z|^2)^2
z = 0.5
print(f"\nK(0.5, 0.5) = {kernel_eval(z, z).real:.6f}  (exact 16/9 = {16 / 9:.6f})")

# the normalized kernel has unit norm; its coefficient vector in the
# orthonormal basis is explicit and the norm telescopes to 1
kappa = normalized_kernel_coeffs(0.6 + 0.2j, 64)
print(f"||kappa_z||  = {np.linalg.norm(kappa):.12f}")

# quadrature sanity: the rule integrates low moments exactly
spec = QuadratureSpec(32, 64)
mass = disc_quadrature(lambda w: np.ones_like(w, dtype=complex), spec)
second = disc_quadrature(lambda w: np.abs(w) ** 2, spec)
print(f"\nintegral of 1    = {mass.real:.15f}")
print(f"integral of |w|^2 = {second.real:.15f}  (exact 0.5)")

# reproducing property: <f, K_z> recovers f(z); with the normalized
# kernel the value picks up the factor (1 - |z|^2)
f = PowerSeries([1.0, -0.3, 0.25j, 0.1])
z = 0.4 - 0.3j
# convert orthonormal-basis coefficients to monomial coefficients
monomial = normalized_kernel_coeffs(z, 64) * np.sqrt(np.arange(1, 65))
lhs = bergman_inner_product(f, PowerSeries(monomial))
print(f"\nreproduced f(z) = {lhs:.12f}")
print(f"direct     f(z) = {(1 - abs(z) ** 2) * f(z):.12f}  (scaled by 1 - |z|^2)")
