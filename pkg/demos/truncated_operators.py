"""
Truncated Toeplitz operators, two ways
======================================

Closed-form entries against brute quadrature, the exactness of
triangular products, and where the multiplicative identities break
under truncation.
"""

import numpy as np

from berglab import (
    HarmonicSymbol,
    QuadratureSpec,
    polynomial_symbol,
    toeplitz_analytic,
    toeplitz_harmonic,
    toeplitz_quadrature,
    verify_product_identities,
)

# the shift: entries sqrt((n+1)/(n+2)) on the subdiagonal
shift = toeplitz_analytic([0.0, 1.0], 5)
print("truncated shift (real part):")
print(np.round(shift.matrix.real, 4))

# same operator from quadrature, entry by entry
g = polynomial_symbol([0.0, 1.0])
quad = toeplitz_quadrature(g, 5, QuadratureSpec(64, 128), g.tag())
print(f"\nclosed form vs quadrature: max diff {np.max(np.abs(shift.matrix - quad.matrix)):.2e}")

# harmonic symbol phi = c g + d conj(g): the compression is c A + d A^*
phi = HarmonicSymbol(1.0, 0.5, polynomial_symbol([2.0, 1.0]))
op = toeplitz_harmonic(phi, 6)
print(f"\nharmonic truncation Hermitian error (real symbol would be 0): "
      f"{np.max(np.abs(op.matrix - op.adjoint_matrix())):.3f}")

# product identities: T_phi T_g - T_{phi g} vanishes on the leading
# block but not at the far corner, where the cut-off tail shows up
defects = verify_product_identities([0.0, 1.0],
                                    HarmonicSymbol(0.0, 1.0, polynomial_symbol([0.0, 1.0])), 9)
print("\nproduct identity for phi = conj(z), g = z at N = 9:")
print(f"  leading-block defect {defects.product_defect_block:.2e}")
print(f"  full-matrix defect   {defects.product_defect_full:.6f}  (exact N/(N+1) = {9 / 10})")

# hyponormality on the window where the truncation acts exactly:
# ||A f|| >= ||A* f|| for every f supported on low degrees
rng = np.random.default_rng(0)
a = toeplitz_analytic([0.0, 1.0], 16).matrix
wins = 0
for _ in range(200):
    f = np.zeros(16, dtype=complex)
    f[:14] = rng.normal(size=14) + 1j * rng.normal(size=14)
    wins += np.linalg.norm(a @ f) >= np.linalg.norm(a.conj().T @ f)
print(f"\nwindowed ||A f|| >= ||A* f||: {wins}/200")
