"""Core primitives: series arithmetic, inner product, kernel, quadrature."""

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from berglab import (
    DomainError,
    PowerSeries,
    QuadratureSpec,
    bergman_inner_product,
    disc_quadrature,
    kernel_eval,
    normalized_kernel_coeffs,
)

EXACT = 1e-14
QUAD_TOL = 1e-10

finite_complex = st.complex_numbers(
    min_magnitude=0.0, max_magnitude=10.0, allow_nan=False, allow_infinity=False
)
coeff_lists = st.lists(finite_complex, min_size=1, max_size=8)


class TestPowerSeries:
    def test_eval_horner(self):
        p = PowerSeries([2.0, 1.0, 0.5])
        assert p(0.5) == pytest.approx(2.0 + 0.5 + 0.125)
        z = np.array([0.1, 0.2 + 0.3j])
        np.testing.assert_allclose(p(z), 2.0 + z + 0.5 * z**2)

    def test_declared_degree_keeps_trailing_zeros(self):
        p = PowerSeries([1.0, 0.0, 0.0])
        assert p.degree == 2

    def test_product_requires_explicit_degree(self):
        p = PowerSeries([1.0, 1.0])
        with pytest.raises(TypeError, match="degree"):
            p * p

    def test_mul_exact_for_polynomials(self):
        p = PowerSeries([2.0, 1.0])
        q = PowerSeries([1.0, 0.5])
        np.testing.assert_allclose(p.mul(q, 2).coeffs, [2.0, 2.0, 0.5])

    def test_mul_truncates_not_grows(self):
        p = PowerSeries([1.0, 1.0, 1.0])
        assert p.mul(p, 2).degree == 2

    @seed(1)
    @given(coeff_lists, coeff_lists)
    def test_add_commutes(self, a, b):
        p, q = PowerSeries(a), PowerSeries(b)
        np.testing.assert_allclose((p + q).coeffs, (q + p).coeffs, atol=EXACT)

    @seed(1)
    @settings(max_examples=60)
    @given(coeff_lists, coeff_lists, coeff_lists)
    def test_mul_associates_at_fixed_degree(self, a, b, c):
        p, q, r = PowerSeries(a), PowerSeries(b), PowerSeries(c)
        deg = 6
        left = p.mul(q, deg).mul(r, deg)
        right = p.mul(q.mul(r, deg), deg)
        scale = max(1.0, *(np.abs(x.coeffs).max() for x in (p, q, r))) ** 3
        np.testing.assert_allclose(left.coeffs, right.coeffs, atol=1e-9 * scale)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            PowerSeries([])


class TestInnerProduct:
    def test_constant(self):
        assert bergman_inner_product([1.0], [1.0]) == pytest.approx(1.0)

    def test_monomial_norms(self):
        # <z^n, z^n> = 1/(n+1)
        assert bergman_inner_product([0, 0, 1], [0, 0, 1]) == pytest.approx(1 / 3)
        for n in range(12):
            e = np.zeros(n + 1)
            e[n] = 1.0
            assert bergman_inner_product(e, e) == pytest.approx(1.0 / (n + 1))

    def test_orthogonality(self):
        assert bergman_inner_product([0, 1], [0, 0, 0, 1]) == 0.0

    def test_orthonormal_basis_vectors(self):
        for n in range(40):
            e = np.zeros(n + 1, dtype=complex)
            e[n] = np.sqrt(n + 1.0)
            assert abs(bergman_inner_product(e, e) - 1.0) < EXACT

    def test_linear_in_first_argument(self):
        f, g, h = [1.0, 2.0], [0.5, 1j], [1j, 0.25]
        lhs = bergman_inner_product(np.add(f, g), h)
        rhs = bergman_inner_product(f, h) + bergman_inner_product(g, h)
        assert lhs == pytest.approx(rhs)

    @seed(1)
    @given(coeff_lists, coeff_lists)
    def test_conjugate_symmetry(self, a, b):
        lhs = bergman_inner_product(a, b)
        rhs = np.conj(bergman_inner_product(b, a))
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


class TestKernel:
    def test_center_value(self):
        assert kernel_eval(0.0, 0.3 + 0.2j) == pytest.approx(1.0)

    def test_half_point(self):
        assert kernel_eval(0.5, 0.5) == pytest.approx(16.0 / 9.0)

    def test_matches_series_expansion(self):
        z, w = 0.4 + 0.3j, -0.2 + 0.6j
        n = np.arange(200)
        series = np.sum((n + 1) * (np.conj(z) * w) ** n)
        assert kernel_eval(z, w) == pytest.approx(series, abs=1e-12)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            kernel_eval(1.0, 0.5)
        with pytest.raises(DomainError):
            kernel_eval(0.5, np.array([0.1, 1.2j]))

    def test_norm_squared_three_ways(self):
        # closed form vs coefficient series vs quadrature, |z| <= 0.7
        for z in (0.0, 0.35 - 0.2j, 0.7):
            closed = 1.0 / (1.0 - abs(z) ** 2) ** 2
            n = np.arange(600)
            series = np.sum((n + 1.0) * abs(z) ** (2 * n))
            quad = disc_quadrature(lambda w: np.abs(kernel_eval(z, w)) ** 2)
            assert closed == pytest.approx(series, rel=1e-12)
            assert closed == pytest.approx(quad.real, abs=1e-6)
            assert abs(quad.imag) < 1e-9


class TestNormalizedKernelCoeffs:
    def test_center_is_first_basis_vector(self):
        np.testing.assert_allclose(normalized_kernel_coeffs(0.0, 4), [1, 0, 0, 0])

    def test_half_point_values(self):
        c = normalized_kernel_coeffs(0.5, 2)
        np.testing.assert_allclose(c, [0.75, 0.75 * np.sqrt(2.0) * 0.5], atol=EXACT)

    def test_norm_tends_to_one(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            z = 0.8 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
            c = normalized_kernel_coeffs(z, 400)
            assert np.linalg.norm(c) == pytest.approx(1.0, abs=1e-12)

    def test_reproducing_property_sampled(self):
        # <f, k_z> = (1 - |z|^2) f(z) for polynomials, N = 128
        rng = np.random.default_rng(11)
        for _ in range(50):
            deg = int(rng.integers(0, 21))
            taylor = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
            z = 0.9 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
            basis_coeffs = np.zeros(128, dtype=complex)
            basis_coeffs[: deg + 1] = taylor / np.sqrt(np.arange(deg + 1) + 1.0)
            c = normalized_kernel_coeffs(z, 128)
            pairing = np.sum(basis_coeffs * np.conj(c))
            expected = (1.0 - abs(z) ** 2) * PowerSeries(taylor)(z)
            assert abs(pairing - expected) < 1e-8

    def test_domain_error(self):
        with pytest.raises(DomainError):
            normalized_kernel_coeffs(1.0 + 0j, 4)


class TestQuadrature:
    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(radial_nodes=1)
        with pytest.raises(ValueError):
            QuadratureSpec(angular_nodes=3)

    def test_weights_sum_to_one(self):
        _, w = QuadratureSpec().points()
        assert w.sum() == pytest.approx(1.0, abs=EXACT)

    def test_total_mass(self):
        assert disc_quadrature(lambda w: np.ones_like(w)) == pytest.approx(
            1.0, abs=EXACT
        )

    def test_radial_moment(self):
        val = disc_quadrature(lambda w: np.abs(w) ** 2, QuadratureSpec(32, 64))
        assert val == pytest.approx(0.5, abs=1e-12)

    def test_mean_of_rotating_integrand_vanishes(self):
        assert abs(disc_quadrature(lambda w: w)) < EXACT

    def test_monomial_inner_products_match_closed_form(self):
        # quadrature of w^a conj(w)^b vs delta_ab/(a+1), degrees <= 16
        spec = QuadratureSpec(64, 128)
        z, wt = spec.points()
        for a in range(17):
            for b in range(17):
                val = np.sum(wt * z**a * np.conj(z) ** b)
                expected = 1.0 / (a + 1.0) if a == b else 0.0
                assert abs(val - expected) < QUAD_TOL

    def test_scalar_only_callable_fallback(self):
        val = disc_quadrature(lambda w: abs(w) ** 2, QuadratureSpec(16, 32))
        assert val == pytest.approx(0.5, abs=1e-12)

    def test_deterministic(self):
        f = lambda w: np.exp(w) / (1.3 - w)
        assert disc_quadrature(f) == disc_quadrature(f)
