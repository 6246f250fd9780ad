"""Berezin transform routes, their agreement, and grid exports."""

import json

import numpy as np
import pytest

from berglab import DomainError, NumericalError, QuadratureSpec
from berglab.berezin import (
    berezin_grid,
    berezin_harmonic,
    berezin_integral,
    berezin_matrix,
    grid_to_csv,
    grid_to_json,
)
from berglab.symbols import DiscGrid, HarmonicSymbol, polynomial_symbol
from berglab.toeplitz import toeplitz_analytic, toeplitz_harmonic

BOOSTED = QuadratureSpec(96, 384)  # boundary-capable integral spec


def random_point(rng, rmax):
    return rmax * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())


class TestIntegralRoute:
    def test_constant_symbol(self):
        for z in (0.0, 0.3, 0.5 + 0.2j, 0.7):
            s = berezin_integral(lambda w: np.ones_like(w), z)
            assert abs(s.value - 1.0) < 1e-10
            assert s.route == "integral"

    def test_constant_symbol_near_boundary_needs_boost(self):
        s = berezin_integral(lambda w: np.ones_like(w), 0.9, BOOSTED)
        assert abs(s.value - 1.0) < 1e-10

    def test_harmonic_fixed_point(self):
        phi = HarmonicSymbol(1.0, 2.0, polynomial_symbol([0.0, 1.0]))
        z = 0.3 + 0.4j
        s = berezin_integral(phi, z)
        assert abs(s.value - (0.9 - 0.4j)) < 1e-8

    def test_radial_symbol_at_center(self):
        s = berezin_integral(lambda w: np.abs(w) ** 2, 0.0)
        assert abs(s.value - 0.5) < 1e-10

    def test_error_estimate_tracks_true_error(self):
        # at |z| = 0.9 the default spec is honestly bad and says so
        s = berezin_integral(lambda w: np.ones_like(w), 0.9)
        true_err = abs(s.value - 1.0)
        assert true_err > 1e-8
        assert s.error_estimate > 0.1 * true_err

    def test_domain_error(self):
        with pytest.raises(DomainError):
            berezin_integral(lambda w: w, 1.0)


class TestMatrixRoute:
    def test_identity_at_center(self):
        op = toeplitz_analytic([1.0], 256)
        s = berezin_matrix(op, 0.0)
        assert s.value == 1.0 + 0j

    def test_analytic_symbol_reproduces(self):
        op = toeplitz_analytic([0.0, 1.0], 128)
        s = berezin_matrix(op, 0.5)
        assert abs(s.value - 0.5) < 1e-9

    def test_harmonic_symbol_reproduces(self):
        phi = HarmonicSymbol(1.0, 2.0, polynomial_symbol([0.0, 1.0]))
        op = toeplitz_harmonic(phi, 128)
        s = berezin_matrix(op, 0.3 + 0.4j)
        assert abs(s.value - (0.9 - 0.4j)) < 1e-8

    def test_tail_refusal_near_boundary(self):
        op = toeplitz_analytic([1.0], 256)
        with pytest.raises(NumericalError, match="tail"):
            berezin_matrix(op, 0.98)

    def test_passes_just_inside_refusal_radius(self):
        op = toeplitz_analytic([1.0], 256)
        s = berezin_matrix(op, 0.96)
        assert s.error_estimate < 1e-6
        assert abs(s.value - 1.0) < 1e-5

    def test_domain_error(self):
        with pytest.raises(DomainError):
            berezin_matrix(toeplitz_analytic([1.0], 8), 1.2)


class TestHarmonicRoute:
    def test_constant(self):
        phi = HarmonicSymbol(2.5 - 1j, 0.0, polynomial_symbol([1.0]))
        s = berezin_harmonic(phi, 0.4j)
        assert s.value == pytest.approx(2.5 - 1j)
        assert s.error_estimate == 0.0

    def test_analytic_square(self):
        phi = HarmonicSymbol(1.0, 0.0, polynomial_symbol([0.0, 0.0, 1.0]))
        assert berezin_harmonic(phi, 0.5).value == pytest.approx(0.25)

    def test_real_harmonic(self):
        phi = HarmonicSymbol(1.0, 1.0, polynomial_symbol([2.0, 1.0]))
        assert berezin_harmonic(phi, -0.9).value == pytest.approx(2.2)


class TestRouteAgreement:
    def test_three_routes_sampled(self):
        rng = np.random.default_rng(19)
        for _ in range(3):
            deg = int(rng.integers(0, 7))
            g = polynomial_symbol(
                rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
            )
            c, d = rng.normal(size=2) + 1j * rng.normal(size=2)
            phi = HarmonicSymbol(c, d, g)
            op = toeplitz_harmonic(phi, 256)
            for _ in range(10):
                z = random_point(rng, 0.9)
                vi = berezin_integral(phi, z, BOOSTED).value
                vm = berezin_matrix(op, z).value
                vh = berezin_harmonic(phi, z).value
                assert abs(vi - vh) < 1e-6
                assert abs(vm - vh) < 1e-6
                assert abs(vi - vm) < 1e-6

    def test_grid_route_crosscheck(self):
        phi = HarmonicSymbol(1.0, 2.0, polynomial_symbol([0.0, 1.0]))
        grid = DiscGrid(tuple(np.linspace(0.0, 0.8, 8)), 16)
        si = berezin_grid(phi, grid, "integral")
        sh = berezin_grid(phi, grid, "harmonic_closed_form")
        gap = max(abs(a.value - b.value) for a, b in zip(si, sh))
        assert gap < 1e-7

    def test_grid_min_matches_symbol_min(self):
        phi = HarmonicSymbol(1.0, 1.0, polynomial_symbol([2.0, 1.0]))
        grid = DiscGrid((0.0, 0.3, 0.6, 0.9), 64)
        samples = berezin_grid(phi, grid, "matrix")
        tmin = min(abs(s.value) for s in samples)
        smin = np.min(np.abs(phi(grid.nodes())))
        assert tmin == pytest.approx(smin, abs=1e-8)


class TestPositivity:
    def test_nonnegative_symbol_stays_nonnegative(self):
        phi = HarmonicSymbol(1.0, 1.0, polynomial_symbol([2.0, 1.0]))  # 4 + 2 Re
        rng = np.random.default_rng(29)
        for _ in range(25):
            z = random_point(rng, 0.85)
            s = berezin_integral(phi, z)
            assert s.value.real >= -1e-10
            assert abs(s.value.imag) < 1e-10


class TestGridSweepAndExport:
    def test_constant_grid(self):
        phi = HarmonicSymbol(1.0, 0.0, polynomial_symbol([1.0]))
        grid = DiscGrid((0.0, 0.5), 4)
        samples = berezin_grid(phi, grid, "harmonic_closed_form")
        assert len(samples) == 8
        assert all(abs(s.value - 1.0) < 1e-14 for s in samples)

    def test_row_major_node_order(self):
        phi = HarmonicSymbol(1.0, 0.0, polynomial_symbol([0.0, 1.0]))
        grid = DiscGrid((0.0, 0.5), 4)
        samples = berezin_grid(phi, grid, "harmonic_closed_form")
        expected = grid.nodes().ravel()
        np.testing.assert_allclose([s.z for s in samples], expected)

    def test_unknown_route_rejected(self):
        phi = HarmonicSymbol(1.0, 0.0, polynomial_symbol([1.0]))
        with pytest.raises(ValueError, match="route"):
            berezin_grid(phi, DiscGrid((0.0, 0.5), 4), "poisson")

    def test_csv_header_and_shape(self, tmp_path):
        phi = HarmonicSymbol(1.0, 2.0, polynomial_symbol([0.0, 1.0]))
        grid = DiscGrid((0.0, 0.25, 0.5), 8)
        samples = berezin_grid(phi, grid, "harmonic_closed_form")
        path = tmp_path / "grid.csv"
        grid_to_csv(samples, path)
        lines = path.read_text().strip().split("\n")
        assert lines[0] == "re_z,im_z,re_val,im_val,route,err"
        assert len(lines) == 1 + 24
        cells = lines[1].split(",")
        assert cells[4] == "harmonic_closed_form"

    def test_json_rows(self, tmp_path):
        phi = HarmonicSymbol(1.0, 0.0, polynomial_symbol([2.0, 1.0]))
        samples = berezin_grid(phi, DiscGrid((0.0, 0.5), 4), "harmonic_closed_form")
        path = tmp_path / "grid.json"
        grid_to_json(samples, path)
        rows = json.loads(path.read_text())
        assert len(rows) == 8
        assert set(rows[0]) == {"re_z", "im_z", "re_val", "im_val", "route", "err"}
        assert rows[0]["re_val"] == pytest.approx(2.0)
