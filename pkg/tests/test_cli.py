import hashlib
import json
import subprocess
import sys

import numpy as np
import pytest

from berglab.cli import main, parse_scenario, run_scenario
from berglab.errors import ConfigError
from berglab.symbols import HarmonicSymbol, polynomial_symbol
from berglab.toeplitz import matrix_from_json, toeplitz_harmonic


def write_config(tmp_path, payload, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return path


def invertibility_config(**overrides):
    config = {
        "name": "inv",
        "kind": "invertibility",
        "symbol": {"c": 1.0, "d": 0.0, "g": {"type": "polynomial", "coeffs": [2.0, 1.0]}},
        "schedule": [16, 32, 64],
        "grid": {"radii": [0.0, 0.3, 0.6, 0.9], "angles": 64},
        "thresholds": {"inf_positive": 1e-3, "sigma_positive": 1e-6, "drift": 0.05},
        "seed": 7,
    }
    config.update(overrides)
    return config


class TestParseScenario:
    def test_invertibility_fields(self):
        sc = parse_scenario(invertibility_config())
        assert sc.kind == "invertibility"
        assert sc.schedule == (16, 32, 64)
        assert sc.seed == 7
        assert sc.symbol.case_tag == "analytic"
        assert sc.grid.angles_per_radius == 64

    def test_missing_c_names_the_field(self):
        config = invertibility_config()
        del config["symbol"]["c"]
        with pytest.raises(ConfigError, match="'c'"):
            parse_scenario(config)

    def test_unknown_field_rejected_by_name(self):
        with pytest.raises(ConfigError, match="'extra'"):
            parse_scenario(invertibility_config(extra=1))

    def test_unknown_symbol_field_rejected(self):
        config = invertibility_config()
        config["symbol"]["weight"] = 2
        with pytest.raises(ConfigError, match="'weight'"):
            parse_scenario(config)

    def test_bad_kind(self):
        with pytest.raises(ConfigError, match="config.kind"):
            parse_scenario({"name": "x", "kind": "mystery"})

    def test_seed_must_be_integer(self):
        with pytest.raises(ConfigError, match="config.seed"):
            parse_scenario(invertibility_config(seed=True))

    def test_thresholds_all_required(self):
        config = invertibility_config()
        del config["thresholds"]["drift"]
        with pytest.raises(ConfigError, match="'drift'"):
            parse_scenario(config)

    def test_grid_validation_is_a_config_error(self):
        config = invertibility_config()
        config["grid"]["radii"] = [0.9, 0.3]
        with pytest.raises(ConfigError, match="ascending"):
            parse_scenario(config)

    def test_quadrature_only_for_quadrature_builder(self):
        config = {
            "name": "t",
            "kind": "toeplitz_build",
            "builder": "closed_form",
            "n": 4,
            "symbol": {"c": 1, "d": 0, "g": {"type": "polynomial", "coeffs": [1]}},
            "quadrature": {"radial": 8, "angular": 16},
        }
        with pytest.raises(ConfigError, match="quadrature"):
            parse_scenario(config)

    def test_theorem_check_kinds(self):
        sc = parse_scenario(
            {
                "name": "t",
                "kind": "theorem_check",
                "check": "3.2",
                "count": 5,
                "matrix_size": 6,
                "s": 2.0,
                "vector_trials": 50,
                "seed": 1,
            }
        )
        assert sc.check == "3.2"
        assert sc.vector_trials == 50
        with pytest.raises(ConfigError, match="config.check"):
            parse_scenario({"name": "t", "kind": "theorem_check", "check": "3.9"})

    def test_rational_and_power_symbols_parse(self):
        config = invertibility_config()
        config["symbol"]["g"] = {"type": "rational", "num": [1.0], "den": [1.0, -0.5]}
        assert parse_scenario(config).symbol.g.kind == "rational"
        config["symbol"]["g"] = {
            "type": "principal_power",
            "plus_exponent": 1.0,
            "minus_exponent": -1.0,
        }
        assert parse_scenario(config).symbol.g.kind == "principal_power"

    def test_complex_pairs(self):
        config = invertibility_config()
        config["symbol"]["c"] = [1.0, 2.0]
        assert parse_scenario(config).symbol.c == 1.0 + 2.0j
        config["symbol"]["c"] = [1.0, 2.0, 3.0]
        with pytest.raises(ConfigError, match="re, im"):
            parse_scenario(config)


class TestRunScenario:
    def test_invertibility_report_and_manifest(self, tmp_path):
        path = write_config(tmp_path, invertibility_config())
        outdir = tmp_path / "out"
        manifest = run_scenario(path, str(outdir))
        report = json.loads((outdir / "report.json").read_text())
        assert report["verdict"] == "invertible_likely"
        assert report["seed"] == 7
        # manifest completeness: every file in output_dir except the
        # manifest itself is listed, and every hash recomputes
        listed = {o["path"] for o in manifest.outputs}
        on_disk = {p.name for p in outdir.iterdir()}
        assert on_disk == listed | {"manifest.json"}
        for entry in manifest.outputs:
            digest = hashlib.sha256((outdir / entry["path"]).read_bytes()).hexdigest()
            assert digest == entry["sha256"]

    def test_toeplitz_build_round_trips(self, tmp_path):
        config = {
            "name": "shift",
            "kind": "toeplitz_build",
            "builder": "closed_form",
            "n": 8,
            "symbol": {"c": 1.0, "d": 0.0, "g": {"type": "polynomial", "coeffs": [0.0, 1.0]}},
        }
        outdir = tmp_path / "out"
        run_scenario(write_config(tmp_path, config), str(outdir))
        op = matrix_from_json(outdir / "matrix.json")
        expected = toeplitz_harmonic(
            HarmonicSymbol(1.0, 0.0, polynomial_symbol([0.0, 1.0])), 8
        )
        np.testing.assert_array_equal(op.matrix, expected.matrix)
        report = json.loads((outdir / "report.json").read_text())
        assert report["sigma_min"] <= 1e-14

    def test_berezin_grid_outputs(self, tmp_path):
        config = {
            "name": "bz",
            "kind": "berezin_grid",
            "route": "harmonic_closed_form",
            "symbol": {"c": 1.0, "d": 0.5, "g": {"type": "polynomial", "coeffs": [2.0, 1.0]}},
            "grid": {"radii": [0.0, 0.5, 0.8], "angles": 8},
        }
        outdir = tmp_path / "out"
        run_scenario(write_config(tmp_path, config), str(outdir))
        lines = (outdir / "grid.csv").read_text().splitlines()
        assert lines[0] == "re_z,im_z,re_val,im_val,route,err"
        assert len(lines) == 1 + 3 * 8
        report = json.loads((outdir / "report.json").read_text())
        assert report["num_points"] == 24
        # phi = (2 + z) + 0.5 conj(2 + z) has modulus min at z = -0.8
        assert report["min_abs_value"] == pytest.approx(1.8, abs=1e-12)

    def test_theorem_check_sweep_all_pass(self, tmp_path):
        config = {
            "name": "t31",
            "kind": "theorem_check",
            "check": "3.1",
            "count": 100,
            "matrix_size": 8,
            "s": [0.3, 0.4],
            "seed": 11,
        }
        outdir = tmp_path / "out"
        run_scenario(write_config(tmp_path, config), str(outdir))
        report = json.loads((outdir / "report.json").read_text())
        assert report["passes"] == 100
        assert report["all_pass"] is True
        assert report["min_margin"] > 0

    def test_shift_demo_report(self, tmp_path):
        config = {
            "name": "shift",
            "kind": "theorem_check",
            "check": "shift_demo",
            "n": 16,
            "s": 2.0,
            "seed": 0,
        }
        outdir = tmp_path / "out"
        run_scenario(write_config(tmp_path, config), str(outdir))
        report = json.loads((outdir / "report.json").read_text())
        assert report["witness_adjoint_norm"] == 0.0
        assert report["witness_mix_norm"] == pytest.approx(np.sqrt(2), abs=1e-12)

    def test_output_dir_from_config(self, tmp_path):
        outdir = tmp_path / "from_config"
        path = write_config(tmp_path, invertibility_config(output_dir=str(outdir)))
        run_scenario(path)
        assert (outdir / "report.json").exists()

    def test_missing_output_dir(self, tmp_path):
        path = write_config(tmp_path, invertibility_config())
        with pytest.raises(ConfigError, match="output_dir"):
            run_scenario(path)


class TestDeterminism:
    def test_reports_byte_identical_across_runs(self, tmp_path):
        path = write_config(tmp_path, invertibility_config())
        a, b = tmp_path / "a", tmp_path / "b"
        run_scenario(path, str(a))
        run_scenario(path, str(b))
        assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()
        ma = json.loads((a / "manifest.json").read_text())
        mb = json.loads((b / "manifest.json").read_text())
        del ma["timings_s"], mb["timings_s"]
        assert ma == mb

    def test_theorem_check_deterministic_by_seed(self, tmp_path):
        config = {
            "name": "t32",
            "kind": "theorem_check",
            "check": "3.2",
            "count": 10,
            "matrix_size": 6,
            "s": 1.5,
            "vector_trials": 100,
            "seed": 3,
        }
        path = write_config(tmp_path, config)
        a, b = tmp_path / "a", tmp_path / "b"
        run_scenario(path, str(a))
        run_scenario(path, str(b))
        assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()


class TestExitCodes:
    def test_success(self, tmp_path):
        path = write_config(tmp_path, invertibility_config())
        assert main(["run", str(path), "--output-dir", str(tmp_path / "o")]) == 0

    def test_validation_error(self, tmp_path, capsys):
        config = invertibility_config()
        del config["symbol"]["c"]
        path = write_config(tmp_path, config)
        assert main(["run", str(path), "--output-dir", str(tmp_path / "o")]) == 2
        assert "'c'" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["run", str(tmp_path / "nope.json")]) == 2

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert main(["validate", str(path)]) == 2

    def test_numerical_refusal(self, tmp_path, capsys):
        # matrix route at |z| = 0.98 with a small truncation: the tail
        # estimate exceeds the budget and the run refuses with exit 3
        config = {
            "name": "refuse",
            "kind": "berezin_grid",
            "route": "matrix",
            "n": 64,
            "tail_tol": 1e-6,
            "symbol": {"c": 1.0, "d": 0.0, "g": {"type": "polynomial", "coeffs": [2.0, 1.0]}},
            "grid": {"radii": [0.98], "angles": 4},
        }
        path = write_config(tmp_path, config)
        assert main(["run", str(path), "--output-dir", str(tmp_path / "o")]) == 3
        assert "tail" in capsys.readouterr().err

    def test_example35_refuses_extreme_t(self, tmp_path):
        args = ["example35", "--t", "25", "--schedule", "16,32,64",
                "--output-dir", str(tmp_path)]
        assert main(args) == 3

    def test_validate_ok(self, tmp_path, capsys):
        path = write_config(tmp_path, invertibility_config())
        assert main(["validate", str(path)]) == 0
        assert "ok" in capsys.readouterr().out


class TestExample35Command:
    def test_writes_report_with_exact_factorization(self, tmp_path, capsys):
        args = ["example35", "--t", "1.0", "--schedule", "16,32,64",
                "--output-dir", str(tmp_path)]
        assert main(args) == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["bounds_hold"] is True
        assert max(report["residuals"]) <= 1e-12
        assert report["grid_min"] >= report["modulus_bound"]
        assert "grid_min" in capsys.readouterr().out

    def test_bad_schedule(self, tmp_path):
        args = ["example35", "--t", "1.0", "--schedule", "16;32",
                "--output-dir", str(tmp_path)]
        assert main(args) == 2


def test_console_entry_point(tmp_path):
    path = write_config(tmp_path, invertibility_config())
    proc = subprocess.run(
        [sys.executable, "-m", "berglab.cli", "validate", str(path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "ok" in proc.stdout
