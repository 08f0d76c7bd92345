"""Front-end behavior: file emission, exit codes, determinism, round-trips."""
import csv
import json
import math
from pathlib import Path

import numpy as np
import pytest

from rmdirac.cli import main


def write_cfg(tmp_path: Path, cfg: dict, name: str = "cfg.json") -> str:
    p = tmp_path / name
    p.write_text(json.dumps(cfg), encoding="utf-8")
    return str(p)


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


BASE = {
    "potential": {"kind": "reflectionless", "a2": 4.0, "alpha": 0.8},
    "sector": {"kind": "spin", "kappa": -1, "mass": 5.0, "c_const": 0.0},
    "search": {"n_max": 2},
}


class TestPotentialCommand:
    def test_single_curve(self, tmp_path):
        cfg = write_cfg(tmp_path, {"potential": {"kind": "rosen_morse", "v1": 1.0, "v2": 2.0, "alpha": 1.0}})
        out = tmp_path / "pot.csv"
        assert main(["potential", "--config", cfg, "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["r", "V"]
        vs = [float(r[1]) for r in rows]
        assert vs[0] == pytest.approx(-1.0)
        # tilt at twice the well depth: monotone rise everywhere
        assert all(a < b for a, b in zip(vs, vs[1:]))

    def test_fig_family_scans(self, tmp_path):
        # positive-tilt family: V rises monotonically from -v1 toward +v2
        v1 = 2.0
        pots = [
            {"kind": "rosen_morse", "v1": v1, "v2": 2 * v1, "alpha": 1.0},
            {"kind": "rosen_morse", "v1": v1, "v2": v1, "alpha": 1.0},
            {"kind": "rosen_morse", "v1": v1, "v2": v1 / 3.0, "alpha": 1.0},
        ]
        cfg = write_cfg(tmp_path, {"potentials": pots, "output": {"dir": str(tmp_path)}})
        assert main(["potential", "--config", cfg]) == 0
        for idx, pd in enumerate(pots):
            header, rows = read_csv(tmp_path / f"potential_{idx}.csv")
            vs = [float(r[1]) for r in rows]
            assert all(a < b for a, b in zip(vs, vs[1:]))
            assert vs[0] == pytest.approx(-pd["v1"])
            assert vs[-1] < pd["v2"]

    def test_symmetric_wells_depth_at_origin(self, tmp_path):
        pots = [{"kind": "reflectionless", "a2": lam * (lam + 1) / 2.0, "alpha": 1.0, "lam": lam}
                for lam in (1, 2, 3)]
        cfg = write_cfg(tmp_path, {"potentials": pots, "output": {"dir": str(tmp_path)}})
        assert main(["potential", "--config", cfg]) == 0
        for idx, lam in enumerate((1, 2, 3)):
            _, rows = read_csv(tmp_path / f"potential_{idx}.csv")
            assert float(rows[0][1]) == pytest.approx(-lam * (lam + 1) / 2.0)

    def test_asymmetric_well_sets(self, tmp_path):
        pots = [
            {"kind": "standard_rm", "a": 5.0, "b": 1.0, "alpha": 1.0},
            {"kind": "standard_rm", "a": 1.0, "b": 2.0, "alpha": 5.0},
            {"kind": "standard_rm", "a": 2.0, "b": 1.0, "alpha": 10.0},
        ]
        cfg = write_cfg(tmp_path, {"potentials": pots, "output": {"dir": str(tmp_path)}})
        assert main(["potential", "--config", cfg]) == 0
        for idx in range(3):
            header, rows = read_csv(tmp_path / f"potential_{idx}.csv")
            assert header == ["r", "V"] and len(rows) >= 100


class TestSpectrumCommand:
    def test_swave_run(self, tmp_path):
        cfg = write_cfg(tmp_path, BASE)
        out = tmp_path / "spec.json"
        assert main(["spectrum", "--config", cfg, "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert set(doc) == {"levels", "pekeris", "potential", "sector"}
        adm = [lv for lv in doc["levels"] if lv["admissible"]]
        assert [lv["n"] for lv in adm] == [0, 1, 2]
        for lv in adm:
            assert abs(lv["residual"]) < 1e-10
            assert set(lv) == {"n", "kappa", "E", "residual", "a0", "q", "admissible"}

    def test_invalid_alpha_exits_2(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, BASE)
        code = main(["spectrum", "--config", cfg, "--potential.alpha=-1.0"])
        assert code == 2
        assert "alpha" in capsys.readouterr().err

    def test_unknown_key_exits_2(self, tmp_path):
        cfg = write_cfg(tmp_path, {**BASE, "bogus": 1})
        assert main(["spectrum", "--config", cfg]) == 2

    def test_empty_spectrum_exits_3(self, tmp_path):
        cfg = write_cfg(
            tmp_path,
            {
                "potential": {"kind": "reflectionless", "a2": 4.0, "alpha": 0.8},
                "sector": {"kind": "pspin", "kappa": 1, "mass": 5.0, "c_const": 0.0},
                "search": {"n_max": 2},
            },
        )
        out = tmp_path / "s.json"
        assert main(["spectrum", "--config", cfg, "--out", str(out)]) == 3

    def test_dotted_override_applies(self, tmp_path):
        cfg = write_cfg(tmp_path, BASE)
        out = tmp_path / "s.json"
        assert main(["spectrum", "--config", cfg, "--out", str(out), "--search.n_max=0"]) == 0
        doc = json.loads(out.read_text())
        assert all(lv["n"] == 0 for lv in doc["levels"])

    def test_mapping_check_column(self, tmp_path):
        cfg = write_cfg(
            tmp_path,
            {
                "potential": {"kind": "rosen_morse", "v1": -4.0, "v2": -0.6, "alpha": 0.8},
                "sector": {"kind": "pspin", "kappa": 1, "mass": 5.0, "c_const": 0.0},
                "search": {"n_max": 1},
                "mapping_check": True,
            },
        )
        out = tmp_path / "s.json"
        assert main(["spectrum", "--config", cfg, "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert "mapping_delta" in doc
        deltas = [d for d in doc["mapping_delta"] if d is not None]
        assert deltas and max(deltas) <= 1e-12

    def test_determinism_and_roundtrip(self, tmp_path):
        cfg = write_cfg(tmp_path, BASE)
        o1, o2 = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["spectrum", "--config", cfg, "--out", str(o1)]) == 0
        assert main(["spectrum", "--config", cfg, "--out", str(o2)]) == 0
        assert o1.read_bytes() == o2.read_bytes()
        doc = json.loads(o1.read_text())
        # floats round-trip exactly through repr-style emission
        redumped = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        assert redumped.encode() == o1.read_bytes()

    def test_csv_format(self, tmp_path):
        cfg = dict(BASE)
        cfg["output"] = {"format": "csv"}
        p = write_cfg(tmp_path, cfg)
        out = tmp_path / "levels.csv"
        assert main(["spectrum", "--config", p, "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["n", "kappa", "E", "residual", "a0", "q", "admissible"]
        assert rows


class TestWavefunctionCommand:
    def test_existing_level(self, tmp_path):
        cfg = write_cfg(tmp_path, BASE)
        out = tmp_path / "wf.csv"
        assert main(["wavefunction", "--config", cfg, "--out", str(out), "--n", "1"]) == 0
        header, rows = read_csv(out)
        assert header == ["r", "F", "G"]
        meta = json.loads((tmp_path / "wf.json").read_text())
        assert meta["norm"] == pytest.approx(1.0, abs=1e-8)
        assert meta["norm_check_trapezoid"] == pytest.approx(1.0, abs=1e-4)
        assert meta["ode_residual_sup"] < 1e-6
        assert meta["decay_slope"] == pytest.approx(meta["decay_slope_expected"], rel=0.02)

    def test_absent_level_exits_3(self, tmp_path):
        cfg = write_cfg(tmp_path, BASE)
        assert main(["wavefunction", "--config", cfg, "--n", "99"]) == 3


class TestPekerisCommand:
    def test_emits_both_sources(self, tmp_path):
        cfg = write_cfg(
            tmp_path,
            {
                "potential": {"kind": "rosen_morse", "v1": 4.0, "v2": -3.0, "alpha": 0.8},
                "pekeris": {"r_e": 1.2},
            },
        )
        out = tmp_path / "pek.json"
        assert main(["pekeris", "--config", cfg, "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert set(doc) == {"alpha", "re", "formulas", "taylor", "delta"}
        assert abs(doc["delta"]["d0"]) < 1e-9
        assert abs(doc["delta"]["d2"]) < 1e-8
        assert abs(doc["delta"]["d1"]) > 1.0  # the recorded middle-coefficient discrepancy


class TestValidateCommand:
    def test_swave_suite_passes(self, tmp_path):
        cfg = write_cfg(tmp_path, {**BASE, "oracle": {"grid_points": 5000, "r_max": 45.0}})
        out = tmp_path / "val.json"
        assert main(["validate", "--config", cfg, "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["pass"] is True
        assert doc["checks"]["mapping_identity"]["passed"]
        assert doc["checks"]["equal_mixing_identity"]["passed"]
        assert doc["checks"]["closed_vs_oracle"]["pass"]

    def test_corrupted_middle_coefficient_flagged(self, tmp_path):
        cfg = write_cfg(
            tmp_path,
            {
                "potential": {"kind": "rosen_morse", "v1": 6.0, "v2": -5.0, "alpha": 1.0},
                "sector": {"kind": "spin", "kappa": -2, "mass": 8.0, "c_const": 0.5},
                "search": {"n_max": 0},
                "pekeris": {"r_e": 1.0, "d0": 0.51, "d1": 5.0, "d2": 30.0},
                "oracle": {"grid_points": 3000, "r_max": 35.0},
            },
        )
        out = tmp_path / "val.json"
        code = main(["validate", "--config", cfg, "--out", str(out)])
        doc = json.loads(out.read_text())
        assert not doc["checks"]["pekeris_match"]["passed"]
        assert code == 1

    def test_surrogate_vs_exact_diagnostic_emitted(self, tmp_path):
        cfg = write_cfg(
            tmp_path,
            {
                "potential": {"kind": "rosen_morse", "v1": 6.0, "v2": -5.0, "alpha": 0.8},
                "sector": {"kind": "spin", "kappa": -2, "mass": 8.0, "c_const": 0.5},
                "search": {"n_max": 0},
                "pekeris": {"r_e": 1.0},
                "oracle": {"grid_points": 4000, "r_max": 50.0},
            },
        )
        out = tmp_path / "val.json"
        assert main(["validate", "--config", cfg, "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        diag = doc["checks"]["exact_vs_surrogate_diagnostic"]
        assert diag["per_level"], diag
        assert diag["per_level"][0]["delta_abs"] > 1e-6  # honest approximation error
        # the duplicated-range-factor variant measurably deviates once alpha != 1
        assert doc["checks"]["tilt_denominator_variants"]["delta"] > 0.0
