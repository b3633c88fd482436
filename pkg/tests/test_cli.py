import csv
import json
import math

import pytest

from lattice_gravimeter import cli, derive, rb87_params
from lattice_gravimeter.phases import ledger


def _write_cfg(tmp_path, **extra):
    p = rb87_params()
    cfg = {
        "atom_mass": p.atom_mass,
        "gravity": p.gravity,
        "wavelength": p.wavelength,
        "drive_freq": p.drive_freq,
        "shift_sites": p.shift_sites,
        "hold_time": p.hold_time,
        "pulse_time": p.pulse_time,
        "state": {"kind": "css", "N": 4},
    }
    cfg.update(extra)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    return str(path)


def test_derive_command_writes_ledger(tmp_path):
    cfg = _write_cfg(tmp_path)
    out = tmp_path / "out"
    assert cli.main(["--config", cfg, "--command", "derive",
                     "--out", str(out)]) == 0
    blob = json.loads((out / "derived.json").read_text())
    p = rb87_params()
    assert blob["derived_params"]["recoil_energy"] == pytest.approx(
        derive(p).recoil_energy, rel=1e-15)
    assert blob["phase_ledger"]["phi_total"] == pytest.approx(
        ledger(p).phi_total, rel=1e-15)
    manifest = json.loads((out / "run_manifest.json").read_text())
    assert manifest["command"] == "derive"
    assert manifest["seed"] == 42


def test_reruns_are_byte_identical(tmp_path):
    cfg = _write_cfg(tmp_path)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    cli.main(["--config", cfg, "--command", "derive", "--out", str(out1)])
    cli.main(["--config", cfg, "--command", "derive", "--out", str(out2)])
    assert (out1 / "derived.json").read_bytes() == (out2 / "derived.json").read_bytes()


def test_fringe_command(tmp_path):
    cfg = _write_cfg(tmp_path, phi_grid={"start": 0.0, "stop": 6.283185307179586,
                                         "num": 21})
    out = tmp_path / "out"
    assert cli.run(cfg, "fringe", str(out)) == 0
    with open(out / "fringe.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 21
    first = rows[0]
    assert float(first["phi"]) == 0.0
    assert float(first["mean"]) == pytest.approx(2.0, abs=1e-12)  # N/2 at phi=0
    mid = rows[10]  # phi = pi
    assert float(mid["mean"]) == pytest.approx(-2.0, abs=1e-12)


def test_validate_command_passes(tmp_path):
    cfg = _write_cfg(tmp_path, state={"kind": "css", "N": 3},
                     validate_draws=5)
    out = tmp_path / "out"
    assert cli.run(cfg, "validate", str(out), seed=7) == 0
    blob = json.loads((out / "validate.json").read_text())
    assert blob["pass"] is True
    assert blob["seed"] == 7
    assert max(blob["max_abs_deviation"].values()) <= blob["tolerance"]


def test_scaling_command(tmp_path):
    cfg = _write_cfg(tmp_path, N_list=[10, 100, 1000, 10000])
    out = tmp_path / "out"
    assert cli.run(cfg, "scaling", str(out)) == 0
    fit = json.loads((out / "scaling_fit.json").read_text())
    assert fit["exponent"] == pytest.approx(-0.5, abs=1e-9)
    with open(out / "scaling.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert [int(r["N"]) for r in rows] == [10, 100, 1000, 10000]
    ratio = float(rows[0]["dg_over_g"]) / float(rows[2]["dg_over_g"])
    assert ratio == pytest.approx(10.0, rel=1e-12)


def test_robustness_command(tmp_path):
    cfg = _write_cfg(tmp_path, state={"kind": "css", "N": 1},
                     delta_list=[0.0], robustness_grid=501)
    out = tmp_path / "out"
    assert cli.run(cfg, "robustness", str(out)) == 0
    with open(out / "robustness.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1
    assert abs(float(rows[0]["shift"])) < 1e-8
    assert float(rows[0]["visibility"]) == pytest.approx(1.0, abs=1e-10)


def test_unknown_command_exits_2(tmp_path):
    cfg = _write_cfg(tmp_path)
    assert cli.run(cfg, "explode", str(tmp_path / "out")) == 2


def test_bad_config_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"atom_mass\": 1e-25}")
    assert cli.run(str(bad), "derive", str(tmp_path / "out")) == 2
    missing = tmp_path / "nope.json"
    assert cli.run(str(missing), "derive", str(tmp_path / "out")) == 2


def test_sss_state_block(tmp_path):
    cfg = _write_cfg(tmp_path, state={"kind": "sss", "N": 10, "mu": 0.3},
                     N_list=[100, 1000, 10000])
    out = tmp_path / "out"
    assert cli.run(cfg, "scaling", str(out)) == 0
    fit = json.loads((out / "scaling_fit.json").read_text())
    assert fit["exponent"] < -0.5  # correlated input beats shot noise
