"""Batch front end: read a JSON config, run one command, write artifacts.

Commands
    derive      -> derived.json (derived params + full phase ledger)
    fringe      -> fringe.csv
    scaling     -> scaling.csv + scaling_fit.json
    validate    -> validate.json (closed forms vs brute-force oracle)
    robustness  -> robustness.csv

Exit codes: 0 success, 1 validation failure, 2 config error.
Numbers are serialized with 17 significant digits so identical configs
produce byte-identical files; the manifest timestamp is the only
non-deterministic output field.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import dicke, fock, phases, sensitivity
from .moments import moments as compute_moments
from .params import (HBAR, ParamError, PhysicalParams, derive, load_config,
                     params_from_dict)

COMMANDS = ("derive", "fringe", "scaling", "validate", "robustness")
VALIDATE_TOL = 1e-10

_COMPARED_FIELDS = ("mean_global", "mean_local", "second_global", "second_local",
                    "second_outer_minus", "second_outer_plus",
                    "var_global", "var_local", "visibility")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _jsonify(obj):
    if dataclasses.is_dataclass(obj):
        return {k: _jsonify(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    return obj


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(_jsonify(obj), indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _build_state(cfg: dict, p: PhysicalParams) -> dicke.SymmetricSpinState:
    state_cfg = cfg.get("state")
    if not isinstance(state_cfg, dict) or "kind" not in state_cfg or "N" not in state_cfg:
        raise ParamError("config needs a 'state' block with 'kind' and 'N'")
    kind, n = state_cfg["kind"], int(state_cfg["N"])
    if kind == "css":
        return dicke.css(n)
    if kind == "sss":
        if "mu" in state_cfg:
            mu = float(state_cfg["mu"])
            beta = float(state_cfg["beta"]) if "beta" in state_cfg else \
                dicke.transverse_noise(dicke.oat_twist(dicke.css(n), mu))[1]
        else:
            mu, beta, _ = dicke.optimal_oat(n)
        return dicke.rotate_x(dicke.oat_twist(dicke.css(n), mu), beta)
    raise ParamError(f"state kind must be 'css' or 'sss', got {kind!r}")


def _phi_grid(cfg: dict) -> np.ndarray:
    block = cfg.get("phi_grid", {"start": 0.0, "stop": 2.0 * math.pi, "num": 201})
    return np.linspace(float(block["start"]), float(block["stop"]), int(block["num"]))


def _cmd_derive(cfg, p, out: Path) -> int:
    _write_json(out / "derived.json", {
        "derived_params": derive(p),
        "phase_ledger": phases.ledger(p),
    })
    return 0


def _cmd_fringe(cfg, p, out: Path) -> int:
    state = _build_state(cfg, p)
    rows = sensitivity.fringe_scan(p, state, _phi_grid(cfg))
    _write_csv(out / "fringe.csv", ["phi", "mean", "lo", "hi"], rows)
    return 0


def _cmd_scaling(cfg, p, out: Path) -> int:
    state_cfg = cfg.get("state", {})
    kind = state_cfg.get("kind", "css")
    n_list = [int(n) for n in cfg.get("N_list", [10, 100, 1000, 10000])]
    fit = sensitivity.scaling_study(p, n_list, kind)
    rows = []
    for n in n_list:
        if kind == "css":
            chi_value = 1.0
        else:
            _, _, chi_value = dicke.optimal_oat(n)
        rows.append((n, sensitivity._dg_from_chi(p, n, chi_value)))
    _write_csv(out / "scaling.csv", ["N", "dg_over_g"], rows)
    _write_json(out / "scaling_fit.json", fit)
    return 0


def _cmd_validate(cfg, p, out: Path, seed: int) -> int:
    state_cfg = cfg.get("state", {"kind": "css", "N": 4})
    n = int(state_cfg.get("N", 4))
    if n > fock.ORACLE_CAP:
        raise ParamError(
            f"validate needs N <= {fock.ORACLE_CAP} for the brute-force "
            f"oracle; got N={n}")
    draws = int(cfg.get("validate_draws", 20))
    rng = np.random.default_rng(seed)
    worst = {f: 0.0 for f in _COMPARED_FIELDS}
    for _ in range(draws):
        coeffs = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
        coeffs /= np.linalg.norm(coeffs)
        state = dicke.SymmetricSpinState(coeffs)
        xi = rng.uniform(0.0, 2.0 * math.pi)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        pg = _params_for_angles(p, xi, phi)
        analytic = compute_moments(state, xi, phi)
        oracle = fock.measure(fock.simulate(pg, state))
        for f in _COMPARED_FIELDS:
            dev = abs(getattr(analytic, f) - getattr(oracle, f))
            worst[f] = max(worst[f], dev)
    max_dev = max(worst.values())
    ok = max_dev <= VALIDATE_TOL
    _write_json(out / "validate.json", {
        "n_particles": n,
        "draws": draws,
        "seed": seed,
        "max_abs_deviation": worst,
        "tolerance": VALIDATE_TOL,
        "pass": ok,
    })
    return 0 if ok else 1


def _params_for_angles(p: PhysicalParams, xi: float, phi: float) -> PhysicalParams:
    """Parameters whose phase ledger lands on (xi, phi) modulo 2*pi.

    Phases below pi would need negative gravity, so they are lifted by one
    full fringe; every moment formula is 2*pi-periodic in phi.
    """
    d = derive(p)
    phi_eff = phi if phi >= math.pi else phi + 2.0 * math.pi
    gravity = (phi_eff - math.pi) * HBAR / (2.0 * p.atom_mass * p.shift_sites
                                            * d.lattice_const * d.total_time)
    t_h = p.hold_time if p.hold_time > 0 else 1.0
    omega0 = 2.0 * xi / t_h  # with zero on-site energies
    return dataclasses.replace(p, gravity=gravity,
                               transition_freq=omega0,
                               onsite_up=0.0, onsite_dn=0.0,
                               hold_time=t_h)


def _cmd_robustness(cfg, p, out: Path) -> int:
    state = _build_state(cfg, p)
    delta_list = [float(d) for d in cfg.get("delta_list", [0.0])]
    n_grid = int(cfg.get("robustness_grid", 10_000))
    rows = sensitivity.robustness(p, state, delta_list, n_grid=n_grid)
    _write_csv(out / "robustness.csv", ["delta", "shift", "visibility"], rows)
    return 0


def run(config_path: str, command: str, out_dir: str, seed: int = 42) -> int:
    if command not in COMMANDS:
        print(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}",
              file=sys.stderr)
        return 2
    try:
        cfg = load_config(config_path)
        p = params_from_dict(cfg)
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        if command == "derive":
            code = _cmd_derive(cfg, p, out)
        elif command == "fringe":
            code = _cmd_fringe(cfg, p, out)
        elif command == "scaling":
            code = _cmd_scaling(cfg, p, out)
        elif command == "validate":
            code = _cmd_validate(cfg, p, out, seed)
        else:
            code = _cmd_robustness(cfg, p, out)
    except ParamError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    manifest = {
        "command": command,
        "config": cfg,
        "seed": seed,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }
    _write_json(Path(out_dir) / "run_manifest.json", manifest)
    return code


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lattice-gravimeter",
        description="Batch runner for the lattice-gravimeter toolkit")
    parser.add_argument("--config", required=True, help="JSON config file")
    parser.add_argument("--command", required=True, choices=COMMANDS)
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--seed", type=int, default=42,
                        help="seed for randomized validation draws")
    args = parser.parse_args(argv)
    return run(args.config, args.command, args.out, args.seed)


if __name__ == "__main__":
    sys.exit(main())
