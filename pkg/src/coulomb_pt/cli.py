"""Command-line driver: ``coulomb-pt <subcommand> [options]``.

Exit codes: 0 success, 1 validation failure, 2 bad arguments, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict

import numpy as np

from . import io as cio
from .coulomb_potential import PotentialError
from .cross_section import (
    CrossSectionError,
    XSecConfig,
    default_l_max,
    delta_profile,
    differential_cross_section,
    moller,
    radians_mirrored,
    rutherford,
)
from .kinematics import ALPHA, ELECTRON_MASS_MEV, MEV2_TO_MBARN, Kinematics, KinematicsError
from .phase_shifts import ExtensionPolicy, build_table
from .pv_quadrature import PVConvergenceError, PVError, PVQuadConfig
from .special_functions import ConvergenceError, SpecialFunctionError, coulomb_sigma_exact
from .validate import run_checks

EXIT_OK, EXIT_VALIDATION, EXIT_ARGS, EXIT_NUMERICAL = 0, 1, 2, 3

# per-command defaults, overridden by a config file and then by flags
COMMAND_DEFAULTS = {
    "phase-shifts": {"p_mev": 0.02, "l_max": 50, "order": 2},
    "xsec-angle": {"p_mev": 5.0, "order": 2, "theta_min": 5.0, "theta_max": 175.0, "theta_step": 5.0},
    "xsec-momentum": {"order": 1, "p_min": 0.03, "p_max": 19.0, "n_p": 40, "theta": 90.0},
    "delta-profile": {"p_mev": 0.02, "order": 2, "theta": 90.0, "delta_min": -5.0, "delta_max": 5.0, "delta_step": 0.05},
    "validate": {},
}
COMMON_DEFAULTS = {
    "mass_mev": ELECTRON_MASS_MEV,
    "alpha": ALPHA,
    "epsilon": 1e-3,
    "l_max": None,
    "l_max_delta2": 50,
    "extension": ExtensionPolicy.HOLD.value,
    "symmetrize": False,
    "delta": 0.0,
    "mbarn": False,
    "workers": 1,
    "format": "csv",
    "out": None,
    "tolerance": None,
}
PV_KEYS = {f"pv_{k}": v for k, v in asdict(PVQuadConfig()).items()}


class ArgumentError(ValueError):
    pass


def _add_shared(parser):
    # default=None everywhere so that unset flags do not override the config file
    add = parser.add_argument
    add("--p-mev", type=float, default=None, help="momentum of each particle in the CM frame (MeV)")
    add("--mass-mev", type=float, default=None, help="particle mass (MeV)")
    add("--alpha", type=float, default=None, help="coupling constant")
    add("--epsilon", type=float, default=None, help="wavepacket spread sigma_p/p")
    add("--l-max", type=int, default=None, help="highest partial wave")
    add("--l-max-delta2", type=int, default=None, help="highest l with a computed second-order shift")
    add("--order", type=int, choices=(1, 2), default=None, help="perturbative order of the phase shifts")
    add("--extension", choices=[e.value for e in ExtensionPolicy], default=None)
    add("--symmetrize", action="store_const", const=True, default=None, help="insert the 1+(-1)^l factor")
    add("--delta", type=float, default=None, help="time-shift parameter")
    add("--mbarn", action="store_const", const=True, default=None, help="cross sections in mbarn, not MeV^-2")
    add("--workers", type=int, default=None)
    add("--out", default=None, help="output path (stdout if omitted)")
    add("--format", choices=("csv", "json"), default=None)
    add("--config", default=None, help="flat key = value config file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coulomb-pt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phase-shifts", help="first/second-order phase shifts against arg Gamma")
    _add_shared(p)

    p = sub.add_parser("xsec-angle", help="angular distribution at fixed momentum")
    _add_shared(p)
    p.add_argument("--theta-min", type=float, default=None)
    p.add_argument("--theta-max", type=float, default=None)
    p.add_argument("--theta-step", type=float, default=None)

    p = sub.add_parser("xsec-momentum", help="momentum sweep at fixed angle")
    _add_shared(p)
    p.add_argument("--p-min", type=float, default=None)
    p.add_argument("--p-max", type=float, default=None)
    p.add_argument("--n-p", type=int, default=None)
    p.add_argument("--theta", type=float, default=None, help="angle in degrees")

    p = sub.add_parser("delta-profile", help="cross section against the time-shift parameter")
    _add_shared(p)
    p.add_argument("--theta", type=float, default=None, help="angle in degrees")
    p.add_argument("--delta-min", type=float, default=None)
    p.add_argument("--delta-max", type=float, default=None)
    p.add_argument("--delta-step", type=float, default=None)

    p = sub.add_parser("validate", help="run the internal check suite")
    _add_shared(p)
    p.add_argument("--tolerance", type=float, default=None, help="replace every check tolerance")
    return parser


def resolve_config(args) -> dict:
    """Merge built-in defaults < config file < command-line flags."""
    cfg = dict(COMMON_DEFAULTS)
    cfg.update(PV_KEYS)
    cfg.update(COMMAND_DEFAULTS[args.command])
    if args.config:
        try:
            from_file = cio.read_config(args.config)
        except (OSError, ValueError) as exc:
            raise ArgumentError(str(exc)) from exc
        unknown = set(from_file) - set(cfg) - {"p_mev"}
        if unknown:
            raise ArgumentError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(from_file)
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        cfg[key] = value
    if cfg["l_max"] is None and args.command != "phase-shifts":
        cfg["l_max"] = default_l_max(cfg["epsilon"])
    return cfg


def _pv_config(cfg) -> PVQuadConfig:
    return PVQuadConfig(**{k[3:]: cfg[k] for k in PV_KEYS})


def _xsec_config(cfg) -> XSecConfig:
    return XSecConfig(
        epsilon=cfg["epsilon"], delta_shift=cfg["delta"], l_max=cfg["l_max"], symmetrize=bool(cfg["symmetrize"])
    )


def _kinematics(cfg, p=None) -> Kinematics:
    return Kinematics(cfg["p_mev"] if p is None else p, cfg["mass_mev"], cfg["alpha"])


def _table(cfg, kin, l_max):
    l2 = min(cfg["l_max_delta2"], l_max)
    return build_table(
        kin, l_max, l2, _pv_config(cfg), cfg["extension"], order=cfg["order"], workers=cfg["workers"]
    )


def _unit(cfg):
    return MEV2_TO_MBARN if cfg["mbarn"] else 1.0


def _safe_ref(fn, theta, kin):
    try:
        return fn(theta, kin)
    except CrossSectionError:
        return math.nan


def cmd_phase_shifts(cfg):
    kin = _kinematics(cfg)
    table = _table(cfg, kin, cfg["l_max"])
    errs = table.delta2_errors()
    rows = [
        (e.l, e.delta1_bar, e.delta2, coulomb_sigma_exact(e.l, kin.eta) if kin.alpha else 0.0, errs[e.l])
        for e in table.entries
    ]
    return ["l", "delta1_bar", "delta2", "sigma_exact", "delta2_quad_error"], rows, None


def cmd_xsec_angle(cfg):
    kin = _kinematics(cfg)
    xcfg = _xsec_config(cfg)
    table = _table(cfg, kin, xcfg.l_max)
    n = int(round((cfg["theta_max"] - cfg["theta_min"]) / cfg["theta_step"])) + 1
    if n < 1:
        raise ArgumentError("empty angle grid")
    deg = cfg["theta_min"] + cfg["theta_step"] * np.arange(n)
    if deg.min() < 0 or deg.max() > 180:
        raise ArgumentError("angles must lie in [0, 180] degrees")
    theta = radians_mirrored(deg)
    model = np.atleast_1d(differential_cross_section(theta, table, xcfg))
    u = _unit(cfg)
    rows = [
        (float(d), m * u, _safe_ref(rutherford, t, kin) * u, _safe_ref(moller, t, kin) * u)
        for d, t, m in zip(deg, theta, model)
    ]
    return ["theta_deg", "model", "rutherford", "moller"], rows, None


def _momentum_point(args):
    cfg, p = args
    kin = _kinematics(cfg, p)
    xcfg = _xsec_config(cfg)
    table = _table(dict(cfg, workers=1), kin, xcfg.l_max)
    theta = float(radians_mirrored(cfg["theta"]))
    u = _unit(cfg)
    model = differential_cross_section(theta, table, xcfg)
    return (p, model * u, _safe_ref(rutherford, theta, kin) * u, _safe_ref(moller, theta, kin) * u)


def cmd_xsec_momentum(cfg):
    if not (0 < cfg["p_min"] < cfg["p_max"]) or cfg["n_p"] < 2:
        raise ArgumentError("need 0 < p_min < p_max and n_p >= 2")
    if not 0 <= cfg["theta"] <= 180:
        raise ArgumentError("theta must lie in [0, 180] degrees")
    momenta = np.geomspace(cfg["p_min"], cfg["p_max"], cfg["n_p"])
    jobs = [(cfg, float(p)) for p in momenta]
    if cfg["workers"] > 1:
        # map preserves input order regardless of completion order
        with ProcessPoolExecutor(cfg["workers"]) as pool:
            rows = list(pool.map(_momentum_point, jobs))
    else:
        rows = [_momentum_point(j) for j in jobs]
    return ["p_mev", "model", "rutherford", "moller"], rows, None


def cmd_delta_profile(cfg):
    kin = _kinematics(cfg)
    xcfg = _xsec_config(cfg)
    table = _table(cfg, kin, xcfg.l_max)
    n = int(round((cfg["delta_max"] - cfg["delta_min"]) / cfg["delta_step"])) + 1
    if n < 1:
        raise ArgumentError("empty delta grid")
    grid = cfg["delta_min"] + cfg["delta_step"] * np.arange(n)
    prof = delta_profile(float(radians_mirrored(cfg["theta"])), table, xcfg, grid)
    u = _unit(cfg)
    rows = [(float(d), float(x) * u) for d, x in zip(prof.delta, prof.xsec)]
    return ["delta", "xsec"], rows, [("delta_star", prof.delta_star)]


def cmd_validate(cfg, stream):
    results = run_checks(cfg["tolerance"])
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        stream.write(f"{status}  {r.name}: error={r.error:.3e} tol={r.tolerance:.1e}\n")
        if "numeric" in r.details:
            stream.write(f"      numeric={r.details['numeric']:.12e} analytic={r.details['analytic']:.12e}\n")
    ok = all(r.passed for r in results)
    stream.write(f"{sum(r.passed for r in results)}/{len(results)} checks passed\n")
    report = {
        "passed": ok,
        "checks": [
            {"name": r.name, "passed": r.passed, "error": r.error, "tolerance": r.tolerance, **{
                k: v for k, v in r.details.items() if isinstance(v, (int, float))
            }}
            for r in results
        ],
    }
    if cfg["out"]:
        with open(cfg["out"], "w") as fh:
            json.dump(report, fh, indent=2)
    elif cfg["format"] == "json":
        json.dump(report, stream, indent=2)
        stream.write("\n")
    return EXIT_OK if ok else EXIT_VALIDATION


COMMANDS = {
    "phase-shifts": cmd_phase_shifts,
    "xsec-angle": cmd_xsec_angle,
    "xsec-momentum": cmd_xsec_momentum,
    "delta-profile": cmd_delta_profile,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ARGS
    try:
        cfg = resolve_config(args)
        if args.command == "validate":
            return cmd_validate(cfg, stdout)
        if cfg.get("p_mev") is not None and cfg["p_mev"] <= 0:
            raise ArgumentError("--p-mev must be positive")
        columns, rows, footer = COMMANDS[args.command](cfg)
        payload = cio.csv_payload(columns, rows, footer)
        manifest = cio.RunManifest(args.command, {k: cfg[k] for k in sorted(cfg)})
        cio.write_output(payload, columns, rows, manifest, cfg["out"], cfg["format"], stdout)
    except (PVConvergenceError, ConvergenceError) as exc:
        stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except (ArgumentError, KinematicsError, CrossSectionError, PotentialError, PVError,
            SpecialFunctionError, ValueError, TypeError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_ARGS
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
