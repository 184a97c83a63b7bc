"""Command-line front end with reproducible file outputs.

Every subcommand computes one pipeline stage and writes CSV or JSON with
floats at 12 significant digits, plus a manifest JSON recording the exact
invocation and the tolerances in force.  All computations are deterministic;
two runs with identical flags produce byte-identical files.  Quantum momenta
are accepted and reported in units of pi.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import struct
import sys
from pathlib import Path

import numpy as np

from . import __version__, bethe, billiard, ed, wavefunction
from .dihedral import MomentumVector, build_dihedral_group, momentum_orbit, nonergodicity_classify

_ENV_OUTDIR = "MASSBOX_OUTPUT_DIR"

TOLERANCES = {
    "classify_tol": 1e-9,
    "classify_n_max": 64,
    "solver_residual_tol": 1e-10,
    "solver_step_tol": 1e-12,
    "orbit_dedup_tol": 1e-9,
    "probe_rank_tol": 1e-8,
    "probe_root_tol": 1e-8,
    "ed_cutoffs_default": [20, 30, 40],
}


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    if x is None:
        return ""
    return str(x)


def _out_path(args, default_name: str) -> Path:
    if args.out:
        return Path(args.out)
    base = Path(os.environ.get(_ENV_OUTDIR, "."))
    return base / default_name


def _write_manifest(path: Path, command: str, args_dict: dict, fmt: str) -> None:
    manifest = {
        "command": command,
        "arguments": {k: v for k, v in sorted(args_dict.items()) if k not in ("func",)},
        "format": fmt,
        "output": path.name,
        "package": "massbox",
        "version": __version__,
        "numpy_version": np.__version__,
        "tolerances": TOLERANCES,
    }
    mpath = path.with_name(path.name + ".manifest.json")
    mpath.write_text(json.dumps(manifest, sort_keys=True, indent=2, default=str) + "\n")


def emit_table(path: Path, header: list[str], rows: list[tuple], fmt: str) -> None:
    """Write a table as CSV (fixed column order) or JSON (stable keys)."""
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        path.write_text("\n".join(lines) + "\n")
    else:
        data = [
            {h: (v if not isinstance(v, float) else float(_fmt(v))) for h, v in zip(header, row)}
            for row in rows
        ]
        path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def emit_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=_fmt) + "\n")


def cmd_classify(args) -> int:
    cls = nonergodicity_classify(args.eta, n_max=args.n_max, tol=args.tol)
    payload = {
        "eta": args.eta,
        "classified": cls is not None,
        "l": cls.l if cls else None,
        "n": cls.n if cls else None,
        "group": cls.group_name if cls else None,
    }
    path = _out_path(args, "classify.json")
    emit_json(path, payload)
    _write_manifest(path, "classify", vars(args), "json")
    print(json.dumps(payload, sort_keys=True))
    return 0


def cmd_orbit(args) -> int:
    cls = nonergodicity_classify(args.eta)
    if cls is None:
        print(f"eta={args.eta} is not a nonergodicity point", file=sys.stderr)
        return 1
    group = build_dihedral_group(cls)
    k = MomentumVector(args.k1 * math.pi, args.k2 * math.pi)
    orbit = momentum_orbit(k, group)
    header = ["index", "k1", "k2", "k1_scaled", "k2_scaled"]
    rows = [
        (i, m.k1, m.k2, m.k1, math.sqrt(args.eta) * m.k2) for i, m in enumerate(orbit)
    ]
    path = _out_path(args, f"orbit.{args.format}")
    emit_table(path, header, rows, args.format)
    _write_manifest(path, "orbit", vars(args), args.format)
    print(f"{len(orbit)} distinct momenta -> {path}")
    return 0


def cmd_bounce(args) -> int:
    state = billiard.BilliardState(
        x1=args.x1, x2=args.x2, k1=args.k1, k2=args.k2, eta=args.eta
    )
    rows = billiard.trajectory(state, args.events)
    header = ["collision_index", "t", "k1", "k2"]
    path = _out_path(args, f"bounce.{args.format}")
    emit_table(path, header, rows, args.format)
    _write_manifest(path, "bounce", vars(args), args.format)
    momenta = [MomentumVector(r[2], r[3]) for r in rows]
    distinct = billiard.distinct_momentum_count(momenta, tol=1e-8)
    print(f"{args.events} events, {distinct} distinct momenta -> {path}")
    return 0


def _spectrum_rows(levels) -> list[tuple]:
    rows = []
    for lv in levels:
        n1, n2 = lv.quantum_numbers if lv.quantum_numbers else (None, None)
        rows.append(
            (
                lv.index,
                n1,
                n2,
                lv.root.k1 / math.pi,
                lv.root.k2 / math.pi,
                lv.energy,
                lv.parity,
                lv.root.branch,
            )
        )
    return rows


SPECTRUM_HEADER = ["index", "n1", "n2", "k1_over_pi", "k2_over_pi", "energy", "parity", "branch"]


def cmd_spectrum(args) -> int:
    gamma = math.inf if args.gamma == "inf" else float(args.gamma)
    levels = bethe.enumerate_spectrum(gamma, args.levels)
    path = _out_path(args, f"spectrum.{args.format}")
    emit_table(path, SPECTRUM_HEADER, _spectrum_rows(levels), args.format)
    _write_manifest(path, "spectrum", vars(args), args.format)
    print(f"{len(levels)} levels at gamma={gamma} -> {path}")
    return 0


def cmd_hardcore(args) -> int:
    levels = bethe.hardcore_levels(args.levels)
    path = _out_path(args, f"hardcore.{args.format}")
    emit_table(path, SPECTRUM_HEADER, _spectrum_rows(levels), args.format)
    _write_manifest(path, "hardcore", vars(args), args.format)
    print(f"{len(levels)} hard-core levels -> {path}")
    return 0


def cmd_density(args) -> int:
    levels = bethe.enumerate_spectrum(args.gamma, args.level + 1)
    lv = levels[args.level]
    if lv.interaction_independent:
        state = wavefunction.special_state(*lv.quantum_numbers)
        xs = np.linspace(-0.5, 0.5, args.res)
        x1g, x2g = np.meshgrid(xs, xs, indexing="ij")
        rho = np.abs(state.evaluate(x1g, x2g)) ** 2
        rho /= float(np.trapezoid(np.trapezoid(rho, xs), xs))
        grid = wavefunction.DensityGrid(args.res, xs, rho, 1.0)
    else:
        cset = wavefunction.assemble_coefficients(lv.root, args.gamma)
        grid = wavefunction.density_grid(cset, resolution=args.res)
    header = ["x1", "x2", "rho"]
    rows = [
        (grid.axis[i], grid.axis[j], grid.values[i, j])
        for i in range(args.res)
        for j in range(args.res)
    ]
    path = _out_path(args, f"density.{args.format}")
    emit_table(path, header, rows, args.format)
    if args.binary:
        blob = struct.pack("<id i".replace(" ", ""), args.res, args.gamma, args.level)
        Path(args.binary).write_bytes(blob + grid.values.astype("<f8").tobytes())
    _write_manifest(path, "density", vars(args), args.format)
    print(f"density level={args.level} gamma={args.gamma} res={args.res} -> {path}")
    return 0


def cmd_validate(args) -> int:
    cutoffs = tuple(int(c) for c in args.cutoffs.split(","))
    report = ed.validate_against_bethe(
        args.gamma, args.levels, cutoffs=cutoffs, rel_tol=args.rel_tol
    )
    path = _out_path(args, "validate.json")
    emit_json(path, report)
    _write_manifest(path, "validate", vars(args), "json")
    print(f"all_pass={report['all_pass']} -> {path}")
    return 0 if report["all_pass"] else 1


def cmd_probe(args) -> int:
    report = bethe.constraint_rank_probe(args.eta, gamma=args.gamma)
    payload = {
        "eta": report.eta,
        "l": report.l,
        "n": report.n,
        "group": report.group,
        "gamma": report.gamma,
        "n_conditions": report.n_conditions,
        "n_independent": report.n_independent,
        "solvable": report.solvable,
        "min_residual": report.min_residual,
        "argmin_k1": report.argmin[0],
        "argmin_k2": report.argmin[1],
        "message": report.message,
    }
    path = _out_path(args, "probe.json")
    emit_json(path, payload)
    _write_manifest(path, "probe", vars(args), "json")
    print(report.message)
    return 0


def read_spectrum_csv(path: Path) -> list[dict]:
    """Parse a spectrum CSV back into typed rows (round-trip helper)."""
    lines = Path(path).read_text().strip().splitlines()
    header = lines[0].split(",")
    out = []
    for line in lines[1:]:
        vals = line.split(",")
        row: dict = {}
        for h, v in zip(header, vals):
            if h in ("index", "parity"):
                row[h] = int(v)
            elif h in ("n1", "n2"):
                row[h] = int(v) if v else None
            elif h == "branch":
                row[h] = v
            else:
                row[h] = float(v)
        out.append(row)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="massbox",
        description="Two mass-imbalanced particles in a hard-wall box: "
        "classical closure, exact spectra, densities, and cross-validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, default_fmt="csv"):
        p.add_argument("--out", default=None, help="output file path")
        p.add_argument("--format", choices=("csv", "json"), default=default_fmt)

    p = sub.add_parser("classify", help="nonergodic mass-ratio classification")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--n-max", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("orbit", help="momentum orbit of a classified mass ratio")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--k1", type=float, required=True, help="initial k1 in units of pi")
    p.add_argument("--k2", type=float, required=True, help="initial k2 in units of pi")
    add_common(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("bounce", help="event-driven billiard run")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--events", type=int, required=True)
    p.add_argument("--x1", type=float, default=0.3)
    p.add_argument("--x2", type=float, default=-0.4)
    p.add_argument("--k1", type=float, default=1.0)
    p.add_argument("--k2", type=float, default=-1.2345)
    add_common(p)
    p.set_defaults(func=cmd_bounce)

    p = sub.add_parser("spectrum", help="lowest levels at one coupling")
    p.add_argument("--gamma", required=True, help="coupling, or 'inf'")
    p.add_argument("--levels", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("hardcore", help="levels at infinite repulsion")
    p.add_argument("--levels", type=int, required=True)
    add_common(p)
    p.set_defaults(func=cmd_hardcore)

    p = sub.add_parser("density", help="probability density of one level")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--res", type=int, default=128)
    p.add_argument("--binary", default=None, help="also dump raw float64 grid here")
    add_common(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("validate", help="solver vs diagonalization report")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--cutoffs", default="20,30,40")
    p.add_argument("--rel-tol", type=float, default=1e-3)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("probe", help="constraint-rank probe for one mass ratio")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_probe)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, ArithmeticError, OSError) as exc:
        print(f"{args.command} failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
