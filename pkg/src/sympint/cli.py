"""Command-line entry point: catalog, stepping, analysis, search, benchmarks.

Every run that writes files also writes a ``manifest.json`` beside them
recording the normalized inputs, seeds and library versions (no wall-clock
data), so identical invocations reproduce identical outputs byte for byte
except for the timing column of sweep CSVs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (DecompositionSetting, kappa_spectrum, spectrum_report,
                       verify_order)
from .benchmarks import (build_system, energy_error_sweep, geometric_grid,
                         perihelion_rate, precession_to_csv, sweep_to_csv,
                         trace_export)
from .coefficients import (CoefficientFileError, catalog,
                           load_coefficient_file, resolve_method,
                           save_coefficient_file, validate)
from .engine import PhaseState, integrate, make_plan
from .optimizer import SearchSpec, campaign
from .precision import DEFAULT_PRECISION_BITS, to_decimal

_DEFAULT_GRIDS = {
    "sho": "0.02:0.7:14",
    "henon-heiles": "0.02:0.7:14",
    "henon-heiles-y": "0.02:0.7:14",
    "sun-mercury": "1800:180000:12",
}


def _write_manifest(out_dir: Path, args: argparse.Namespace, outputs: list[str]) -> None:
    import gmpy2
    import scipy

    payload = {
        "command": args.subcommand,
        "arguments": {k: v for k, v in sorted(vars(args).items())
                      if k not in ("func",)},
        "outputs": sorted(outputs),
        "versions": {
            "sympint": __version__,
            "python": sys.version.split()[0],
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "gmpy2": gmpy2.version(),
        },
    }
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "manifest.json", "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def _parse_grid(text: str, system: str) -> list[float]:
    if text == "default":
        text = _DEFAULT_GRIDS[system]
    try:
        lo, hi, pts = text.split(":")
        return geometric_grid(float(lo), float(hi), int(pts))
    except ValueError as exc:
        print(f"bad --tau-grid {text!r}: expected lo:hi:points ({exc})",
              file=sys.stderr)
        raise SystemExit(2)


def _method_list(spec: str, entries) -> list[str]:
    if spec == "all":
        return sorted(entries)
    return [resolve_method(name.strip(), entries).name
            for name in spec.split(",") if name.strip()]


def cmd_list(args) -> int:
    entries = catalog(args.precision_bits)
    width = max(len(n) for n in entries)
    print(f"{'name':{width}s}  scheme  stages  order  provenance")
    for name in sorted(entries):
        cs = entries[name]
        order = cs.declared_sho_order if cs.declared_sho_order else "-"
        print(f"{name:{width}s}  {cs.scheme.value:6s}  {cs.stages:6d}  "
              f"{str(order):>5s}  {cs.provenance.value}")
    return 0


def cmd_validate(args) -> int:
    if args.file:
        try:
            coeffs = load_coefficient_file(args.file, args.precision_bits)
        except CoefficientFileError as exc:
            print(f"REJECTED: {exc}")
            return 1
    else:
        coeffs = resolve_method(args.method, catalog(args.precision_bits))
    report = validate(coeffs)
    sho_order, general = verify_order(coeffs)
    status = "PASS" if report.passed else "FAIL"
    print(f"{coeffs.name}: {status}  worst residual {to_decimal(report.worst(), 6)}  "
          f"harmonic order {sho_order}  general order {general}")
    return 0 if report.passed else 1


def cmd_step(args) -> int:
    system, state = build_system(args.system)
    coeffs = resolve_method(args.method, catalog(args.precision_bits))
    plan = make_plan(coeffs)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    dim = system.dim
    rows = ["step,t," + ",".join(f"q{i}" for i in range(dim)) + ","
            + ",".join(f"p{i}" for i in range(dim)) + ",H"]

    def watch(i, st):
        vals = [str(i + 1), repr(st.t)]
        vals += [repr(float(v)) for v in st.q] + [repr(float(v)) for v in st.p]
        vals.append(repr(system.energy(st.q, st.p)))
        rows.append(",".join(vals))

    integrate(system, state, args.tau, args.t_end, plan, observer=watch)
    path = out_dir / "trajectory.csv"
    path.write_text("\n".join(rows) + "\n")
    _write_manifest(out_dir, args, [path.name])
    print(f"wrote {path}")
    return 0


def cmd_bench(args) -> int:
    system, state = build_system(args.system)
    entries = catalog(args.precision_bits)
    methods = _method_list(args.methods, entries)
    grid = _parse_grid(args.tau_grid, args.system)
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        cells = [(args.system, m, g, args.t_end) for m in methods for g in grid]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(pool.map(_bench_cell, cells))
        records = sorted((r for chunk in chunks for r in chunk),
                         key=lambda r: (r.method, r.tau))
    else:
        records = energy_error_sweep(system, state, methods, grid, args.t_end)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"sweep_{args.system}.csv"
    path.write_text(sweep_to_csv(records))
    _write_manifest(out_dir, args, [path.name])
    print(f"wrote {path} ({len(records)} rows)")
    return 0


def _bench_cell(cell):
    system_name, method, g, t_end = cell
    system, state = build_system(system_name)
    return energy_error_sweep(system, state, [method], [g], t_end)


def cmd_spectrum(args) -> int:
    entries = catalog(args.precision_bits)
    coeffs = resolve_method(args.method, entries)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = ["method,mode,lambda,kappa"]
    if args.mode == "both":
        rows = spectrum_report(coeffs, lambda_max=args.lambda_max)
        for row in rows:
            lines.append(f"{row['method']},{row['mode']},{row['lam']},"
                         f"{to_decimal(row['kappa'])}")
    else:
        setting = DecompositionSetting(mode=args.mode, lambda_max=args.lambda_max,
                                       precision_bits=args.precision_bits)
        kap = kappa_spectrum(coeffs, setting)
        for lam in range(1, len(kap.kappa)):
            lines.append(f"{coeffs.name},{args.mode},{lam},{to_decimal(kap[lam])}")
    path = out_dir / "spectrum.csv"
    path.write_text("\n".join(lines) + "\n")
    _write_manifest(out_dir, args, [path.name])
    print(f"wrote {path}")
    return 0


def cmd_optimize(args) -> int:
    scheme = {"aba": "ABA", "bab": "BAB", "bab-prime": "BAB-prime"}[args.mode]
    spec = SearchSpec(scheme=scheme, stages=args.stages, lambda_H=args.lambda_h,
                      precision_bits=args.precision_bits, rng_seed=args.seed,
                      restarts=args.restarts)
    results = campaign(spec, args.starts)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = []
    lines = ["rank,kappa_max,coeff_abs_sum,kappa_next,file"]
    for i, res in enumerate(results, start=1):
        fname = f"solution_{i:03d}.coeffs"
        save_coefficient_file(res.coeffs, out_dir / fname)
        outputs.append(fname)
        nxt = (to_decimal(res.higher_order_kappas[0], 8)
               if res.higher_order_kappas else "0")
        lines.append(f"{i},{to_decimal(res.kappa_max, 8)},"
                     f"{to_decimal(res.coeff_abs_sum, 12)},{nxt},{fname}")
    path = out_dir / "ranking.csv"
    path.write_text("\n".join(lines) + "\n")
    outputs.append(path.name)
    _write_manifest(out_dir, args, outputs)
    print(f"{len(results)} distinct solution class(es); wrote {path}")
    return 0


def cmd_precession(args) -> int:
    system, state = build_system(args.system)
    if args.system != "sun-mercury":
        raise SystemExit("precession requires --system sun-mercury")
    entries = catalog(args.precision_bits)
    results = []
    for name in _method_list(args.methods, entries):
        results.append(perihelion_rate(system, state, name, args.tau, args.orbits))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "precession.csv"
    path.write_text(precession_to_csv(results))
    _write_manifest(out_dir, args, [path.name])
    print(f"wrote {path}")
    return 0


def cmd_trace(args) -> int:
    system, state = build_system(args.system)
    if args.state:
        vals = [float(v) for v in args.state.split(",")]
        dim = system.dim
        if len(vals) != 2 * dim:
            raise SystemExit(f"--state needs {2 * dim} comma-separated values")
        state = PhaseState.from_arrays(vals[:dim], vals[dim:])
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "trace.csv"
    trace_export(system, state, args.method, args.tau, args.steps, path)
    outputs = [path.name]
    if (Path(str(path) + ".grid.csv")).exists():
        outputs.append(path.name + ".grid.csv")
    _write_manifest(out_dir, args, outputs)
    print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sympint",
                                description=__doc__.splitlines()[0])
    p.add_argument("--precision-bits", type=int, default=DEFAULT_PRECISION_BITS)
    sub = p.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("list", help="print the coefficient catalog")
    sp.set_defaults(func=cmd_list)

    sp = sub.add_parser("validate", help="check sums and symmetry of a set")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--method")
    g.add_argument("--file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("step", help="integrate and dump the trajectory")
    sp.add_argument("--system", required=True)
    sp.add_argument("--method", required=True)
    sp.add_argument("--tau", type=float, required=True)
    sp.add_argument("--t-end", type=float, required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_step)

    sp = sub.add_parser("bench", help="energy-error sweep over a tau grid")
    sp.add_argument("--system", required=True)
    sp.add_argument("--methods", default="all")
    sp.add_argument("--tau-grid", default="default",
                    help="lo:hi:points in tau-per-stage units, or 'default'")
    sp.add_argument("--t-end", type=float, required=True)
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("spectrum", help="oscillator defect spectrum of a set")
    sp.add_argument("--method", required=True)
    sp.add_argument("--mode", choices=["aba", "bab", "bab-prime", "both"],
                    default="both")
    sp.add_argument("--lambda-max", type=int, default=None)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("optimize", help="search coefficient sets by simplex descent")
    sp.add_argument("--mode", choices=["aba", "bab", "bab-prime"], required=True)
    sp.add_argument("--stages", type=int, required=True)
    sp.add_argument("--lambda-h", type=int, required=True)
    sp.add_argument("--starts", type=int, default=64)
    sp.add_argument("--restarts", type=int, default=6)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("precession", help="perihelion rotation rate regression")
    sp.add_argument("--system", default="sun-mercury")
    sp.add_argument("--methods", default="Ruth")
    sp.add_argument("--tau", type=float, required=True)
    sp.add_argument("--orbits", type=int, default=50)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_precession)

    sp = sub.add_parser("trace", help="substep trace with energy grid")
    sp.add_argument("--system", required=True)
    sp.add_argument("--method", required=True)
    sp.add_argument("--tau", type=float, required=True)
    sp.add_argument("--steps", type=int, default=2)
    sp.add_argument("--state", default=None,
                    help="comma-separated q then p components")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_trace)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KeyError as exc:
        print(str(exc.args[0]) if exc.args else str(exc), file=sys.stderr)
        return 2
    except (CoefficientFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
