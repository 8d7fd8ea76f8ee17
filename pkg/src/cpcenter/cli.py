"""cpcenter command line interface.

Subcommands: curve (full trade-off curve plus artifacts), solve (one
p value), emit (LP model files), bench (algorithm comparison), verify
(re-audit a saved curve against its instance). Exit codes: 0 ok,
1 verification/assertion failure, 2 input error, 3 configuration error.
"""

from __future__ import annotations

import argparse
import os
import shlex
import subprocess
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import cpc, dataset_io, mip_emit
from .errors import (
    ArgumentOutOfRange,
    BudgetExceeded,
    CPCenterError,
    DimensionMismatch,
    EmptyInstance,
    IncompleteCurve,
    InstanceTooSmall,
    MalformedRow,
    ModeMismatch,
    NonFiniteCoordinate,
    NonPositiveUB,
    POutOfRange,
    SchemaMismatch,
    UnsupportedEdgeWeightType,
    UnsupportedP,
)
from .geometry import INTEGER, REAL, integer_ceiling_matrix, squared_distance_matrix, unique_distance_ladder

_INPUT_ERRORS = (
    EmptyInstance,
    NonFiniteCoordinate,
    UnsupportedEdgeWeightType,
    DimensionMismatch,
    MalformedRow,
    SchemaMismatch,
    FileNotFoundError,
    IsADirectoryError,
    PermissionError,
)
_CONFIG_ERRORS = (
    ArgumentOutOfRange,
    BudgetExceeded,
    InstanceTooSmall,
    ModeMismatch,
    NonPositiveUB,
    POutOfRange,
    UnsupportedP,
    IncompleteCurve,
)


@dataclass
class RunConfig:
    input: str
    fmt: str = "auto"
    mode: str = REAL
    algorithm: str = "lscpe"
    enum_max: int = 3
    csv: str | None = None
    json: str | None = None
    svg: str | None = None
    threads: int | None = None
    geo_override: bool = False


def _default_threads() -> int | None:
    env = os.environ.get("CPCENTER_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return None


def _add_common(sub):
    sub.add_argument("input", help="instance file (TSPLIB or xy table)")
    sub.add_argument("--format", choices=["auto", "tsplib", "xy"], default="auto", dest="fmt")
    sub.add_argument("--mode", choices=[REAL, INTEGER], default=REAL)
    sub.add_argument("--threads", type=int, default=None)
    sub.add_argument("--geo-override", action="store_true",
                     help="read non-EUC_2D TSPLIB coordinates as planar")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cpcenter",
                                 description="exact complete vertex p-center solver")
    sp = ap.add_subparsers(dest="command", required=True)

    c = sp.add_parser("curve", help="solve z_p for every p and write artifacts")
    _add_common(c)
    c.add_argument("--algorithm", choices=["lscp", "lscpe", "trivial-only"], default="lscpe")
    c.add_argument("--enum-max", type=int, default=3)
    c.add_argument("--csv")
    c.add_argument("--json")
    c.add_argument("--svg")

    s = sp.add_parser("solve", help="solve a single p value")
    _add_common(s)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--enum-max", type=int, default=3)

    e = sp.add_parser("emit", help="write an LP model file")
    _add_common(e)
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--variant", choices=["mip", "mipub"], default="mip")
    e.add_argument("--ub", type=float, default=None,
                   help="trim bound for mipub; defaults to a solved z_(p-1)")
    e.add_argument("--out", default=None, help="output path (default <stem>_p<p>_<variant>.lp)")
    e.add_argument("--run-solver", default=None, metavar="CMD",
                   help="command template run on the model file; {model} expands "
                        "to the path; must print objective=<value>")

    b = sp.add_parser("bench", help="compare lscp and lscpe on instances")
    b.add_argument("inputs", nargs="+", help="instance files")
    b.add_argument("--format", choices=["auto", "tsplib", "xy"], default="auto", dest="fmt")
    b.add_argument("--mode", choices=[REAL, INTEGER, "both"], default=REAL)
    b.add_argument("--enum-max", type=int, default=3)
    b.add_argument("--threads", type=int, default=None)
    b.add_argument("--geo-override", action="store_true")

    v = sp.add_parser("verify", help="re-check a saved curve JSON against its instance")
    _add_common(v)
    v.add_argument("--json", required=True, help="curve JSON written by `curve`")

    return ap


def _build_matrix(cfg: RunConfig):
    ps = dataset_io.load_instance(cfg.input, cfg.fmt, geo_override=cfg.geo_override)
    dm = squared_distance_matrix(ps)
    if cfg.mode == INTEGER:
        dm = integer_ceiling_matrix(dm)
    return dm


def _print_report(report):
    for c in report.checks:
        status = "ok" if c.ok else "FAIL"
        line = f"  verify {c.name:<24} {status}"
        if c.detail:
            line += f"  ({c.detail})"
        print(line)


def cmd_curve(cfg: RunConfig) -> int:
    if cfg.algorithm == "lscpe" and not 2 <= cfg.enum_max <= 4:
        raise ArgumentOutOfRange(f"--enum-max must be 2..4, got {cfg.enum_max}")
    t0 = time.perf_counter()
    dm = _build_matrix(cfg)
    ladder = unique_distance_ladder(dm)

    if cfg.algorithm == "trivial-only" and dm.m > 3:
        if cfg.csv or cfg.json or cfg.svg:
            raise ArgumentOutOfRange(
                "trivial-only cannot produce a complete curve for m > 3; "
                "drop the output flags or pick lscp/lscpe"
            )
        z1, site = cpc.solve_p1(dm)
        zm, zm1 = cpc.trivial_tail(dm)
        print(f"instance {dm.name}  m={dm.m}  K={ladder.K}  mode={cfg.mode}")
        print(f"  z_1 = {z1}  (site {site})")
        print(f"  z_{dm.m - 1} = {zm1}")
        print(f"  z_{dm.m} = {zm}")
        return 0

    if cfg.algorithm == "lscp":
        curve = cpc.solve_cpc_lscp(dm)
    else:
        enum_max = min(cfg.enum_max, dm.m) if cfg.algorithm == "lscpe" else cfg.enum_max
        curve = cpc.solve_cpc_lscp_e(dm, enum_max, threads=cfg.threads)
    wall = time.perf_counter() - t0

    report = cpc.verify_curve(curve, dm)
    print(f"instance {curve.instance}  m={curve.m}  K={ladder.K}  mode={curve.mode}")
    print(f"  algorithm {cfg.algorithm}  lscp-iterations {curve.iterations}  wall {wall:.2f}s")
    _print_report(report)
    if not report.ok:
        print("verification failed; no artifacts written", file=sys.stderr)
        return 1

    if cfg.csv:
        Path(cfg.csv).write_text(dataset_io.write_curve_csv(curve))
        print(f"  wrote {cfg.csv}")
    if cfg.json:
        Path(cfg.json).write_text(dataset_io.write_curve_json(curve))
        print(f"  wrote {cfg.json}")
    if cfg.svg:
        Path(cfg.svg).write_text(dataset_io.render_curve_svg(curve))
        print(f"  wrote {cfg.svg}")
    return 0


def cmd_solve_p(cfg: RunConfig, p: int) -> int:
    dm = _build_matrix(cfg)
    rec = cpc.solve_single_p(dm, p, enum_max=cfg.enum_max, threads=cfg.threads)
    z = f"{rec.z:.6f}" if cfg.mode == REAL else str(rec.z)
    fac = ";".join(str(j) for j in rec.facilities)
    print(f"instance {dm.name}  m={dm.m}  p={p}")
    print(f"  z_{p} = {z}  source={rec.source}")
    print(f"  facilities: {fac}")
    return 0


def cmd_emit(cfg: RunConfig, p: int, variant: str, ub, out_path, run_solver) -> int:
    dm = _build_matrix(cfg)
    if variant == "mip":
        text = mip_emit.emit_cpc_mip(dm, p)
        pairs = dm.m * dm.m
    else:
        if ub is None:
            if p >= 2:
                ub = cpc.solve_single_p(dm, p - 1, enum_max=cfg.enum_max, threads=cfg.threads).z
            else:
                ub = dm.radius_from_key(unique_distance_ladder(dm).values[-1].item())
        text = mip_emit.emit_cpc_mipub(dm, p, ub)
        pairs = mip_emit.pair_count(dm, ub)
    size = mip_emit.model_size(dm.m, dm.m, None if variant == "mip" else pairs)

    path = Path(out_path) if out_path else Path(f"{Path(cfg.input).stem}_p{p}_{variant}.lp")
    path.write_text(text)
    print(f"wrote {path}: {size.binaries} binaries, {size.continuous} continuous, "
          f"{size.constraints} constraints")

    if run_solver:
        cmdline = run_solver.replace("{model}", str(path))
        if "{model}" not in run_solver:
            cmdline = f"{cmdline} {path}"
        proc = subprocess.run(shlex.split(cmdline), capture_output=True, text=True)
        objective = None
        for line in proc.stdout.splitlines():
            if line.strip().startswith("objective="):
                objective = line.strip().split("=", 1)[1]
        if proc.returncode != 0 or objective is None:
            print(f"external solver failed (exit {proc.returncode})", file=sys.stderr)
            return 1
        print(f"external objective = {objective}")
    return 0


def cmd_bench(inputs, fmt, mode, enum_max, threads, geo_override) -> int:
    modes = [REAL, INTEGER] if mode == "both" else [mode]
    rows = []
    violations = []
    for path in inputs:
        for md in modes:
            cfg = RunConfig(input=path, fmt=fmt, mode=md, threads=threads,
                            geo_override=geo_override)
            dm = _build_matrix(cfg)
            ladder = unique_distance_ladder(dm)
            t0 = time.perf_counter()
            full = cpc.solve_cpc_lscp(dm)
            t_full = time.perf_counter() - t0
            t0 = time.perf_counter()
            hybrid = cpc.solve_cpc_lscp_e(dm, enum_max, threads=threads)
            t_hyb = time.perf_counter() - t0
            for curve in (full, hybrid):
                rep = cpc.verify_curve(curve, dm)
                if not rep.ok:
                    violations.append(f"{dm.name}/{md}: verification failed")
            if [r.z for r in full.records] != [r.z for r in hybrid.records]:
                violations.append(f"{dm.name}/{md}: lscp and lscpe curves differ")
            if hybrid.iterations >= full.iterations:
                violations.append(
                    f"{dm.name}/{md}: lscpe used {hybrid.iterations} iterations, "
                    f"lscp used {full.iterations}"
                )
            cut = 100.0 * (1.0 - hybrid.iterations / full.iterations) if full.iterations else 0.0
            rows.append((dm.name, dm.m, ladder.K, md, full.iterations, t_full,
                         hybrid.iterations, t_hyb, cut))

    print(f"{'instance':<12} {'m':>5} {'K':>6} {'mode':<8} "
          f"{'lscp_it':>8} {'lscp_s':>8} {'lscpe_it':>9} {'lscpe_s':>8} {'it_cut%':>8}")
    for name, m, K, md, fi, ft, hi, ht, cut in rows:
        print(f"{name:<12} {m:>5} {K:>6} {md:<8} {fi:>8} {ft:>8.2f} {hi:>9} {ht:>8.2f} {cut:>8.1f}")
    for v in violations:
        print(f"VIOLATION: {v}", file=sys.stderr)
    return 1 if violations else 0


def cmd_verify(cfg: RunConfig, json_path: str) -> int:
    dm = _build_matrix(cfg)
    curve = dataset_io.read_curve_json(Path(json_path).read_text())
    if curve.m != dm.m:
        raise SchemaMismatch(f"curve has m={curve.m}, instance has m={dm.m}")
    if curve.mode != dm.mode:
        raise SchemaMismatch(f"curve mode {curve.mode!r} does not match --mode {dm.mode!r}")
    report = cpc.verify_curve(curve, dm)
    print(f"instance {dm.name}  m={dm.m}  mode={dm.mode}")
    _print_report(report)
    return 0 if report.ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 3

    threads = args.threads if getattr(args, "threads", None) else _default_threads()
    try:
        if args.command == "curve":
            cfg = RunConfig(input=args.input, fmt=args.fmt, mode=args.mode,
                            algorithm=args.algorithm, enum_max=args.enum_max,
                            csv=args.csv, json=args.json, svg=args.svg,
                            threads=threads, geo_override=args.geo_override)
            return cmd_curve(cfg)
        if args.command == "solve":
            cfg = RunConfig(input=args.input, fmt=args.fmt, mode=args.mode,
                            enum_max=args.enum_max, threads=threads,
                            geo_override=args.geo_override)
            return cmd_solve_p(cfg, args.p)
        if args.command == "emit":
            cfg = RunConfig(input=args.input, fmt=args.fmt, mode=args.mode,
                            threads=threads, geo_override=args.geo_override)
            return cmd_emit(cfg, args.p, args.variant, args.ub, args.out, args.run_solver)
        if args.command == "bench":
            return cmd_bench(args.inputs, args.fmt, args.mode, args.enum_max,
                             threads, args.geo_override)
        if args.command == "verify":
            cfg = RunConfig(input=args.input, fmt=args.fmt, mode=args.mode,
                            threads=threads, geo_override=args.geo_override)
            return cmd_verify(cfg, args.json)
        return 3
    except _INPUT_ERRORS as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except _CONFIG_ERRORS as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 3
    except CPCenterError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
