"""``hexmds`` command line.

Exit codes: 0 success, 1 negative ``verify`` verdict, 2 usage error,
3 validation or guard failure, 4 I/O or parse error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from io import StringIO
from pathlib import Path

from hexmds import io as hio
from hexmds import solvers
from hexmds import tiling as tl
from hexmds.cover import DEFAULT_EXACT_LIMIT, InstanceTooLarge, exact_mds, verify
from hexmds.geom import HexGrid
from hexmds.svg import render_svg

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_INVALID, EXIT_IO = 0, 1, 2, 3, 4
ALGOS = ("cell-baseline", "four", "three", "five-half", "ptas", "exact")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _err(msg: str):
    print(msg, file=sys.stderr)


def _grid(text: str | None) -> HexGrid:
    if not text:
        return HexGrid()
    try:
        dx, dy = (float(v) for v in text.split(","))
    except ValueError:
        raise CliError(f"--grid-offset expects 'dx,dy', got {text!r}", EXIT_USAGE) from None
    return HexGrid(dx, dy)


def _load(path) -> hio.Instance:
    try:
        return hio.load_instance(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from None
    except hio.InstanceFormatError as exc:
        raise CliError(str(exc), EXIT_IO) from None


def _descriptor(name: str, monochrome: bool = False) -> tl.TilingDescriptor:
    builtin = {"septa": tl.default_septa, "supercell": tl.default_supercell, "dupercell": tl.default_dupercell}
    if name in builtin:
        t = builtin[name]()
    else:
        try:
            t = tl.TilingDescriptor.loads(Path(name).read_text(encoding="utf-8"))
        except OSError as exc:
            raise CliError(f"cannot read {name}: {exc.strerror}", EXIT_IO) from None
        except (tl.TilingError, json.JSONDecodeError) as exc:
            raise CliError(f"invalid descriptor {name}: {exc}", EXIT_INVALID) from None
    if monochrome:
        t = t.with_colors(1, ((0,),))
    return t


def _emit(text: str, out: str | None):
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise CliError(f"cannot write {out}: {exc.strerror}", EXIT_IO) from None
    else:
        sys.stdout.write(text)


def run_algorithm(algo: str, points, k=None, grid: HexGrid = HexGrid(), threads: int = 1, faithful: bool = False,
                  descriptor=None, window_limit=solvers.DEFAULT_WINDOW_LIMIT, exact_limit=DEFAULT_EXACT_LIMIT,
                  crossing_mode: str = "joint"):
    if algo == "cell-baseline":
        return solvers.cell_baseline(points, grid)
    if algo == "four":
        return solvers.four_factor(points, grid, descriptor, faithful=faithful, threads=threads)
    if algo == "three":
        return solvers.three_factor(points, grid, descriptor, threads=threads)
    if algo == "five-half":
        return solvers.five_half(points, grid, threads=threads, crossing_mode=crossing_mode)
    if algo == "ptas":
        if k is None:
            raise CliError("--k is required for ptas", EXIT_USAGE)
        return solvers.ptas(points, k, grid, limit=window_limit, threads=threads)
    if algo == "exact":
        return exact_mds(points, limit=exact_limit, grid=grid)
    raise CliError(f"unknown algorithm {algo!r}", EXIT_USAGE)


# -- subcommands ----------------------------------------------------------------------


def cmd_generate(args) -> int:
    if args.kind == "uniform":
        inst = hio.gen_uniform(args.n, args.width, args.height, args.seed)
    else:
        inst = hio.gen_clustered(args.n, args.clusters, args.spread, args.width, args.height, args.seed)
    fmt = args.format or ("json" if args.out and args.out.endswith(".json") else "csv")
    _emit(hio.dumps_instance(inst, fmt), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _load(args.instance)
    grid = _grid(args.grid_offset)
    descriptor = _descriptor(args.tiling) if args.tiling else None
    if descriptor is not None and args.algo not in ("four", "three"):
        raise CliError("--tiling applies to four and three only", EXIT_USAGE)
    start = time.monotonic()
    try:
        sol = run_algorithm(args.algo, inst.points, args.k, grid, args.threads, args.faithful, descriptor,
                            args.window_limit, args.exact_limit, args.crossing_mode)
    except InstanceTooLarge as exc:
        raise CliError(str(exc), EXIT_INVALID) from None
    millis = (time.monotonic() - start) * 1000.0
    valid = verify(inst.points, sol.chosen) is None
    params = {"k": args.k, "grid_offset": [grid.dx, grid.dy], "faithful": args.faithful, "threads": args.threads,
              "guarantee": sol.guarantee, **{k: v for k, v in sol.params.items() if k not in ("grid_offset",)}}
    report = {
        "algo": args.algo,
        "params": params,
        "instance": {"name": inst.name, "n": len(inst), "provenance": inst.provenance, "path": str(args.instance)},
        "size": sol.size,
        "chosen": list(sol.chosen),
        "valid": valid,
    }
    if args.oracle:
        try:
            opt = exact_mds(inst.points, limit=args.exact_limit, grid=grid).size
        except InstanceTooLarge as exc:
            _err(f"oracle skipped: {exc}")
        else:
            report["oracle_size"] = opt
            report["ratio"] = sol.size / opt if opt else 1.0
    report["millis"] = round(millis, 3)
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    violations = sol.details.get("tiling_violations")
    if violations:
        _err("tiling validation failed: " + ", ".join(violations))
        return EXIT_INVALID
    if not valid:
        _err("solution does not dominate the instance")
        return EXIT_INVALID
    _err(f"{args.algo}: size {sol.size} on {len(inst)} points, valid")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load(args.instance)
    try:
        chosen = hio.load_solution(args.solution, inst)
    except hio.NotASubset as exc:
        print(str(exc))
        return EXIT_REJECT
    except OSError as exc:
        raise CliError(f"cannot read {args.solution}: {exc.strerror}", EXIT_IO) from None
    except hio.InstanceFormatError as exc:
        raise CliError(str(exc), EXIT_IO) from None
    bad = verify(inst.points, chosen)
    if bad is not None:
        x, y = inst.points[bad]
        print(f"not dominating: point {bad} ({x:.17g}, {y:.17g}) is farther than 1 from every chosen point")
        return EXIT_REJECT
    print(f"valid: {len(set(chosen))} chosen points dominate all {len(inst)} points")
    return EXIT_OK


def cmd_tilings_validate(args) -> int:
    t = _descriptor(args.tiling, args.monochrome)
    try:
        report = tl.validate_tiling(t, patch=args.patch, samples=args.samples, seed=args.seed)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
    for c in report.checks:
        _err(f"{'PASS' if c.passed else 'FAIL'} {c.name}: measured {c.measured:.12g} {c.comparison} {c.required:g}")
    return EXIT_OK if report.passed else EXIT_INVALID


def _suite_instances(suite) -> list:
    items = suite.get("instances", []) if isinstance(suite, dict) else suite
    out = []
    for item in items:
        if "path" in item:
            out.append(_load(item["path"]))
        elif item.get("generator", "uniform") == "uniform":
            out.append(hio.gen_uniform(int(item["n"]), float(item["width"]), float(item["height"]), int(item["seed"])))
        elif item["generator"] == "clustered":
            out.append(hio.gen_clustered(int(item["n"]), int(item["clusters"]), float(item["spread"]),
                                         float(item["width"]), float(item["height"]), int(item["seed"])))
        else:
            raise CliError(f"unknown generator {item['generator']!r}", EXIT_USAGE)
    return out


BENCH_FIELDS = ("instance", "n", "algo", "size", "oracle_size", "ratio", "valid", "status", "millis")


def cmd_bench(args) -> int:
    try:
        suite = json.loads(Path(args.suite).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CliError(f"cannot read {args.suite}: {exc.strerror}", EXIT_IO) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{args.suite}: invalid JSON: {exc.msg}", EXIT_IO) from None
    try:
        instances = _suite_instances(suite)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"{args.suite}: malformed suite entry: {exc}", EXIT_IO) from None
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    rows = []
    failed = False
    for inst in instances:
        opt = None
        if len(inst) <= args.max_oracle_n:
            opt = exact_mds(inst.points, limit=None).size
        for algo in algos:
            row = {"instance": inst.name, "n": len(inst), "algo": algo, "size": "", "oracle_size": "" if opt is None else opt,
                   "ratio": "", "valid": "", "status": "ok", "millis": ""}
            start = time.monotonic()
            try:
                sol = run_algorithm(algo, inst.points, args.k if algo == "ptas" else None, threads=args.threads)
            except (CliError, InstanceTooLarge, ValueError) as exc:
                row["status"] = f"failed: {exc}"
                failed = True
            else:
                row["millis"] = f"{(time.monotonic() - start) * 1000.0:.3f}"
                row["size"] = sol.size
                row["valid"] = verify(inst.points, sol.chosen) is None
                failed |= not row["valid"]
                if opt is not None:
                    row["ratio"] = f"{(sol.size / opt if opt else 1.0):.6g}"
            rows.append(row)
    buf = StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _emit(buf.getvalue(), args.out)
    return EXIT_INVALID if failed else EXIT_OK


def cmd_render(args) -> int:
    inst = _load(args.instance)
    chosen: list[int] = []
    if args.solution:
        try:
            chosen = hio.load_solution(args.solution, inst)
        except OSError as exc:
            raise CliError(f"cannot read {args.solution}: {exc.strerror}", EXIT_IO) from None
        except (hio.InstanceFormatError, hio.NotASubset) as exc:
            raise CliError(str(exc), EXIT_IO) from None
    t = None if args.tiling == "none" else _descriptor(args.tiling)
    bbox = inst.bbox if len(inst) else None
    _emit(render_svg(inst.points, chosen, t, _grid(args.grid_offset), bbox, inst.name), args.out)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hexmds", description="Dominating sets of unit disks on hexagonal partitions.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a seeded random instance")
    g.add_argument("--kind", choices=("uniform", "clustered"), default="uniform")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--width", type=float, default=10.0)
    g.add_argument("--height", type=float, default=10.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--clusters", type=int, default=3)
    g.add_argument("--spread", type=float, default=0.5)
    g.add_argument("--format", choices=("csv", "json"))
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="run one algorithm and print a JSON run report")
    s.add_argument("instance")
    s.add_argument("--algo", choices=ALGOS, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--grid-offset", metavar="DX,DY")
    s.add_argument("--faithful", action="store_true", help="literal descending per-tile loop (four only)")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--tiling", help="tiling descriptor file for four/three")
    s.add_argument("--crossing-mode", choices=solvers.CROSSING_MODES, default="joint")
    s.add_argument("--window-limit", type=int, default=solvers.DEFAULT_WINDOW_LIMIT)
    s.add_argument("--exact-limit", type=int, default=DEFAULT_EXACT_LIMIT)
    s.add_argument("--oracle", action="store_true", help="also compute the exact optimum and the ratio")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check that a solution is a dominating subset")
    v.add_argument("instance")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tilings", help="tiling descriptors")
    tsub = t.add_subparsers(dest="tilings_command", required=True)
    tv = tsub.add_parser("validate", help="measure the separations a descriptor must satisfy")
    tv.add_argument("--tiling", default="septa", help="septa, supercell, dupercell or a descriptor file")
    tv.add_argument("--patch", type=int, default=5)
    tv.add_argument("--samples", type=int, default=tl.DEFAULT_SAMPLES)
    tv.add_argument("--seed", type=int, default=0)
    tv.add_argument("--monochrome", action="store_true", help="force a single colour class")
    tv.add_argument("--out")
    tv.set_defaults(func=cmd_tilings_validate)

    b = sub.add_parser("bench", help="run algorithms over a suite and write CSV")
    b.add_argument("--suite", required=True)
    b.add_argument("--algos", default="four,three,five-half")
    b.add_argument("--k", type=int, default=2)
    b.add_argument("--max-oracle-n", type=int, default=14)
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("render", help="draw an instance, tiles and a solution as SVG")
    r.add_argument("instance")
    r.add_argument("--solution")
    r.add_argument("--tiling", default="septa", help="septa, supercell, dupercell, none or a descriptor file")
    r.add_argument("--grid-offset", metavar="DX,DY")
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", 1) < 1:
        _err("--threads must be at least 1")
        return EXIT_USAGE
    try:
        return args.func(args)
    except CliError as exc:
        _err(f"hexmds: {exc}")
        return exc.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
