"""Command line front end: ``fpfcolor {certify,color,verify,oracle,demo}``.

Exit codes: 0 ok, 1 input, 2 certification, 3 hypothesis or invalid coloring,
4 overflow, 5 internal.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import os
import sys
from dataclasses import dataclass

from . import __version__
from .coloring import compact_color
from .demos import DEMOS, demo_spec
from .errors import FpfColorError, InputError, LoopDetected, NotCertifiablyFpf, VerificationFailed
from .euclidean import euclidean_color
from .io import coloring_from_json, coloring_to_json, dumps, read_json, write_atomic
from .maps import certify_fpf, load_map
from .reduce import reduce_colors
from .verify import (build_conflict_graph, oracle_min_colors, partition_coloring,
                     verify_coloring)


@dataclass
class RunConfig:
    command: str
    input: str = None
    output: str = None
    method: str = "compact"
    seed: int = 0
    annuli: int = 4
    depth: int = 0
    oracle_limit: int = 40
    reduce_budget: int = 0
    max_subdiv: int = 0
    coloring: str = None
    csv: str = None
    adjacency: str = None
    stage_checks: bool = True
    threads: int = 1

    def validate(self):
        for name in ("annuli", "oracle_limit", "threads"):
            if getattr(self, name) < 1:
                raise InputError(f"--{name.replace('_', '-')} must be positive")
        for name in ("depth", "reduce_budget", "max_subdiv"):
            if getattr(self, name) < 0:
                raise InputError(f"--{name.replace('_', '-')} must be non-negative")
        return self


def _threads():
    raw = os.environ.get("FPFCOLOR_THREADS", "1")
    try:
        t = int(raw)
    except ValueError:
        raise InputError(f"FPFCOLOR_THREADS must be an integer, got {raw!r}") from None
    if t < 1:
        raise InputError("FPFCOLOR_THREADS must be positive")
    return t


def _emit(cfg, text):
    if cfg.output:
        write_atomic(cfg.output, text)
    else:
        sys.stdout.write(text)


def _load(cfg):
    if not cfg.input:
        raise InputError("--input is required")
    return load_map(read_json(cfg.input))


def cmd_certify(cfg: RunConfig) -> int:
    m = _load(cfg)
    cert = certify_fpf(m, cfg.max_subdiv)
    _emit(cfg, dumps({"status": "certified"} | cert.to_json()))
    return 0


def cmd_color(cfg: RunConfig) -> int:
    m = _load(cfg)
    cert = certify_fpf(m, cfg.max_subdiv)
    if cfg.method == "compact":
        col = compact_color(m, cert, seed=cfg.seed, check=cfg.stage_checks)
    elif cfg.method == "euclidean":
        col = euclidean_color(m, cert, cfg.annuli, seed=cfg.seed, check=cfg.stage_checks)
    else:
        raise InputError(f"unknown method {cfg.method!r}")
    built = col.color_count
    if cfg.reduce_budget > 0:
        col = reduce_colors(col, cert.map, cfg.reduce_budget)
    report = verify_coloring(col, cert.map)
    if not report.valid:
        raise VerificationFailed("constructed coloring failed verification; nothing written")
    doc = coloring_to_json(col, report.margin)
    doc["stats"]["constructed_count"] = built
    doc["certificate"] = {"delta": str(cert.delta), "depth": cert.depth}
    doc["verification"] = report.to_json()
    _emit(cfg, dumps(doc))
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    m = _load(cfg)
    if not cfg.coloring:
        raise InputError("--coloring is required")
    col = coloring_from_json(read_json(cfg.coloring))
    report = verify_coloring(col, m)
    _emit(cfg, dumps(report.to_json()))
    return 0 if report.valid else 3


def cmd_oracle(cfg: RunConfig) -> int:
    m = _load(cfg)
    cert = certify_fpf(m, cfg.max_subdiv)
    rows = []
    for d in range(cfg.depth + 1):
        g = build_conflict_graph(cert.map, d, allow_loops=True)
        if g.loops:
            rows.append({"depth": d, "nodes": len(g), "edges": len(g.edges), "loops": len(g.loops),
                         "count": "", "lower_bound": "", "exact": ""})
            continue
        res = oracle_min_colors(g, cfg.oracle_limit)
        rows.append({"depth": d, "nodes": len(g), "edges": len(g.edges), "loops": 0,
                     "count": res.count, "lower_bound": res.lower_bound, "exact": res.exact})
    if cfg.csv:
        buf = _io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        write_atomic(cfg.csv, buf.getvalue())
    if g.loops:
        raise LoopDetected(f"{len(g.loops)} sub-simplices meet their own image at depth "
                           f"{cfg.depth}; try --depth {cfg.depth + 1}", loops=g.loops, depth=cfg.depth)
    if cfg.adjacency:
        write_atomic(cfg.adjacency, g.adjacency_text())
    part = partition_coloring(g, res.partition)
    report = verify_coloring(part, g.map, margin=False)
    doc = {"depth": cfg.depth, "nodes": len(g), "edges": len(g.edges), "count": res.count,
           "exact": res.exact, "lower_bound": res.lower_bound, "partition": res.partition,
           "partition_valid": report.valid, "sweep": rows}
    _emit(cfg, dumps(doc))
    return 0 if report.valid else 5


def cmd_demo(cfg: RunConfig, name, params) -> int:
    _emit(cfg, dumps(demo_spec(name, **params)))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="fpfcolor", description="Exact colorings of fixed-point free PL maps.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_input=True):
        if need_input:
            sp.add_argument("--input", help="map-spec JSON")
        sp.add_argument("--output", help="output path (default stdout)")
        sp.add_argument("--max-subdiv", type=int, default=0, help="grid halvings allowed for certification")

    sp = sub.add_parser("certify", help="certify fixed-point freeness")
    common(sp)
    sp = sub.add_parser("color", help="build, optionally reduce, and verify a coloring")
    common(sp)
    sp.add_argument("--method", choices=("compact", "euclidean"), default="compact")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--annuli", type=int, default=4)
    sp.add_argument("--reduce-budget", type=int, default=0)
    sp.add_argument("--skip-stage-checks", action="store_true",
                    help="skip per-stage invariant checks (the final verification always runs)")
    sp = sub.add_parser("verify", help="verify a coloring against a map")
    common(sp)
    sp.add_argument("--coloring", help="coloring JSON")
    sp = sub.add_parser("oracle", help="cell-granular minimum via the conflict graph")
    common(sp)
    sp.add_argument("--depth", type=int, default=0)
    sp.add_argument("--oracle-limit", type=int, default=40)
    sp.add_argument("--csv", help="write the count-vs-depth sweep as CSV")
    sp.add_argument("--adjacency", help="write the conflict graph as an adjacency list")
    sp = sub.add_parser("demo", help="emit a demo map spec")
    sp.add_argument("name", choices=DEMOS)
    sp.add_argument("--output")
    for flag in ("--n", "--cells", "--r-in", "--r-out", "--pad", "--layers"):
        sp.add_argument(flag, type=int)
    sp.add_argument("--spacing")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "demo":
            params = {k: getattr(args, k) for k in ("n", "cells", "r_in", "r_out", "pad", "layers", "spacing")}
            return cmd_demo(RunConfig("demo", output=args.output), args.name, params)
        cfg = RunConfig(args.command, **{k: v for k, v in vars(args).items()
                                         if k in RunConfig.__dataclass_fields__ and k != "command"})
        if getattr(args, "skip_stage_checks", False):
            cfg.stage_checks = False
        cfg.threads = _threads()
        cfg.validate()
        return {"certify": cmd_certify, "color": cmd_color, "verify": cmd_verify,
                "oracle": cmd_oracle}[args.command](cfg)
    except NotCertifiablyFpf as e:
        sys.stderr.write(f"error: {e}\n")
        sys.stderr.write(dumps({"status": "not certified", "depth": e.depth, "offending": e.offending}))
        return e.exit_code
    except FpfColorError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code
    except Exception as e:  # noqa: BLE001 - anything else is an internal fault
        sys.stderr.write(f"internal error: {type(e).__name__}: {e}\n")
        return 5


if __name__ == "__main__":
    sys.exit(main())
