"""Acceptance gate: one PASS/FAIL line per criterion, printed even without -s."""

import collections
import time
from fractions import Fraction as Q

import pytest

from fpfcolor.cli import main
from fpfcolor.coloring import compact_color
from fpfcolor.demos import antipodal, identity, translation
from fpfcolor.enlarge import enlarge
from fpfcolor.errors import LoopDetected, NotCertifiablyFpf
from fpfcolor.euclidean import euclidean_color
from fpfcolor.instances import random_enlarge_instance
from fpfcolor.maps import certify_fpf, map_from_function
from fpfcolor.reduce import reduce_colors
from fpfcolor.verify import (build_conflict_graph, oracle_min_colors,
                             partition_coloring, verify_coloring)

_cache = {}


@pytest.fixture
def report(capsys):
    def emit(num, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def _compact(n):
    if n not in _cache:
        m = translation(1, 4) if n == 1 else translation(2, 3)
        t = time.perf_counter()
        # n=2 runs without the per-stage self-checks; the final exact verification stays
        c = compact_color(m, certify_fpf(m), check=(n == 1))
        dt = time.perf_counter() - t
        _cache[n] = (m, c, dt, verify_coloring(c, m))
    return _cache[n]


def split_doubling():
    return map_from_function(lambda x: (2 * x[0],), 1, [(-4,), (-3,), (-2,), (1,), (2,), (3,)])


def test_criterion_1_compact_bound(report):
    m1, c1, t1, v1 = _compact(1)
    m2, c2, t2, v2 = _compact(2)
    ok = (v1.valid and c1.color_count <= 8 and t1 < 5
          and v2.valid and c2.color_count <= 24 and t2 < 120)
    report(1, ok, f"n=1: {c1.color_count} colors {t1:.2f}s valid={v1.valid}; "
                  f"n=2: {c2.color_count} colors {t2:.1f}s valid={v2.valid}")


def test_criterion_2_good_bound(report):
    lines, ok = [], True
    for n in (1, 2):
        _, c, _, _ = _compact(n)
        counted = collections.Counter(p["group"] for p in c.provenance)
        ok &= counted == collections.Counter(c.stats["per_group"])
        ok &= all(v <= 2 * n + 2 for v in counted.values())
        lines.append(f"n={n}: {dict(counted)}")
    report(2, ok, "; ".join(lines))


def test_criterion_3_euclidean(report):
    m = split_doubling()
    t = time.perf_counter()
    c = euclidean_color(m, certify_fpf(m), 4)
    dt = time.perf_counter() - t
    v = verify_coloring(c, m)
    report(3, v.valid and c.color_count <= 20 and dt < 30,
           f"{c.color_count} colors {dt:.2f}s valid={v.valid}")


def test_criterion_4_enlarge_suite(report):
    t = time.perf_counter()
    passed = 0
    for n in (1, 2):
        for seed in range(50):
            k, pairs = random_enlarge_instance(seed, n)
            res = enlarge(k, pairs, seed=seed, check=True)
            passed += bool(res.report["checked"])
    dt = time.perf_counter() - t
    report(4, passed == 100 and dt < 600, f"{passed}/100 exact checks {dt:.1f}s")


def _oracle_instances():
    out = []
    for cells in (1, 2, 4):
        m = translation(1, cells)
        out.append((f"translation[0,{cells}]", m, lambda m: compact_color(m, certify_fpf(m))))
    out.append(("doubling", split_doubling(), lambda m: euclidean_color(m, certify_fpf(m), 4)))
    return out


def test_criterion_5_oracle_equivalence(report):
    # every loop-free granularity with at most 40 sub-simplices is an instance
    ok, bad, finest = True, [], []
    for name, m, build in _oracle_instances():
        built = reduce_colors(build(m), m)
        ok &= verify_coloring(built, m).valid
        last = None
        for depth in range(4):
            try:
                g = build_conflict_graph(m, depth)
            except LoopDetected:
                continue
            if len(g) > 40:
                break
            res = oracle_min_colors(g, limit=40, mode="exact")
            ok &= verify_coloring(partition_coloring(g, res.partition), m, margin=False).valid
            if res.count > built.color_count:
                ok = False
                bad.append(f"{name}@depth{depth}: oracle {res.count} > built {built.color_count}")
            last = (depth, res.count)
        finest.append(f"{name}: finest oracle {last[1]}@{last[0]} vs built {built.color_count}")
    k4 = oracle_min_colors(build_conflict_graph(translation(1, 2), 1)).count
    ok &= k4 == 4
    report(5, ok, f"[0,2] half-unit oracle={k4}; violations: {bad or 'none'}; " + "; ".join(finest))


def test_criterion_6_reduction(report):
    ok, lines = True, []
    m = translation(1, 4)
    c = reduce_colors(compact_color(m, certify_fpf(m)), m)
    target = verify_coloring(c, m).valid and c.color_count <= 4
    lines.append(f"translation n=1: {c.stats['reduced_from']} -> {c.color_count}")
    for name, m, build in _oracle_instances():
        r = reduce_colors(build(m), m)
        ok &= verify_coloring(r, m).valid
    _, c2, _, _ = _compact(2)
    r2 = reduce_colors(c2, translation(2, 3), budget=300)
    ok &= verify_coloring(r2, translation(2, 3)).valid
    lines.append(f"translation n=2: {c2.color_count} -> {r2.color_count} (soundness only)")
    report(6, ok and target, "; ".join(lines))


def test_criterion_7_certification(report):
    limit = 4
    rejected = 0
    for d in range(limit + 1):
        try:
            certify_fpf(identity(1, 1), max_subdiv=d)
        except NotCertifiablyFpf as e:
            rejected += e.depth == d
    cert = certify_fpf(translation(1, 4))
    anti = antipodal(2, 1, 3)
    g = build_conflict_graph(anti, depth=1)
    res = oracle_min_colors(g, limit=0)
    ok = rejected == limit + 1 and cert.delta == Q(1) and not g.loops and res.lower_bound >= 3
    report(7, ok, f"identity rejected at {rejected}/{limit + 1} depths; translation margin "
                  f"{cert.delta}; antipodal loops={len(g.loops)} lower bound {res.lower_bound}")


def test_criterion_8_determinism(report, tmp_path):
    spec = tmp_path / "spec.json"
    main(["demo", "translation", "--cells", "4", "--output", str(spec)])
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}.json"
        assert main(["color", "--input", str(spec), "--output", str(out),
                     "--seed", "7", "--reduce-budget", "100"]) == 0
        outs.append(out.read_bytes())
    report(8, outs[0] == outs[1], f"{len(outs[0])} bytes, identical={outs[0] == outs[1]}")
