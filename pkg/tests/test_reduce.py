from hypothesis import given, settings, strategies as st

from fpfcolor.coloring import Coloring, compact_color
from fpfcolor.demos import translation
from fpfcolor.geometry import PLRegion
from fpfcolor.maps import certify_fpf
from fpfcolor.reduce import reduce_colors
from fpfcolor.verify import build_conflict_graph, verify_coloring


def singletons(m, depth):
    # each refined simplex as its own color: valid once there are no loops
    g = build_conflict_graph(m, depth)
    return Coloring(m.dimension, [PLRegion(m.dimension, [sp.poly]) for sp in g.map.pieces], "split")


def test_reduce_compact_translation():
    m = translation(1, 4)
    c = compact_color(m, certify_fpf(m))
    r = reduce_colors(c, m)
    assert r.color_count <= min(4, c.color_count)
    assert verify_coloring(r, m).valid
    assert r.stats["reduced_from"] == c.color_count


def test_budget_zero_returns_input():
    m = translation(1, 2)
    c = singletons(m, 1)
    assert reduce_colors(c, m, budget=0) is c


def test_budget_caps_checks():
    m = translation(1, 2)
    r = reduce_colors(singletons(m, 2), m, budget=5)
    assert r.stats["checks"] <= 5
    assert verify_coloring(r, m).valid


def test_reduce_is_a_fixpoint_on_k4():
    # the half-unit translation graph is complete, so nothing can merge
    m = translation(1, 2)
    r = reduce_colors(singletons(m, 1), m)
    assert r.color_count == 4


@settings(max_examples=15, deadline=None)
@given(st.permutations(list(range(8))))
def test_reduce_sound_for_any_color_order(order):
    m = translation(1, 2)
    base = singletons(m, 2)
    c = Coloring(1, [base.colors[k] for k in order], "split")
    r = reduce_colors(c, m)
    assert r.color_count <= c.color_count
    assert verify_coloring(r, m).valid
