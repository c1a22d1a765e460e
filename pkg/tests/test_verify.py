import itertools
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from fpfcolor.coloring import Coloring
from fpfcolor.demos import antipodal, translation
from fpfcolor.errors import LoopDetected, TooLarge
from fpfcolor.geometry import PLRegion, RationalPolytope
from fpfcolor.verify import (ConflictGraph, build_conflict_graph, color_clash,
                             exact_coloring, oracle_min_colors, partition_coloring,
                             verify_coloring)


def seg(a, b):
    return RationalPolytope.box([a], [b])


def col(*regions):
    return Coloring(1, [PLRegion(1, [seg(a, b) for a, b in r]) for r in regions], "test")


# verification ------------------------------------------------------------------

def test_whole_domain_color_is_a_violation():
    m = translation(1, 2)
    rep = verify_coloring(col([(0, 1)]), m)
    assert not rep.valid
    assert rep.colors[0]["status"] == "violation"
    assert rep.colors[0]["witness"] == (Q(1),)


def test_half_split_margin():
    m = translation(1, 1)
    rep = verify_coloring(col([(0, Q(1, 2))], [(Q(1, 2), 1)]), m)
    assert rep.valid and rep.margin == Q(1, 2)
    assert rep.to_json()["margin"] == "1/2"


def test_empty_coloring_of_empty_domain_and_cover_failure():
    m = translation(1, 1)
    assert verify_coloring(Coloring(1, [], "x"), m).cover_ok is False
    rep = verify_coloring(col([(0, Q(1, 4))]), m)
    assert not rep.cover_ok and Q(1, 4) < rep.uncovered[0] <= 1


def test_color_clash_none_for_disjoint_image():
    m = translation(1, 2)
    assert color_clash(m, PLRegion(1, [seg(0, Q(1, 2))])) is None
    x, fx = color_clash(m, PLRegion(1, [seg(0, Q(1, 2)), seg(Q(3, 2), 2)]))
    assert fx[0] - x[0] == 1


# oracle ------------------------------------------------------------------------

def _brute_chromatic(n, edges):
    for k in range(n + 1):
        for cols in itertools.product(range(k), repeat=n):
            if all(cols[u] != cols[v] for u, v in edges):
                return k
    return n


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0)))
                        .filter(lambda e: e[0] < e[1]), max_size=21))))
def test_exact_coloring_matches_brute_force(data):
    n, edges = data
    edges = {e for e in edges if e[1] < n}
    k, cols = exact_coloring(n, sorted(edges))
    assert k == _brute_chromatic(n, edges)
    assert all(cols[u] != cols[v] for u, v in edges)


def _graph(n, edges):
    # node count comes from the map's pieces
    return ConflictGraph(translation(1, n), 0, set(edges), [])


def test_oracle_small_graphs():
    k4 = list(itertools.combinations(range(4), 2))
    assert oracle_min_colors(_graph(4, k4)).count == 4
    g = ConflictGraph(translation(1, 3), 0, set(), [])
    assert oracle_min_colors(g).count == 1


def test_oracle_limit_modes():
    g = build_conflict_graph(translation(1, 2), depth=3)
    res = oracle_min_colors(g, limit=4)
    assert not res.exact or res.count == res.lower_bound
    assert res.lower_bound <= res.count
    with pytest.raises(TooLarge):
        oracle_min_colors(g, limit=4, mode="exact")


def test_single_cell_half_depth():
    g = build_conflict_graph(translation(1, 1), depth=1)
    assert len(g) == 2 and g.edges == {(0, 1)}
    assert oracle_min_colors(g).count == 2


def test_translation_half_unit_is_k4():
    g = build_conflict_graph(translation(1, 2), depth=1)
    assert len(g.edges) == 6
    assert oracle_min_colors(g).count == 4


def test_loops_at_coarse_depth():
    with pytest.raises(LoopDetected) as e:
        build_conflict_graph(translation(1, 2), depth=0)
    assert e.value.depth == 0 and e.value.loops
    g = build_conflict_graph(translation(1, 2), depth=0, allow_loops=True)
    with pytest.raises(LoopDetected):
        oracle_min_colors(g)


def test_oracle_monotone_in_depth():
    m = translation(1, 2)
    counts = [oracle_min_colors(build_conflict_graph(m, d)).count for d in (1, 2, 3)]
    assert counts == sorted(counts, reverse=True)


def test_partition_coloring_verifies():
    m = translation(1, 2)
    for d in (1, 2):
        g = build_conflict_graph(m, d)
        res = oracle_min_colors(g)
        c = partition_coloring(g, res.partition)
        assert c.color_count == res.count
        assert verify_coloring(c, m).valid


def test_antipodal_loop_free_and_needs_three():
    m = antipodal(2, 1, 3)
    g = build_conflict_graph(m, depth=1)
    assert not g.loops
    res = oracle_min_colors(g, limit=0)
    assert res.lower_bound >= 3
    assert verify_coloring(partition_coloring(g, res.partition), m).valid
