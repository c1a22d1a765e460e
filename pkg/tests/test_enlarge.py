from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from fpfcolor.enlarge import apex_support, cone_membership, enlarge
from fpfcolor.errors import DimensionTooHigh, PairsNotDisjoint
from fpfcolor.geometry import PLRegion, RationalPolytope
from fpfcolor.instances import random_enlarge_instance, segment_complex, square_complex


def seg(a, b):
    return RationalPolytope.box([a], [b])


def reg1(*segs):
    return PLRegion(1, [seg(a, b) for a, b in segs])


# an independent 1-D checker working on merged closed intervals -------------------

def intervals(region):
    out = []
    for lo, hi in sorted((p.bbox()[0][0], p.bbox()[1][0]) for p in region.pieces):
        if out and lo <= out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return out


def meet(a, b):
    out = []
    for lo1, hi1 in a:
        for lo2, hi2 in b:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo <= hi:
                out.append([lo, hi])
    return out


def inside(a, b):
    return all(any(lo2 <= lo and hi <= hi2 for lo2, hi2 in b) for lo, hi in a)


def check_1d(res, pairs, length):
    sets = res.a + res.b
    assert intervals(PLRegion(1, [p for s in sets for p in s.pieces])) == [[0, length]]
    z = intervals(PLRegion(1, [p for c, d in pairs for p in c.pieces + d.pieces]))
    for i, (c, d) in enumerate(pairs):
        assert not meet(intervals(res.a[i]), intervals(res.b[i]))
        for got, want in ((res.a[i], c), (res.b[i], d)):
            assert inside(intervals(want), intervals(got))
            assert inside(meet(intervals(got), z), intervals(want))


def test_interval_example_on_0_7():
    k = segment_complex(7)
    pairs = [(reg1((0, 1)), reg1((4, 5))), (reg1((2, 3)), reg1((6, 7)))]
    res = enlarge(k, pairs, seed=0)
    assert res.report["checked"]
    check_1d(res, pairs, 7)


def test_pairs_covering_everything_fix_the_output():
    k = segment_complex(2)
    pairs = [(reg1((0, 1)), reg1((Q(3, 2), 2))), (reg1((1, 2)), reg1((0, Q(1, 2))))]
    res = enlarge(k, pairs, seed=3)
    check_1d(res, pairs, 2)
    for i, (c, d) in enumerate(pairs):
        assert intervals(res.a[i]) == intervals(c)
        assert intervals(res.b[i]) == intervals(d)


def test_centre_hit_triggers_subdivision():
    # vertex values (0,1) and (1,0) put the centre on the segment itself
    k = segment_complex(1)
    pairs = [(reg1((0, 0)), reg1((1, 1))), (reg1((1, 1)), reg1((0, 0)))]
    res = enlarge(k, pairs, seed=0)
    assert res.report["subdivisions"] >= 1
    check_1d(res, pairs, 1)


def test_rejects_bad_inputs():
    k = segment_complex(2)
    with pytest.raises(PairsNotDisjoint) as e:
        enlarge(k, [(reg1((0, 1)), reg1((1, 2))), (reg1(), reg1())])
    assert e.value.witness == (Q(1),)
    sq = square_complex(1)
    two = PLRegion(2, [])
    with pytest.raises(DimensionTooHigh):
        enlarge(sq, [(two, two), (two, two)])


def test_seed_determinism():
    k, pairs = random_enlarge_instance(5, 2)
    r1 = enlarge(k, pairs, seed=9)
    r2 = enlarge(k, pairs, seed=9)
    assert r1.anchored.values == r2.anchored.values
    assert [[p.halfspaces for p in s.pieces] for s in r1.colors] == \
        [[p.halfspaces for p in s.pieces] for s in r2.colors]


# cones ---------------------------------------------------------------------------

def test_cone_examples():
    assert cone_membership((0, Q(1, 3), Q(9, 10)), 0, 0)
    centre = (Q(1, 2),) * 3
    assert all(cone_membership(centre, i, s) for i in range(3) for s in (0, 1))
    assert not cone_membership((Q(1, 2), 0, 0), 0, 0)


def test_cone_membership_matches_definition():
    # x in cone(i, 0) iff x_i <= 1/2 and max_k |x_k - 1/2| <= 1/2 - x_i
    pts = [(Q(a, 6), Q(b, 6)) for a in range(7) for b in range(7)]
    for p in pts:
        for i in range(2):
            want = p[i] <= Q(1, 2) and all(abs(p[k] - Q(1, 2)) <= Q(1, 2) - p[i]
                                           for k in range(2) if k != i)
            assert cone_membership(p, i, 0) == want
            mirror = tuple(1 - x for x in p)
            assert cone_membership(mirror, i, 1) == want


def test_apex_support():
    assert apex_support([(0, 0), (0, 1)]) is None
    sup = apex_support([(0, 1), (1, 0), (Q(1, 3), Q(1, 3))])
    assert sup == (0, 1)


# property suite ---------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_random_1d_instances(seed):
    k, pairs = random_enlarge_instance(seed, 1)
    res = enlarge(k, pairs, seed=seed)
    check_1d(res, pairs, 4)


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 10_000))
def test_random_2d_instances(seed):
    k, pairs = random_enlarge_instance(seed, 2)
    res = enlarge(k, pairs, seed=seed)
    assert res.report["checked"]
