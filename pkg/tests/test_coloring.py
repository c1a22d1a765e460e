from fractions import Fraction as Q

import pytest

from fpfcolor.coloring import (Coloring, annulus_rep, certificate_groups,
                               compact_color, good_color, group_domain, slab_rep,
                               slab_thresholds)
from fpfcolor.demos import antipodal, translation
from fpfcolor.errors import HypothesisViolated
from fpfcolor.maps import AmbientBox, certify_fpf, map_from_function
from fpfcolor.verify import verify_coloring


def box1(lo, hi):
    return AmbientBox((Q(lo),), (Q(hi),))


# thresholds and representations -----------------------------------------------

def test_threshold_recurrence_example():
    # r_1 = 2, step delta/2 = 1/4, down to -2: thresholds r_1..r_17
    thr = slab_thresholds(1, -2, Q(1, 2), 1)
    assert thr[0] == 2 and thr[-1] == -2 and len(thr) == 17
    assert all(a - b == Q(1, 4) for a, b in zip(thr, thr[1:]))


def test_threshold_oracle_sweep():
    for top, bottom, delta, h in [(3, 0, 1, 1), (0, -1, Q(1, 3), Q(1, 2)), (5, 5, 2, 1)]:
        thr = slab_thresholds(top, bottom, delta, h)
        # independent: smallest m with r_1 - (m-1) delta/2 <= bottom
        r1 = Q(top) + Q(h)
        m = 1
        while r1 - (m - 1) * Q(delta) / 2 > bottom:
            m += 1
        assert len(thr) == m and thr[0] == r1


def test_slab_rep_structure():
    rep = slab_rep(box1(-3, 4), 1, 0, 1, [3, 2, 0, -1])
    assert len(rep) == 5
    rep.check_structure()
    # the top member is y >= 3, the last one y <= -1
    assert rep.slabs[0].contains((Q(7, 2),)) and not rep.slabs[0].contains((Q(5, 2),))
    assert rep.slabs[-1].contains((Q(-2),))
    # reflected coordinate
    neg = slab_rep(box1(-3, 4), 1, 0, -1, [3, 2])
    assert neg.slabs[0].contains((Q(-3),)) and not neg.slabs[0].contains((Q(0),))


def test_annulus_rep_structure():
    box = AmbientBox((Q(-4), Q(-4)), (Q(4), Q(4)))
    rep = annulus_rep(box, 1, 4)
    rep.check_structure()
    assert rep.slabs[0].contains((Q(1), Q(-1)))
    assert rep.slabs[1].contains((Q(2), Q(0))) and not rep.slabs[1].contains((Q(0), Q(0)))
    assert rep.slabs[3].contains((Q(4), Q(4)))
    assert not rep.slabs[2].meets(rep.slabs[0])[0]


# the staged recursion --------------------------------------------------------

def test_good_color_empty_domain():
    m = translation(1, 1)
    rep = slab_rep(box1(-1, 3), 1, 0, 1, [2, 1])
    res = good_color(rep, m, [])
    assert res.coloring.color_count == 0


def test_good_color_rejects_within_slab_displacement():
    m = map_from_function(lambda x: (x[0] + Q(1, 4),), 1, [(0,)])
    rep = slab_rep(box1(-2, 4), 1, 0, 1, [3, 2, -1])
    with pytest.raises(HypothesisViolated) as e:
        good_color(rep, m, group_domain(m, [0]))
    assert e.value.simplex == 0 and e.value.slab == 2


def test_good_color_rejects_domain_in_first_member():
    m = translation(1, 1)
    rep = slab_rep(box1(-1, 3), 1, 0, 1, [Q(1, 2), -1])
    with pytest.raises(HypothesisViolated) as e:
        good_color(rep, m, group_domain(m, [0]))
    assert e.value.slab == 0


def test_good_color_1d_translation_stage_invariants():
    m = translation(1, 4)
    cert = certify_fpf(m)
    (key, hosts), = certificate_groups(cert)
    res = good_color(slab_rep(box1(-1, 6), 1, 0, 1, slab_thresholds(4, 0, 1, 1)),
                     m, group_domain(m, hosts), seed=1, check=True)
    assert res.coloring.color_count <= 4
    for a, b in res.report["history"]:
        for i in range(2):
            assert not a[i].meets(b[i])[0]
    assert verify_coloring(res.coloring, m).valid


# compact domains -----------------------------------------------------------------

def test_certificate_groups_order():
    cert = certify_fpf(antipodal(2, 1, 3))
    keys = [k for k, _ in certificate_groups(cert)]
    assert keys == sorted(keys, key=lambda t: (t[0], -t[1]))
    assert sum(len(h) for _, h in certificate_groups(cert)) == len(cert.map.pieces)


@pytest.mark.parametrize("cells", [1, 2, 4])
def test_compact_1d_translation(cells):
    m = translation(1, cells)
    c = compact_color(m, certify_fpf(m), seed=0, check=True)
    assert c.color_count <= 4
    assert all(v <= 4 for v in c.stats["per_group"].values())
    rep = verify_coloring(c, m)
    assert rep.valid and rep.margin > 0


def test_compact_is_seed_deterministic():
    m = translation(1, 3)
    cert = certify_fpf(m)
    a = compact_color(m, cert, seed=5)
    b = compact_color(m, cert, seed=5)
    assert [[p.halfspaces for p in r.pieces] for r in a.colors] == \
        [[p.halfspaces for p in r.pieces] for r in b.colors]


def test_coloring_defaults():
    c = Coloring(1, [[], []], "x")
    assert c.names == ["F1", "F2"] and c.color_count == 2 and c.piece_count == 0
