import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from fpfcolor.demos import antipodal, doubling, translation
from fpfcolor.errors import (ExtensionDisagreesOnX, InputError, MissingVertexValue,
                             NonGridAlignedDomain, NotCertifiablyFpf,
                             PotentialVanishesOffX, TruncationOverflow)
from fpfcolor.geometry import PLRegion, RationalPolytope, covered_by
from fpfcolor.maps import (certify_fpf, dump_map, image_region, lift_cylinder,
                           load_map, map_from_function, preimage_region)


def seg(a, b):
    return RationalPolytope.box([a], [b])


def region(*segs):
    return PLRegion(1, [seg(a, b) for a, b in segs])


def same(r1, r2):
    a = all(covered_by(p, r2.pieces)[0] for p in r1.pieces)
    b = all(covered_by(p, r1.pieces)[0] for p in r2.pieces)
    return a and b


def translation_doc():
    return {"dimension": 1, "grid": {"spacing": "1", "origin": ["0"]},
            "domain_cells": [[0], [1], [2], [3]],
            "vertex_values": [{"vertex": [v], "value": [str(v + 1)]} for v in range(5)]}


def test_load_translation_spec():
    m = load_map(translation_doc())
    assert m.dimension == 1 and len(m.pieces) == 4
    assert m((Q(5, 2),)) == (Q(7, 2),)
    assert load_map(dump_map(m)).values == m.values


def test_load_rejects_missing_vertex():
    doc = translation_doc()
    doc["vertex_values"].pop(2)
    with pytest.raises(MissingVertexValue):
        load_map(doc)


def test_load_rejects_bad_cells_and_fields():
    doc = translation_doc()
    doc["domain_cells"].append([Q(1, 2)])
    with pytest.raises(NonGridAlignedDomain):
        load_map(doc)
    with pytest.raises(InputError):
        load_map({"dimension": 1})


def test_antipodal_spec_loads():
    m = antipodal(2, 1, 3)
    back = load_map(dump_map(m))
    assert all(back.values[v] == tuple(-m.grid.point(v)[i] for i in range(2)) for v in back.values)


# certification ------------------------------------------------------------------

def test_certify_translation():
    m = translation(1, 2)
    c = certify_fpf(m)
    assert c.delta == 1 and set(c.witnesses) == {(0, 1)}


def test_certify_identity_fails():
    m = map_from_function(lambda x: x, 1, [(0,)])
    with pytest.raises(NotCertifiablyFpf) as e:
        certify_fpf(m)
    assert e.value.offending


def _antipodal_delta_oracle(m):
    # per simplex, best over (i, s) of the smallest vertex margin; then the minimum
    out = None
    for sp in m.pieces:
        best = max(min(s * (val[i] - p[i]) for p, val in zip(sp.points, sp.values))
                   for i in range(2) for s in (1, -1))
        out = best if out is None else min(out, best)
    return out


def test_certify_antipodal_margin():
    m = antipodal(2, 1, 3)
    c = certify_fpf(m)
    assert c.delta == _antipodal_delta_oracle(m) == 2


@pytest.mark.parametrize("maker", [lambda: translation(2, 2), lambda: antipodal(2, 1, 3),
                                   lambda: doubling(1, 4)])
def test_certificate_sound_on_random_samples(maker):
    m = maker()
    c = certify_fpf(m)
    rng = random.Random(7)
    for _ in range(10_000 // 3):
        sp = rng.choice(m.pieces)
        w = [rng.randint(1, 50) for _ in sp.points]
        tot = sum(w)
        x = tuple(sum(wi * p[i] for wi, p in zip(w, sp.points)) / tot for i in range(m.dimension))
        fx = m(x)
        assert max(abs(a - b) for a, b in zip(fx, x)) >= c.delta


# images and preimages -----------------------------------------------------------

def test_preimage_examples():
    m = translation(1, 3)
    assert same(preimage_region(m, region((2, 3))), region((1, 2)))
    neg = map_from_function(lambda x: (-x[0],), 1, [(-2,), (-1,), (0,), (1,)])
    assert same(preimage_region(neg, region((1, 2))), region((-2, -1)))
    assert preimage_region(m, region((10, 11))).is_empty()


def test_image_examples():
    m = translation(1, 2)
    assert same(image_region(m, region((0, Q(1, 2)))), region((1, Q(3, 2))))
    assert same(image_region(m, region((0, 1), (1, 2))), region((1, 3)))


segs = st.tuples(st.integers(0, 12), st.integers(0, 12)).map(lambda t: (Q(min(t), 3), Q(max(t), 3)))


@settings(max_examples=60, deadline=None)
@given(segs, st.tuples(st.integers(-2, 24), st.integers(-2, 24)))
def test_image_preimage_adjunction(f_seg, r_ends):
    m = map_from_function(lambda x: (2 * x[0] - 1,), 1, [(0,), (1,), (2,), (3,)])
    f = region(f_seg)
    lo, hi = sorted(r_ends)
    r = region((Q(lo, 3), Q(hi, 3)))
    pre = preimage_region(m, r)
    inside = covered_by(f.pieces[0], pre.pieces)[0]
    img = image_region(m, f)
    maps_in = all(covered_by(p, r.pieces)[0] for p in img.pieces)
    assert inside == maps_in


@settings(max_examples=60, deadline=None)
@given(segs)
def test_disjoint_image_implies_disjoint_preimage(a_seg):
    m = translation(1, 4)
    a = region(a_seg)
    if image_region(m, a).meets(a)[0]:
        return
    assert not preimage_region(m, a).meets(a)[0]


# cylinder lift -----------------------------------------------------------------

def _lift_inputs(h_vals, phi):
    base = map_from_function(lambda x: (x[0] + 1,), 1, [(0,)])
    ext = load_map({"dimension": 1, "grid": {"spacing": "1", "origin": ["0"]},
                    "domain_cells": [[0], [1], [2]],
                    "vertex_values": [{"vertex": [v], "value": [str(h_vals[v])]} for v in range(4)]})
    return base, ext, {(v,): Q(phi[v]) for v in range(4)}


def test_lift_hat_potential():
    base, ext, phi = _lift_inputs([1, 2, 3, 4], [0, 0, 1, 2])
    g = lift_cylinder(base, ext, phi, height=4, layers=2)
    assert g((Q(2), Q(0))) == (Q(3), Q(1))
    # restricted to X x {0} the lift equals the base map
    for v in base.vertices():
        assert g.values[v + (0,)][:1] == base.values[v]


def test_lift_with_fixed_point_off_x_certifies():
    base, ext, phi = _lift_inputs([1, 2, 3, 2], [0, 0, 1, 2])
    g = lift_cylinder(base, ext, phi, height=4, layers=2)
    assert certify_fpf(g).delta > 0
    with pytest.raises(NotCertifiablyFpf):
        certify_fpf(ext)


def test_lift_rejects_bad_potential():
    base, ext, phi = _lift_inputs([1, 2, 3, 4], [0, 0, 1, 0])
    with pytest.raises(PotentialVanishesOffX):
        lift_cylinder(base, ext, phi, height=4, layers=1)
    base, ext, phi = _lift_inputs([1, 5, 3, 4], [0, 0, 1, 2])
    with pytest.raises(ExtensionDisagreesOnX):
        lift_cylinder(base, ext, phi, height=4, layers=1)
    base, ext, phi = _lift_inputs([1, 2, 3, 4], [0, 0, 1, 2])
    with pytest.raises(TruncationOverflow):
        lift_cylinder(base, ext, phi, height=3, layers=2)
