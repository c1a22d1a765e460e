"""Extending disjoint closed pairs to a separating closed cover.

Given pairs ``(C_i, D_i)`` (i = 1..n+1) inside an at most n-dimensional
complex K, build a PL map ``g`` from K into the cube ``[0,1]^{n+1}`` with
``g_i = 0`` exactly on ``C_i`` and ``g_i = 1`` exactly on ``D_i``, make sure it
misses the centre of the cube, and pull back the 2(n+1) radial cones over the
cube's facets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .complex import SimplicialComplex, refine_by_hyperplanes, stellar_subdivide
from .errors import (CenterUnavoidable, DimensionTooHigh, EnlargeFailed,
                     PairsNotDisjoint)
from .geometry import (HALF, HalfSpace, PLRegion, Simplex, affine_on_simplex,
                       bboxes_meet, covered_by, pullback)

FREE_DENOMINATOR = 1009
MAX_DRAWS = 24


def cone_halfspaces(i, side, m):
    """Halfspaces of the radial cone from the centre of ``[0,1]^m`` over the
    facet ``x_i = side``."""
    hs = []
    e = [0] * m
    if side == 0:
        e[i] = 1
        hs.append(HalfSpace.make(e, HALF))
        for k in range(m):
            if k == i:
                continue
            a = [0] * m
            a[i] = 1
            a[k] = 1
            hs.append(HalfSpace.make(a, 1))
            a = [0] * m
            a[i] = 1
            a[k] = -1
            hs.append(HalfSpace.make(a, 0))
    else:
        e[i] = -1
        hs.append(HalfSpace.make(e, -HALF))
        for k in range(m):
            if k == i:
                continue
            a = [0] * m
            a[i] = -1
            a[k] = -1
            hs.append(HalfSpace.make(a, -1))
            a = [0] * m
            a[i] = -1
            a[k] = 1
            hs.append(HalfSpace.make(a, 0))
    return hs


def cone_membership(p, i, side) -> bool:
    """Exact membership of ``p`` in the cone over facet ``x_i = side``."""
    p = tuple(Fraction(x) for x in p)
    return all(h.contains(p) for h in cone_halfspaces(i, side, len(p)))


@dataclass
class AnchoredField:
    """Vertex values of the PL map into the cube over a refined complex."""

    complex: SimplicialComplex
    values: list
    seed: str

    def simplex_map(self, k):
        s = self.complex.simplex(k)
        return affine_on_simplex(s, [self.values[j] for j in self.complex.simplices[k]])


@dataclass
class EnlargeResult:
    a: list
    b: list
    seed: int
    anchored: AnchoredField = field(repr=False)
    report: dict = field(default_factory=dict)

    @property
    def colors(self):
        return list(self.a) + list(self.b)


def _region(r, dim):
    return r if isinstance(r, PLRegion) else PLRegion(dim, r)


class _Membership:
    """Cached vertex membership in the 2m anchor sets."""

    def __init__(self, sets):
        self.sets = sets
        self.cache = {}

    def of(self, p):
        got = self.cache.get(p)
        if got is None:
            got = self.cache[p] = tuple(s.contains(p) for s in self.sets)
        return got


def _face_inside(pts, region):
    """Is the convex hull of ``pts`` contained in ``region``?"""
    for q in region.pieces:
        if all(q.contains(p) for p in pts):
            return True
    if len(pts) == 1:
        return False
    ok, _ = covered_by(Simplex(pts).polytope(), region.pieces)
    return ok


def _make_full(k, sets, member):
    """Stellar-subdivide until every anchor set is a full subcomplex: each
    face whose vertices all lie in a set lies in the set."""
    checked = set()
    while True:
        bad = None
        for s in k.simplices:
            flags = [member.of(k.vertices[j]) for j in s]
            for si, reg in enumerate(sets):
                face = tuple(j for j, fl in zip(s, flags) if fl[si])
                if len(face) < 2 or (face, si) in checked:
                    continue
                if _face_inside([k.vertices[j] for j in face], reg):
                    checked.add((face, si))
                    continue
                bad = face
                break
            if bad is not None:
                break
        if bad is None:
            return k
        k = stellar_subdivide(k, bad)


def _draw_values(k, member, m, seed_key):
    rng = random.Random(seed_key)
    vals = []
    for p in k.vertices:
        fl = member.of(p)
        v = []
        for i in range(m):
            if fl[i]:
                v.append(Fraction(0))
            elif fl[m + i]:
                v.append(Fraction(1))
            else:
                v.append(Fraction(rng.randint(1, FREE_DENOMINATOR - 1), FREE_DENOMINATOR))
        vals.append(tuple(v))
    return vals


def apex_support(values):
    """``None`` if the centre is outside the hull of ``values``; otherwise the
    indices of a minimal subset whose hull contains it."""
    m = len(values[0])
    for i in range(m):
        if all(v[i] < HALF for v in values) or all(v[i] > HALF for v in values):
            return None
    r = len(values)
    unit = [tuple(Fraction(int(a == b)) for b in range(r)) for a in range(r)]
    poly = Simplex(unit).polytope()
    for i in range(m):
        row = [v[i] for v in values]
        for h in (HalfSpace.make(row, HALF), HalfSpace.make([-x for x in row], -HALF)):
            poly = poly.cut(h)
            if poly is None:
                return None
    w = min(poly.vertices, key=lambda x: sum(1 for c in x if c))
    return tuple(j for j, c in enumerate(w) if c)


def enlarge(k: SimplicialComplex, pairs, seed=0, check=True) -> EnlargeResult:
    """Closed cover ``{A_i, B_i}`` of ``|k|`` with ``A_i ∩ B_i = ∅`` and
    ``A_i ∩ Z = C_i``, ``B_i ∩ Z = D_i`` where Z is the union of all pairs."""
    m = len(pairs)
    dim = k.ambient_dim
    if k.dim > m - 1:
        raise DimensionTooHigh(f"complex of dimension {k.dim} needs at least {k.dim + 1} pairs")
    cs = [_region(c, dim) for c, _ in pairs]
    ds = [_region(d, dim) for _, d in pairs]
    for i in range(m):
        hit, wit = cs[i].meets(ds[i])
        if hit:
            raise PairsNotDisjoint(f"pair {i + 1} is not disjoint", index=i, witness=wit)
    sets = cs + ds
    planes = []
    for reg in sets:
        for q in reg.pieces:
            planes.extend(q.reduced().halfspaces)
    k = refine_by_hyperplanes(k, planes)
    member = _Membership(sets)
    k = _make_full(k, sets, member)
    draws = 0
    subdivisions = 0
    while True:
        if draws >= MAX_DRAWS:
            raise CenterUnavoidable(f"centre of the cube hit after {draws} draws")
        seed_key = f"{seed}:{draws}"
        values = _draw_values(k, member, m, seed_key)
        draws += 1
        stuck = []
        hits = 0
        for s in k.simplices:
            sup = apex_support([values[j] for j in s])
            if sup is None:
                continue
            hits += 1
            face = tuple(s[j] for j in sup)
            fl = [member.of(k.vertices[j]) for j in face]
            if all(all(f[i] or f[m + i] for i in range(m)) for f in fl):
                stuck.append(face)
            elif not stuck and draws % 4 == 0:
                stuck.append(face)
        if hits == 0:
            break
        if stuck:
            # redrawing cannot move a fully anchored face off the centre
            k = stellar_subdivide(k, stuck[0])
            k = _make_full(k, sets, member)
            subdivisions += 1
    fld = AnchoredField(k, values, seed_key)
    a_pieces = [[] for _ in range(m)]
    b_pieces = [[] for _ in range(m)]
    cones = [(cone_halfspaces(i, 0, m), cone_halfspaces(i, 1, m)) for i in range(m)]
    for idx in range(len(k)):
        vals = [values[j] for j in k.simplices[idx]]
        sp = k.polytope(idx)
        g = None
        for i in range(m):
            for side, store in ((0, a_pieces), (1, b_pieces)):
                # decide in value space first: whole simplex in or out of the cone
                flags = [[h.value(v) <= 0 for v in vals] for h in cones[i][side]]
                if any(not any(f) for f in flags):
                    continue
                if all(all(f) for f in flags):
                    store[i].append(sp)
                    continue
                if g is None:
                    g, t = fld.simplex_map(idx)
                # halfspaces holding at every vertex hold on the whole simplex
                hs = pullback([h for h, f in zip(cones[i][side], flags) if not all(f)], g, t)
                if hs is None:
                    continue
                r = sp.intersect_halfspaces(hs)
                if r is not None:
                    store[i].append(r)
    a = [PLRegion(dim, p).simplified() for p in a_pieces]
    b = [PLRegion(dim, p).simplified() for p in b_pieces]
    report = {"simplices": len(k), "draws": draws, "subdivisions": subdivisions,
              "pieces": sum(len(x) for x in a + b)}
    res = EnlargeResult(a, b, seed, fld, report)
    if check:
        report.update(check_enlarge(res, cs, ds))
    return res


def check_enlarge(res: EnlargeResult, cs, ds) -> dict:
    """Exact post-conditions; raises EnlargeFailed on any violation."""
    k = res.anchored.complex
    m = len(cs)
    allsets = res.a + res.b
    # apex exclusion
    for s in k.simplices:
        if apex_support([res.anchored.values[j] for j in s]) is not None:
            raise EnlargeFailed("centre of the cube lies in the image of a simplex")
    # cover, simplex by simplex
    for idx in range(len(k)):
        sp = k.polytope(idx)
        sb = sp.ibox()
        pieces = [q for reg in allsets for q in reg.pieces if bboxes_meet(q.ibox(), sb)]
        ok, wit = covered_by(sp, pieces)
        if not ok:
            raise EnlargeFailed(f"cover fails near {wit}")
    for i in range(m):
        hit, wit = res.a[i].meets(res.b[i])
        if hit:
            raise EnlargeFailed(f"A_{i + 1} meets B_{i + 1} at {wit}")
    zs = [q for reg in list(cs) + list(ds) for q in reg.pieces]
    for i in range(m):
        for mine, want in ((res.a[i], cs[i]), (res.b[i], ds[i])):
            for q in want.pieces:
                ok, wit = covered_by(q, mine.nearby(q.ibox()))
                if not ok:
                    raise EnlargeFailed(f"anchor set {i + 1} not contained in its enlargement near {wit}")
            for p in mine.pieces:
                pb = p.ibox()
                for z in zs:
                    if not bboxes_meet(pb, z.ibox()):
                        continue
                    r = p.intersect(z)
                    if r is None:
                        continue
                    ok, wit = covered_by(r, want.nearby(r.ibox()))
                    if not ok:
                        raise EnlargeFailed(f"trace condition fails for set {i + 1} near {wit}")
    return {"checked": True}
