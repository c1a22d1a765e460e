"""Staged coloring constructions.

``good_color`` runs the slab-by-slab recursion that grows n+1 separated
pairs of closed sets over an ordered decomposition of the ambient box;
``compact_color`` feeds it one certificate group at a time; the Euclidean
assembly lives in ``euclidean``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .complex import SimplicialComplex, kuhn_triangulate, refine_by_hyperplanes
from .enlarge import enlarge
from .errors import HypothesisViolated
from .geometry import (HalfSpace, PLRegion, RationalPolytope, affine_image,
                       bboxes_meet, covered_by, pullback, to_ibox)
from .maps import AmbientBox, FpfCertificate, SampledMap


# colorings -----------------------------------------------------------------


@dataclass
class Coloring:
    """Named closed colors; ``provenance[k]`` describes how color k was made."""

    dim: int
    colors: list
    method: str
    seed: int = 0
    names: list = None
    provenance: list = None
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        self.colors = [c if isinstance(c, PLRegion) else PLRegion(self.dim, c) for c in self.colors]
        if self.names is None:
            self.names = [f"F{k + 1}" for k in range(len(self.colors))]
        if self.provenance is None:
            self.provenance = [{} for _ in self.colors]

    def __len__(self):
        return len(self.colors)

    @property
    def color_count(self):
        return len(self.colors)

    @property
    def piece_count(self):
        return sum(len(c) for c in self.colors)

    def renamed(self, method=None):
        return Coloring(self.dim, list(self.colors), method or self.method, self.seed,
                        None, list(self.provenance), dict(self.stats))


def _union(dim, regions):
    return PLRegion(dim, [p for r in regions for p in r.pieces])


# favorable representations -----------------------------------------------------


def box_complex(box: AmbientBox, spacing) -> SimplicialComplex:
    """Kuhn triangulation of a grid-aligned box."""
    n = len(box.lo)
    counts = [int((box.hi[i] - box.lo[i]) / spacing) for i in range(n)]
    simplices = []
    for idx in itertools.product(*[range(c) for c in counts]):
        corner = tuple(box.lo[i] + spacing * idx[i] for i in range(n))
        simplices.extend(s.vertices for s in kuhn_triangulate(corner, spacing))
    return SimplicialComplex.from_point_lists(simplices)


class FavorableRep:
    """Ordered closed pieces ``Y_0, ..., Y_tau`` of an ambient box; only
    consecutive members may touch."""

    def __init__(self, slabs, box: AmbientBox, spacing, kind="slab", meta=None):
        self.slabs = list(slabs)
        self.box = box
        self.spacing = Fraction(spacing)
        self.kind = kind
        self.meta = meta or {}
        self._base = None

    def __len__(self):
        return len(self.slabs)

    @property
    def dim(self):
        return len(self.box.lo)

    @property
    def base(self):
        if self._base is None:
            self._base = box_complex(self.box, self.spacing)
        return self._base

    def upto(self, alpha):
        return _union(self.dim, self.slabs[:alpha + 1])

    def check_structure(self):
        """Non-consecutive members must be disjoint."""
        for a in range(len(self.slabs)):
            for b in range(a + 2, len(self.slabs)):
                hit, wit = self.slabs[a].meets(self.slabs[b])
                if hit:
                    raise HypothesisViolated(f"members {a} and {b} touch at {wit}", slab=(a, b))

    def outside_complex(self, alpha, domain):
        """Complex triangulating the closure of ``Y_alpha`` minus the domain."""
        ya = self.slabs[alpha]
        if ya.is_empty():
            return None
        yb = ya.ibox()
        base = self.base
        picks = []
        for k in range(len(base)):
            pts = base.points(k)
            if not bboxes_meet(base.polytope(k).ibox(), yb):
                continue
            if any(base.polytope(k).intersect(q) is not None for q in ya.pieces):
                picks.append(pts)
        if not picks:
            return None
        sub = SimplicialComplex.from_point_lists(picks)
        planes = []
        for q in ya.pieces:
            planes.extend(q.reduced().halfspaces)
        near = [p for _, p in domain if bboxes_meet(p.ibox(), yb)]
        for p in near:
            planes.extend(p.reduced().halfspaces)
        ref = refine_by_hyperplanes(sub, planes)
        keep = []
        for k in range(len(ref)):
            c = ref.barycenter(k)
            if not ya.contains(c):
                continue
            if any(p.contains(c) for p in near):
                continue
            keep.append(ref.points(k))
        if not keep:
            return None
        return SimplicialComplex.from_point_lists(keep)


def slab_rep(box: AmbientBox, spacing, coord, sign, thresholds) -> FavorableRep:
    """Slabs in the coordinate ``y = sign * x_coord``: ``y >= r_1``, then
    ``r_{k+1} <= y <= r_k`` and finally ``y <= r_m``."""
    n = len(box.lo)
    bp = box.polytope()
    e = [0] * n
    e[coord] = sign

    def piece(lo, hi):
        p = bp
        if lo is not None:
            p = p.cut(HalfSpace.make([-a for a in e], -lo)) if p is not None else None
        if hi is not None and p is not None:
            p = p.cut(HalfSpace.make(e, hi))
        return PLRegion(n, [p] if p is not None else [])

    r = list(thresholds)
    slabs = [piece(r[0], None)]
    for k in range(len(r) - 1):
        slabs.append(piece(r[k + 1], r[k]))
    slabs.append(piece(None, r[-1]))
    return FavorableRep(slabs, box, spacing, "slab",
                        {"coord": coord, "sign": sign, "thresholds": r})


def annulus_rep(box: AmbientBox, spacing, count) -> FavorableRep:
    """``Y_0 = [-1,1]^n`` and ``Y_k = [-(k+1),k+1]^n \\ (-k,k)^n`` for
    ``k < count - 1``; the last member takes the rest of the box."""
    n = len(box.lo)
    bp = box.polytope()
    slabs = []
    for k in range(count):
        outer = k + 1
        pieces = []
        if k == 0:
            pieces.append(bp.intersect(RationalPolytope.box([-1] * n, [1] * n)))
        else:
            last = k == count - 1
            for i in range(n):
                for s in (1, -1):
                    # |x_j| <= outer for j != i, s*x_i in [k, outer]
                    hs = []
                    for j in range(n):
                        if j == i or last:
                            continue
                        e = [0] * n
                        e[j] = 1
                        hs.append(HalfSpace.make(e, outer))
                        e[j] = -1
                        hs.append(HalfSpace.make(e, outer))
                    e = [0] * n
                    e[i] = -s
                    hs.append(HalfSpace.make(e, -k))
                    if not last:
                        e = [0] * n
                        e[i] = s
                        hs.append(HalfSpace.make(e, outer))
                    pieces.append(bp.intersect_halfspaces(hs))
        slabs.append(PLRegion(n, [p for p in pieces if p is not None]))
    return FavorableRep(slabs, box, spacing, "annulus", {"count": count})


# the staged recursion ---------------------------------------------------------


@dataclass
class GoodResult:
    coloring: Coloring
    a: list
    b: list
    stages: int
    report: dict


def _clip(pieces, region):
    out = []
    for host, p in pieces:
        pb = p.ibox()
        for q in region.pieces:
            if not bboxes_meet(pb, q.ibox()):
                continue
            r = p.intersect(q)
            if r is not None:
                out.append((host, r))
    return out


def _preimage(m: SampledMap, domain, region: PLRegion):
    """Pieces of ``domain`` (host, polytope) mapped into ``region``."""
    out = []
    if region.is_empty():
        return out
    rb = region.ibox()
    for host, p in domain:
        sp = m.pieces[host]
        img_box = _image_bbox(sp, p)
        if not bboxes_meet(img_box, rb):
            continue
        for q in region.pieces:
            if not bboxes_meet(img_box, q.ibox()):
                continue
            hs = pullback(q.halfspaces, sp.g, sp.t)
            if hs is None:
                continue
            r = p.intersect_halfspaces(hs)
            if r is not None:
                out.append((host, r))
    return out


def _image_bbox(sp, p):
    imgs = [sp(v) for v in p.vertices]
    n = len(imgs[0])
    return to_ibox((tuple(min(v[i] for v in imgs) for i in range(n)),
                    tuple(max(v[i] for v in imgs) for i in range(n))))


def _region_of(pieces, dim):
    return PLRegion(dim, [p for _, p in pieces])


def _clip_region_to_complex(region: PLRegion, k: SimplicialComplex, polys=None):
    out = []
    if polys is None:
        polys = [k.polytope(j) for j in range(len(k))]
    boxes = [p.ibox() for p in polys]
    kb = PLRegion(region.dim, polys).ibox()
    for q in region.pieces:
        qb = q.ibox()
        if not bboxes_meet(qb, kb):
            continue
        for p, b in zip(polys, boxes):
            if not bboxes_meet(qb, b):
                continue
            r = q.intersect(p)
            if r is not None:
                out.append(r)
    return PLRegion(region.dim, out).simplified()


def check_hypotheses(rep: FavorableRep, m: SampledMap, domain, per_slab):
    """Domain misses ``Y_0``; every domain point in ``Y_alpha`` is mapped
    into the earlier members and off ``Y_alpha``."""
    for host, p in per_slab[0]:
        raise HypothesisViolated(f"domain simplex {host} meets the first member",
                                 simplex=host, slab=0)
    for alpha in range(1, len(rep)):
        before = rep.upto(alpha - 1)
        ya = rep.slabs[alpha]
        for host, p in per_slab[alpha]:
            sp = m.pieces[host]
            img = affine_image(p, sp.g, sp.t)
            hit, wit = ya.meets(PLRegion(rep.dim, [img]))
            if hit:
                raise HypothesisViolated(
                    f"image of simplex {host} meets its own member {alpha} at {wit}",
                    simplex=host, slab=alpha)
            ok, wit = covered_by(img, before.nearby(img.ibox()))
            if not ok:
                raise HypothesisViolated(
                    f"image of simplex {host} leaves the earlier members near {wit}",
                    simplex=host, slab=alpha)


def good_color(rep: FavorableRep, m: SampledMap, domain, seed=0, label="good",
               check=True) -> GoodResult:
    """(2n+2)-color coloring of ``m`` restricted to ``domain``.

    ``domain`` is a list of ``(simplex index, polytope)`` pairs covering the
    part of X to be colored.
    """
    n = m.dimension
    n1 = n + 1
    dim = rep.dim
    empty = PLRegion(dim, [])
    if not domain:
        return GoodResult(Coloring(dim, [], "good", seed), [], [], 0, {})
    per_slab = [_clip(domain, y) for y in rep.slabs]
    check_hypotheses(rep, m, domain, per_slab)
    a = [rep.slabs[0]] + [empty] * n
    b = [empty] * n1
    report = {"stages": len(rep) - 1, "enlarge": []}
    history = [(a, b)]
    for alpha in range(1, len(rep)):
        xa = per_slab[alpha]
        fa = [_region_of(_preimage(m, xa, a[i]), dim) for i in range(n1)]
        fb = [_region_of(_preimage(m, xa, b[i]), dim) for i in range(n1)]
        if check:
            for i in range(n1):
                for left, right, what in ((fa[i], fb[i], "1"), (fa[i], a[i], "2"),
                                          (b[i], fb[i], "3"), (b[i], a[i], "4")):
                    hit, wit = left.meets(right)
                    if hit:
                        raise HypothesisViolated(
                            f"stage {alpha}: separation equality {what} fails for pair {i + 1} at {wit}",
                            slab=alpha)
        cs = [fa[i].union(b[i]) for i in range(n1)]
        ds = [fb[i].union(a[i]) for i in range(n1)]
        w = rep.outside_complex(alpha, domain)
        new_a, new_b = fa, fb
        if w is None:
            report["enlarge"].append(0)
        else:
            polys = [w.polytope(j) for j in range(len(w))]
            pairs = [(_clip_region_to_complex(cs[i], w, polys), _clip_region_to_complex(ds[i], w, polys))
                     for i in range(n1)]
            res = enlarge(w, pairs, seed=f"{seed}:{label}:{alpha}", check=check)
            new_a = [fa[i].union(res.a[i]) for i in range(n1)]
            new_b = [fb[i].union(res.b[i]) for i in range(n1)]
            report["enlarge"].append(res.report.get("simplices", 0))
        # only the pieces created at this stage need pruning
        a, b = ([b[i].union(new_a[i].simplified()) for i in range(n1)],
                [a[i].union(new_b[i].simplified()) for i in range(n1)])
        history.append((a, b))
    colors = []
    prov = []
    for side, sets in (("A", a), ("B", b)):
        for i in range(n1):
            pre = _region_of(_preimage(m, domain, sets[i]), dim).simplified()
            if pre.is_empty():
                continue
            colors.append(pre)
            prov.append({"group": label, "pair": i + 1, "side": side, "stage": len(rep) - 1})
    col = Coloring(dim, colors, "good", seed, provenance=prov)
    return GoodResult(col, a, b, len(rep) - 1, report | {"history": history})


# compact domains ------------------------------------------------------------------


def certificate_groups(cert: FpfCertificate):
    """Simplex indices grouped by witness, in ``(coordinate, +, -)`` order."""
    n = cert.map.dimension
    groups = []
    for i in range(n):
        for s in (1, -1):
            idx = [k for k, w in enumerate(cert.witnesses) if w == (i, s)]
            if idx:
                groups.append(((i, s), idx))
    return groups


def slab_thresholds(top, bottom, delta, spacing):
    """``r_1 = top + spacing`` descending by ``delta/2`` until ``r_m <= bottom``."""
    step = Fraction(delta) / 2
    r = [Fraction(top) + Fraction(spacing)]
    while r[-1] > bottom:
        r.append(r[-1] - step)
    return r


def group_box(m: SampledMap, hosts, slack=1) -> AmbientBox:
    import math
    n = m.dimension
    h = m.spacing
    pts = [p for k in hosts for p in m.pieces[k].points]
    vals = [v for k in hosts for v in m.pieces[k].values]
    lo, hi = [], []
    for i in range(n):
        o = m.grid.origin[i]
        a = min(min(p[i] for p in pts), min(v[i] for v in vals))
        b = max(max(p[i] for p in pts), max(v[i] for v in vals))
        lo.append(o + h * (math.floor((a - o) / h) - slack))
        hi.append(o + h * (math.ceil((b - o) / h) + slack))
    return AmbientBox(tuple(lo), tuple(hi))


def group_domain(m, hosts):
    return [(k, m.pieces[k].poly) for k in hosts]


def compact_color(m: SampledMap, cert: FpfCertificate, seed=0, check=True,
                  domain_by_group=None) -> Coloring:
    """At most 4n(n+1) colors: one staged coloring per certificate group.

    ``domain_by_group`` optionally restricts each group to sub-polytopes of
    its simplices (used by the Euclidean assembly).
    """
    m = cert.map
    n = m.dimension
    colors, prov, names = [], [], []
    per_group = {}
    for (i, s), hosts in certificate_groups(cert):
        key = f"x{i + 1}{'+' if s > 0 else '-'}"
        if domain_by_group is not None:
            domain = domain_by_group.get((i, s), [])
            if not domain:
                continue
            hosts = sorted({hk for hk, _ in domain})
        else:
            domain = group_domain(m, hosts)
        delta = min(cert.margins[k] for k in hosts)
        ys = [s * p[i] for k in hosts for p in m.pieces[k].points]
        thr = slab_thresholds(max(ys), min(ys), delta, m.spacing)
        box = group_box(m, hosts)
        rep = slab_rep(box, m.spacing, i, s, thr)
        if check:
            _check_slack(m, domain, i, s, thr, delta)
        res = good_color(rep, m, domain, seed=seed, label=key, check=check)
        per_group[key] = res.coloring.color_count
        for c, pv in zip(res.coloring.colors, res.coloring.provenance):
            colors.append(c)
            prov.append(pv | {"slabs": len(rep)})
    col = Coloring(n, colors, "compact", seed, provenance=prov)
    col.stats["per_group"] = per_group
    col.stats["delta"] = cert.delta
    return col


def _check_slack(m, domain, i, s, thr, delta):
    """Every domain point in slab k maps at least ``delta/2`` above ``r_k``."""
    half = Fraction(delta) / 2
    for host, p in domain:
        sp = m.pieces[host]
        for k in range(len(thr) - 1):
            sl = p.intersect_halfspaces([
                HalfSpace.make([s if j == i else 0 for j in range(m.dimension)], thr[k]),
                HalfSpace.make([-s if j == i else 0 for j in range(m.dimension)], -thr[k + 1])])
            if sl is None:
                continue
            low = min(s * sp(v)[i] for v in sl.vertices)
            if low - thr[k] < half:
                raise HypothesisViolated(f"slab slack below delta/2 on simplex {host}",
                                         simplex=host, slab=k + 1)
