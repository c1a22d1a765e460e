"""Exact rational polyhedral geometry.

Polytopes are kept in halfspace form together with their vertex list and, per
vertex, the set of tight halfspaces.  Intersections are computed by cutting the
vertex list one halfspace at a time (a small double-description step), so no
floating point and no general LP is needed for emptiness tests.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadRational, DimensionMismatch
from .linalg import det, inverse, nullspace, rank, solve

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")

ZERO = Fraction(0)
HALF = Fraction(1, 2)


def rational(x) -> Fraction:
    """Coerce ``x`` (int, Fraction or ``"p/q"`` string) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise BadRational(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL_RE.match(x)
        if not m:
            raise BadRational(f"not a rational: {x!r}")
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise BadRational(f"zero denominator: {x!r}")
        return Fraction(int(m.group(1)), den)
    raise BadRational(f"not a rational: {x!r}")


def rational_str(q) -> str:
    return str(Fraction(q))


def point(coords) -> tuple:
    return tuple(rational(c) for c in coords)


def _lcm(a, b):
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class HalfSpace:
    """``{x : normal . x <= offset}`` with a primitive integer normal."""

    normal: tuple
    offset: int

    @classmethod
    def make(cls, normal, offset) -> "HalfSpace":
        coeffs = [Fraction(c) for c in normal] + [Fraction(offset)]
        if all(c == 0 for c in coeffs[:-1]):
            raise ValueError("halfspace with zero normal")
        den = 1
        for c in coeffs:
            den = _lcm(den, c.denominator)
        ints = [int(c * den) for c in coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        ints = [v // g for v in ints]
        return cls(tuple(ints[:-1]), ints[-1])

    @property
    def dim(self):
        return len(self.normal)

    def _num_den(self, p):
        # integer accumulation; lattice points mostly share one denominator
        num, den = -self.offset, 1
        for a, x in zip(self.normal, p):
            if a:
                xn, xd = x.numerator, x.denominator
                if xd == den:
                    num += a * xn
                elif den % xd == 0:
                    num += a * xn * (den // xd)
                else:
                    g = math.gcd(den, xd)
                    f = xd // g
                    num = num * f + a * xn * (den // g)
                    den *= f
        return num, den

    def value(self, p):
        num, den = self._num_den(p)
        return Fraction(num, den)

    def sign(self, p) -> int:
        num, _ = self._num_den(p)
        return (num > 0) - (num < 0)

    def contains(self, p) -> bool:
        return self._num_den(p)[0] <= 0

    def flipped(self) -> "HalfSpace":
        """The opposite closed halfspace ``normal . x >= offset``."""
        return HalfSpace(tuple(-a for a in self.normal), -self.offset)

    def plane_key(self):
        for a in self.normal:
            if a:
                if a < 0:
                    return (tuple(-c for c in self.normal), -self.offset)
                return (self.normal, self.offset)


def _rank_ge(normals, need):
    if need <= 0:
        return True
    if len(normals) < need:
        return False
    if need == 1:
        return True
    return rank(normals) >= need


def _affine_rank(points):
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


class RationalPolytope:
    """Bounded convex polytope ``{x : h.value(x) <= 0 for h in halfspaces}``.

    ``vertices`` and ``tight`` (tight halfspace indices per vertex) are either
    supplied by the constructor that produced the polytope, or enumerated on
    first use.  An empty polytope is never constructed; operations that may
    produce one return ``None`` instead.
    """

    __slots__ = ("dim", "halfspaces", "_verts", "_tight", "_bbox", "_adim", "_ibox")

    def __init__(self, dim, halfspaces, vertices=None, tight=None):
        self.dim = dim
        self.halfspaces = tuple(halfspaces)
        for h in self.halfspaces:
            if h.dim != dim:
                raise DimensionMismatch("halfspace dimension mismatch")
        self._verts = None if vertices is None else tuple(vertices)
        self._tight = None if tight is None else tuple(tight)
        self._bbox = None
        self._adim = None
        self._ibox = None

    # construction ---------------------------------------------------------

    @classmethod
    def box(cls, lo, hi) -> "RationalPolytope":
        lo = point(lo)
        hi = point(hi)
        n = len(lo)
        hs = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            hs.append(HalfSpace.make(e, hi[i]))
            e[i] = -1
            hs.append(HalfSpace.make(e, -lo[i]))
        return cls(n, hs)

    @classmethod
    def from_points(cls, pts) -> "RationalPolytope":
        """Convex hull of a small point set (brute-force facet search)."""
        pts = sorted(set(point(p) for p in pts))
        if not pts:
            raise ValueError("empty point set")
        n = len(pts[0])
        p0 = pts[0]
        diffs = [tuple(a - b for a, b in zip(p, p0)) for p in pts[1:]]
        hs = []
        # equalities cutting out the affine hull
        for v in nullspace(diffs, n) if diffs else [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]:
            off = sum(a * b for a, b in zip(v, p0))
            hs.append(HalfSpace.make(v, off))
            hs.append(HalfSpace.make([-a for a in v], -off))
        k = _affine_rank(pts)
        if k >= 1:
            basis_rows = [list(h.normal) for h in hs[::2]]
            seen = set()
            for combo in itertools.combinations(range(len(pts)), k):
                sub = [pts[i] for i in combo]
                # hyperplane (within the affine hull) through the k points
                rows = [[a - b for a, b in zip(p, sub[0])] for p in sub[1:]] + basis_rows
                for normal in nullspace(rows, n):
                    off = sum(a * b for a, b in zip(normal, sub[0]))
                    vals = [sum(a * b for a, b in zip(normal, p)) - off for p in pts]
                    if all(v <= 0 for v in vals):
                        h = HalfSpace.make(normal, off)
                    elif all(v >= 0 for v in vals):
                        h = HalfSpace.make([-a for a in normal], -off)
                    else:
                        continue
                    if all(v == 0 for v in vals):
                        continue
                    if h.plane_key() + (h.normal,) not in seen:
                        seen.add(h.plane_key() + (h.normal,))
                        hs.append(h)
        return cls(n, hs).reduced()

    # vertices -------------------------------------------------------------

    def _enumerate(self):
        d = self.dim
        hs = self.halfspaces
        found = {}
        for combo in itertools.combinations(range(len(hs)), d):
            x = solve([hs[i].normal for i in combo], [hs[i].offset for i in combo])
            if x is None or x in found:
                continue
            if all(h.value(x) <= 0 for h in hs):
                found[x] = frozenset(j for j, h in enumerate(hs) if h.value(x) == 0)
        verts = sorted(found)
        self._verts = tuple(verts)
        self._tight = tuple(found[v] for v in verts)

    @property
    def vertices(self):
        if self._verts is None:
            self._enumerate()
        return self._verts

    @property
    def tight(self):
        if self._tight is None:
            self._enumerate()
        return self._tight

    def is_empty(self) -> bool:
        return not self.vertices

    def bbox(self):
        if self._bbox is None:
            vs = self.vertices
            lo = tuple(min(v[i] for v in vs) for i in range(self.dim))
            hi = tuple(max(v[i] for v in vs) for i in range(self.dim))
            self._bbox = (lo, hi)
        return self._bbox

    def ibox(self):
        """Integer box enclosing ``bbox`` at scale ``BOX_SCALE`` (for pruning)."""
        if self._ibox is None:
            self._ibox = to_ibox(self.bbox())
        return self._ibox

    def affine_dim(self) -> int:
        if self._adim is None:
            self._adim = _affine_rank(list(self.vertices))
        return self._adim

    def is_degenerate(self) -> bool:
        return self.affine_dim() < self.dim

    def centroid(self):
        vs = self.vertices
        k = len(vs)
        return tuple(sum(v[i] for v in vs) / k for i in range(self.dim))

    def contains(self, p) -> bool:
        return all(h.contains(p) for h in self.halfspaces)

    def contains_polytope(self, other) -> bool:
        return all(self.contains(v) for v in other.vertices)

    # cutting --------------------------------------------------------------

    def cut(self, h: HalfSpace):
        """Intersect with one halfspace; ``None`` when the result is empty."""
        verts = self.vertices
        tight = self.tight
        vals = [h.value(v) for v in verts]
        if all(v < 0 for v in vals):
            return self
        if all(v > 0 for v in vals):
            return None
        hs = self.halfspaces
        if h in hs and all(v <= 0 for v in vals):
            return self
        idx = len(hs)
        new_v = []
        new_t = []
        for v, t, val in zip(verts, tight, vals):
            if val < 0:
                new_v.append(v)
                new_t.append(t)
            elif val == 0:
                new_v.append(v)
                new_t.append(t | {idx})
        need = self.dim - 1
        rank_cache = {}
        for a in range(len(verts)):
            if vals[a] >= 0:
                continue
            for b in range(len(verts)):
                if vals[b] <= 0:
                    continue
                common = tight[a] & tight[b]
                ok = rank_cache.get(common)
                if ok is None:
                    ok = _rank_ge([hs[j].normal for j in common], need)
                    rank_cache[common] = ok
                if not ok:
                    continue
                va, vb = verts[a], verts[b]
                lam = vals[a] / (vals[a] - vals[b])
                nv = tuple(x + lam * (y - x) for x, y in zip(va, vb))
                new_v.append(nv)
                extra = frozenset(j for j in range(len(hs))
                                  if j not in common and hs[j].value(nv) == 0)
                new_t.append(common | extra | {idx})
        return RationalPolytope(self.dim, hs + (h,), new_v, new_t)._pruned()

    def _pruned(self):
        """Drop halfspaces tight at no vertex (they are redundant)."""
        used = set()
        for t in self._tight:
            used |= t
        if len(used) == len(self.halfspaces):
            return self
        keep = sorted(used)
        remap = {old: new for new, old in enumerate(keep)}
        hs = [self.halfspaces[i] for i in keep]
        tight = [frozenset(remap[j] for j in t) for t in self._tight]
        return RationalPolytope(self.dim, hs, self._verts, tight)

    def intersect(self, other):
        """``self ∩ other`` or ``None`` when empty."""
        if self.dim != other.dim:
            raise DimensionMismatch("intersecting polytopes of different dimension")
        if not bboxes_meet(self.ibox(), other.ibox()):
            return None
        p = self
        for h in other.halfspaces:
            p = p.cut(h)
            if p is None:
                return None
        return p

    def intersect_halfspaces(self, hs):
        p = self
        for h in hs:
            p = p.cut(h)
            if p is None:
                return None
        return p

    def reduced(self) -> "RationalPolytope":
        """Same set with only implicit equalities and facet halfspaces."""
        verts = self.vertices
        if not verts:
            return self
        k = self.affine_dim()
        keep = []
        for j, h in enumerate(self.halfspaces):
            tv = [v for v, t in zip(verts, self.tight) if j in t]
            if len(tv) == len(verts):
                keep.append(j)
            elif k >= 1 and len(tv) >= k and _affine_rank(tv) == k - 1:
                keep.append(j)
        seen = set()
        uniq = []
        for j in keep:
            h = self.halfspaces[j]
            if h not in seen:
                seen.add(h)
                uniq.append(j)
        remap = {old: new for new, old in enumerate(uniq)}
        hs = [self.halfspaces[j] for j in uniq]
        tight = [frozenset(remap[j] for j in t if j in remap) for t in self.tight]
        return RationalPolytope(self.dim, hs, verts, tight)

    def hyperplanes(self):
        """Plane keys of the reduced representation."""
        return {h.plane_key() for h in self.reduced().halfspaces}

    def volume(self) -> Fraction:
        if self.is_degenerate():
            return Fraction(0)
        total = Fraction(0)
        for simplex in triangulate(self):
            total += simplex.volume()
        return total

    def __repr__(self):
        return f"RationalPolytope(dim={self.dim}, vertices={list(map(_fmt_point, self.vertices))})"

    def same_set(self, other) -> bool:
        return set(self.vertices) == set(other.vertices)


def _fmt_point(p):
    return "(" + ", ".join(rational_str(x) for x in p) + ")"


BOX_SCALE = 1 << 24


def to_ibox(box):
    """Conservative integer enclosure of a rational box; integer comparisons
    are much cheaper than Fraction ones and never reject a real contact."""
    lo, hi = box
    return (tuple((x.numerator * BOX_SCALE) // x.denominator for x in lo),
            tuple(-((-x.numerator * BOX_SCALE) // x.denominator) for x in hi))


def bboxes_meet(a, b) -> bool:
    alo, ahi = a
    blo, bhi = b
    for i in range(len(alo)):
        if ahi[i] < blo[i] or bhi[i] < alo[i]:
            return False
    return True


class BoxIndex:
    """Bucket grid over integer boxes for overlap queries."""

    CELL = BOX_SCALE // 2

    def __init__(self, cell=None):
        self.cell = cell or self.CELL
        self.items = []
        self.boxes = []
        self.grid = {}

    def _keys(self, box):
        c = self.cell
        lo, hi = box
        ranges = [range(lo[i] // c, hi[i] // c + 1) for i in range(min(len(lo), 3))]
        return itertools.product(*ranges)

    def add(self, box, item):
        k = len(self.items)
        self.items.append(item)
        self.boxes.append(box)
        for key in self._keys(box):
            self.grid.setdefault(key, []).append(k)

    def query(self, box):
        hits = set()
        for key in self._keys(box):
            hits.update(self.grid.get(key, ()))
        return [self.items[k] for k in sorted(hits) if bboxes_meet(self.boxes[k], box)]


def bbox_union(boxes):
    boxes = list(boxes)
    lo = tuple(min(b[0][i] for b in boxes) for i in range(len(boxes[0][0])))
    hi = tuple(max(b[1][i] for b in boxes) for i in range(len(boxes[0][0])))
    return lo, hi


def polytope_intersection_empty(p: RationalPolytope, q: RationalPolytope):
    """``(True, None)`` if ``p ∩ q`` is empty, else ``(False, witness)``."""
    if p.dim != q.dim:
        raise DimensionMismatch("polytopes live in different dimensions")
    r = p.intersect(q)
    if r is None:
        return True, None
    return False, min(r.vertices)


class Simplex:
    """Closed simplex spanned by affinely independent rational points."""

    __slots__ = ("vertices", "_poly", "_bary")

    def __init__(self, vertices):
        vs = tuple(point(v) for v in vertices)
        if not vs:
            raise ValueError("simplex needs at least one vertex")
        if _affine_rank(list(vs)) != len(vs) - 1:
            raise ValueError("simplex vertices are affinely dependent")
        self.vertices = vs
        self._poly = None
        self._bary = None

    @property
    def dim(self):
        return len(self.vertices) - 1

    @property
    def ambient_dim(self):
        return len(self.vertices[0])

    def _barycentric_forms(self):
        """Affine forms ``(w, c)`` with ``beta_j(x) = w . x + c`` plus the
        equality forms cutting out the affine hull."""
        if self._bary is None:
            vs = self.vertices
            n = self.ambient_dim
            k = self.dim
            v0 = vs[0]
            edges = [tuple(a - b for a, b in zip(v, v0)) for v in vs[1:]]
            extra = nullspace(edges, n) if edges else [
                tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
            cols = edges + extra
            basis = [tuple(cols[j][i] for j in range(n)) for i in range(n)]
            binv = inverse(basis)
            forms = []
            for r in range(n):
                w = binv[r]
                c = -sum(a * b for a, b in zip(w, v0))
                forms.append((w, c))
            bary = forms[:k]
            w0 = tuple(-sum(f[0][i] for f in bary) for i in range(n))
            c0 = 1 - sum(f[1] for f in bary)
            self._bary = ([(w0, c0)] + bary, forms[k:])
        return self._bary

    def barycentric(self, x):
        forms, _ = self._barycentric_forms()
        return tuple(sum(a * b for a, b in zip(w, x)) + c for w, c in forms)

    def polytope(self) -> RationalPolytope:
        if self._poly is None:
            forms, eqs = self._barycentric_forms()
            k = self.dim
            hs = []
            tight = [set() for _ in range(k + 1)]
            for j, (w, c) in enumerate(forms):
                if k == 0:
                    break
                hs.append(HalfSpace.make([-a for a in w], c))
                for v in range(k + 1):
                    if v != j:
                        tight[v].add(len(hs) - 1)
            for w, c in eqs:
                for sgn in (1, -1):
                    hs.append(HalfSpace.make([sgn * a for a in w], -sgn * c))
                    for v in range(k + 1):
                        tight[v].add(len(hs) - 1)
            self._poly = RationalPolytope(self.ambient_dim, hs, self.vertices,
                                          [frozenset(t) for t in tight])
        return self._poly

    def volume(self) -> Fraction:
        if self.dim < self.ambient_dim:
            return Fraction(0)
        v0 = self.vertices[0]
        m = [[a - b for a, b in zip(v, v0)] for v in self.vertices[1:]]
        return abs(det(m)) / math.factorial(self.dim)

    def barycenter(self):
        k = len(self.vertices)
        return tuple(sum(v[i] for v in self.vertices) / k for i in range(self.ambient_dim))

    def contains(self, x) -> bool:
        return self.polytope().contains(x)

    def __repr__(self):
        return f"Simplex({[_fmt_point(v) for v in self.vertices]})"

    def __eq__(self, other):
        return isinstance(other, Simplex) and sorted(self.vertices) == sorted(other.vertices)

    def __hash__(self):
        return hash(tuple(sorted(self.vertices)))


def affine_on_simplex(simplex: Simplex, values):
    """``(G, t)`` with ``G x + t`` interpolating ``values`` at the vertices."""
    forms, _ = simplex._barycentric_forms()
    n = simplex.ambient_dim
    m = len(values[0])
    g = [[Fraction(0)] * n for _ in range(m)]
    t = [Fraction(0)] * m
    for (w, c), val in zip(forms, values):
        for r in range(m):
            if val[r]:
                row = g[r]
                for i in range(n):
                    row[i] += val[r] * w[i]
                t[r] += val[r] * c
    return tuple(tuple(row) for row in g), tuple(t)


def pullback_halfspace(h: HalfSpace, g, t):
    """Halfspace ``{x : h(G x + t)}``; ``True``/``False`` if constant."""
    n = len(g[0]) if g else 0
    normal = [Fraction(0)] * n
    for a, row in zip(h.normal, g):
        if a:
            for i in range(n):
                normal[i] += a * row[i]
    off = h.offset - sum(a * ti for a, ti in zip(h.normal, t))
    if all(c == 0 for c in normal):
        return off >= 0
    return HalfSpace.make(normal, off)


def pullback(poly_halfspaces, g, t):
    """List of pulled-back halfspaces, or ``None`` if infeasible outright."""
    out = []
    for h in poly_halfspaces:
        ph = pullback_halfspace(h, g, t)
        if ph is True:
            continue
        if ph is False:
            return None
        out.append(ph)
    return out


def apply_affine(g, t, x):
    return tuple(sum(a * b for a, b in zip(row, x)) + ti for row, ti in zip(g, t))


def affine_image(poly: RationalPolytope, g, t) -> RationalPolytope:
    """Exact image of a polytope under ``x -> G x + t``."""
    m = len(g)
    n = poly.dim
    if m == n and det([list(r) for r in g]) != 0:
        ginv = inverse([list(r) for r in g])
        # x = Ginv (y - t)
        tinv = tuple(-sum(a * b for a, b in zip(row, t)) for row in ginv)
        hs = pullback(poly.halfspaces, ginv, tinv)
        verts = [apply_affine(g, t, v) for v in poly.vertices]
        return RationalPolytope(m, hs, verts, poly.tight)
    return RationalPolytope.from_points([apply_affine(g, t, v) for v in poly.vertices])


# triangulation ---------------------------------------------------------------


def _pull(vids, k, tight, pts):
    if len(vids) == k + 1:
        return [tuple(sorted(vids, key=lambda i: pts[i]))]
    v = min(vids, key=lambda i: pts[i])
    hs_idx = set()
    for i in vids:
        hs_idx |= tight[i]
    facets = set()
    full = frozenset(vids)
    for j in hs_idx:
        face = frozenset(i for i in vids if j in tight[i])
        if v in face or face == full or len(face) < k:
            continue
        if _affine_rank([pts[i] for i in face]) == k - 1:
            facets.add(face)
    out = []
    for face in sorted(facets, key=lambda f: sorted(pts[i] for i in f)):
        for s in _pull(face, k - 1, tight, pts):
            out.append((v,) + s)
    return out


def triangulate_indices(pts, tight, k):
    """Pulling triangulation of a k-polytope given by vertex points and tight
    sets; vertex order is the global lexicographic order of points, so shared
    faces of neighbouring cells are triangulated identically."""
    return _pull(frozenset(range(len(pts))), k, tight, pts)


def triangulate(poly: RationalPolytope):
    pts = poly.vertices
    k = poly.affine_dim()
    return [Simplex([pts[i] for i in s]) for s in triangulate_indices(pts, poly.tight, k)]


# regions ---------------------------------------------------------------------


class PLRegion:
    """Finite union of closed convex polytopes (pieces may overlap)."""

    __slots__ = ("dim", "pieces", "_bbox", "_ibox")

    def __init__(self, dim, pieces=()):
        self.dim = dim
        self.pieces = tuple(pieces)
        self._bbox = None
        self._ibox = None
        for p in self.pieces:
            if p.dim != dim:
                raise DimensionMismatch("piece dimension mismatch")

    @classmethod
    def empty(cls, dim):
        return cls(dim, ())

    def __len__(self):
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    def is_empty(self):
        return not self.pieces

    def union(self, other) -> "PLRegion":
        return PLRegion(self.dim, self.pieces + other.pieces)

    def contains(self, p) -> bool:
        return any(q.contains(p) for q in self.pieces)

    def bbox(self):
        if self._bbox is None and self.pieces:
            self._bbox = bbox_union(q.bbox() for q in self.pieces)
        return self._bbox

    def ibox(self):
        if self._ibox is None and self.pieces:
            self._ibox = to_ibox(self.bbox())
        return self._ibox

    def intersect_polytope(self, poly) -> "PLRegion":
        out = []
        for q in self.pieces:
            r = q.intersect(poly)
            if r is not None:
                out.append(r)
        return PLRegion(self.dim, out)

    def meets(self, other) -> "tuple[bool, tuple | None]":
        """Exact test whether the two regions share a point."""
        if not self.pieces or not other.pieces:
            return False, None
        if not bboxes_meet(self.ibox(), other.ibox()):
            return False, None
        ob = other.ibox()
        for p in self.pieces:
            pb = p.ibox()
            if not bboxes_meet(pb, ob):
                continue
            for q in other.pieces:
                if not bboxes_meet(pb, q.ibox()):
                    continue
                r = p.intersect(q)
                if r is not None:
                    return True, min(r.vertices)
        return False, None

    def simplified(self) -> "PLRegion":
        """Drop pieces contained in another piece (same point set)."""
        keep = BoxIndex()
        ps = sorted(self.pieces, key=lambda p: -p.affine_dim())
        for p in ps:
            if any(q.contains_polytope(p) for q in keep.query(p.ibox())):
                continue
            keep.add(p.ibox(), p)
        return PLRegion(self.dim, keep.items)

    def nearby(self, box):
        box = to_ibox(box) if box and not isinstance(box[0][0], int) else box
        return [q for q in self.pieces if bboxes_meet(q.ibox(), box)]

    def volume_bound(self):
        return sum(p.volume() for p in self.pieces)

    def __repr__(self):
        return f"PLRegion(dim={self.dim}, pieces={len(self.pieces)})"


def subtract(target: RationalPolytope, piece: RationalPolytope, rel_dim: int):
    """Closed parts of ``target`` outside the interior of ``piece``, keeping
    only parts of affine dimension ``rel_dim``."""
    out = []
    rest = target
    for h in piece.reduced().halfspaces:
        # the complement of h is open: only a strictly outside vertex counts
        if any(h.sign(v) > 0 for v in rest.vertices):
            outside = rest.cut(h.flipped())
            if outside is not None and outside.affine_dim() == rel_dim:
                out.append(outside)
        else:
            continue
        rest = rest.cut(h)
        if rest is None or rest.affine_dim() < rel_dim:
            return out
    return out


def covered_by(target: RationalPolytope, pieces):
    """Exact test ``target ⊆ ⋃ pieces``.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness is a
    point of ``target`` outside every piece.  Lower-dimensional leftovers are
    discarded: pieces are closed, so covering all relatively open parts of
    ``target`` covers all of it.
    """
    k = target.affine_dim()
    todo = [target]
    tb = target.ibox()
    cand = [p for p in pieces if bboxes_meet(p.ibox(), tb) and p.affine_dim() >= k]
    for p in cand:
        nxt = []
        pb = p.ibox()
        for u in todo:
            if not bboxes_meet(u.ibox(), pb):
                nxt.append(u)
                continue
            if p.contains(u.centroid()) and p.contains_polytope(u):
                continue
            if u.intersect(p) is None:
                nxt.append(u)
                continue
            nxt.extend(subtract(u, p, k))
        todo = nxt
        if not todo:
            return True, None
    if not todo:
        return True, None
    return False, todo[0].centroid()
