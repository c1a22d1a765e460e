"""Simplicial complexes over rational points: Kuhn triangulation, hyperplane
refinement and subdivisions."""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction

from .geometry import (HalfSpace, RationalPolytope, Simplex, point,
                       triangulate_indices)


@functools.lru_cache(maxsize=None)
def kuhn_permutations(n):
    return tuple(itertools.permutations(range(n)))


def kuhn_vertices(sigma, corner=None, spacing=1):
    """Vertex list of the Kuhn simplex ``x_{sigma[0]} >= ... >= x_{sigma[-1]}``
    of the cube ``corner + [0, spacing]^n``."""
    n = len(sigma)
    corner = tuple(Fraction(0) for _ in range(n)) if corner is None else point(corner)
    spacing = Fraction(spacing)
    cur = list(corner)
    out = [tuple(cur)]
    for axis in sigma:
        cur[axis] += spacing
        out.append(tuple(cur))
    return out


def kuhn_triangulate(corner, spacing=1):
    """The n! Kuhn simplices of the cell ``corner + [0, spacing]^n``, in
    lexicographic permutation order."""
    n = len(corner)
    return [Simplex(kuhn_vertices(s, corner, spacing)) for s in kuhn_permutations(n)]


def kuhn_locate(local):
    """Permutation index of a Kuhn simplex containing a point with cell-local
    coordinates in ``[0,1]^n`` (ties broken towards the smallest index)."""
    n = len(local)
    order = tuple(sorted(range(n), key=lambda i: (-local[i], i)))
    return kuhn_permutations(n).index(order) if n <= 6 else None


class SimplicialComplex:
    """Top-dimensional simplices over a shared vertex table.

    ``simplices`` holds sorted vertex-index tuples.  ``parent`` optionally maps
    each simplex to the index of a simplex of a coarser complex containing it.
    """

    def __init__(self, vertices, simplices, parent=None):
        self.vertices = list(vertices)
        self.simplices = [tuple(s) for s in simplices]
        self.parent = list(parent) if parent is not None else None
        self._polys = {}

    @classmethod
    def from_point_lists(cls, simplices, parent=None):
        index = {}
        verts = []
        out = []
        for s in simplices:
            ids = []
            for p in s:
                p = point(p)
                j = index.get(p)
                if j is None:
                    j = index[p] = len(verts)
                    verts.append(p)
                ids.append(j)
            out.append(tuple(sorted(ids)))
        return cls(verts, out, parent)

    @property
    def ambient_dim(self):
        return len(self.vertices[0]) if self.vertices else 0

    @property
    def dim(self):
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def __len__(self):
        return len(self.simplices)

    def points(self, k):
        return [self.vertices[j] for j in self.simplices[k]]

    def simplex(self, k) -> Simplex:
        return Simplex(self.points(k))

    def polytope(self, k) -> RationalPolytope:
        p = self._polys.get(k)
        if p is None:
            p = self._polys[k] = self.simplex(k).polytope()
        return p

    def barycenter(self, k):
        pts = self.points(k)
        m = len(pts)
        return tuple(sum(p[i] for p in pts) / m for i in range(len(pts[0])))

    def volume(self):
        return sum((self.simplex(k).volume() for k in range(len(self))), Fraction(0))


def _crossing(h, pts):
    pos = neg = False
    for p in pts:
        v = h.value(p)
        if v > 0:
            pos = True
        elif v < 0:
            neg = True
        if pos and neg:
            return True
    return False


def _as_halfspace(h):
    if isinstance(h, HalfSpace):
        return h
    normal, offset = h
    return HalfSpace.make(normal, offset)


def refine_simplex_cells(poly: RationalPolytope, planes):
    """Split a polytope by every plane crossing it; returns the cells."""
    cells = [poly]
    for h in planes:
        nxt = []
        for c in cells:
            if _crossing(h, c.vertices):
                a = c.cut(h)
                b = c.cut(h.flipped())
                nxt.extend(x for x in (a, b) if x is not None)
            else:
                nxt.append(c)
        cells = nxt
    return cells


def refine_by_hyperplanes(k: SimplicialComplex, planes) -> SimplicialComplex:
    """Subdivide so that no output simplex is crossed by any plane.

    ``planes`` are HalfSpaces or ``(normal, offset)`` keys; only the boundary
    hyperplane matters.  Output simplices know their parent simplex.
    """
    uniq = {}
    for h in planes:
        h = _as_halfspace(h)
        uniq.setdefault(h.plane_key(), h)
    hs = [uniq[key] for key in sorted(uniq)]
    if not hs:
        return SimplicialComplex(k.vertices, k.simplices, list(range(len(k))))
    out = []
    parent = []
    for idx in range(len(k)):
        pts = k.points(idx)
        crossing = [h for h in hs if _crossing(h, pts)]
        if not crossing:
            out.append(pts)
            parent.append(idx)
            continue
        for cell in refine_simplex_cells(k.polytope(idx), crossing):
            cpts = cell.vertices
            dimc = len(pts) - 1
            for s in triangulate_indices(cpts, cell.tight, dimc):
                out.append([cpts[i] for i in s])
                parent.append(idx)
    return SimplicialComplex.from_point_lists(out, parent)


def barycentric_subdivision(k: SimplicialComplex) -> SimplicialComplex:
    """First barycentric subdivision (flags of faces of each top simplex)."""
    out = []
    parent = []
    for idx in range(len(k)):
        pts = k.points(idx)
        for perm in itertools.permutations(range(len(pts))):
            chain = []
            acc = []
            for j in perm:
                acc.append(pts[j])
                m = len(acc)
                chain.append(tuple(sum(p[i] for p in acc) / m for i in range(len(pts[0]))))
            out.append(chain)
            parent.append(idx)
    return SimplicialComplex.from_point_lists(out, parent)


def stellar_subdivide(k: SimplicialComplex, face) -> SimplicialComplex:
    """Star the complex at the barycenter of ``face`` (vertex-index tuple)."""
    face = tuple(sorted(face))
    fset = set(face)
    m = len(face)
    b = tuple(sum(k.vertices[j][i] for j in face) / m for i in range(k.ambient_dim))
    verts = list(k.vertices)
    bi = len(verts)
    verts.append(b)
    simplices = []
    parent = []
    for idx, s in enumerate(k.simplices):
        par = k.parent[idx] if k.parent is not None else idx
        if fset.issubset(s):
            for v in face:
                simplices.append(tuple(sorted([x for x in s if x != v] + [bi])))
                parent.append(par)
        else:
            simplices.append(s)
            parent.append(par)
    return SimplicialComplex(verts, simplices, parent)
