"""Piecewise-affine maps sampled on a grid and interpolated on Kuhn simplices."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .complex import kuhn_permutations, kuhn_vertices
from .errors import (DimensionMismatch, ExtensionDisagreesOnX, InputError,
                     MissingVertexValue, NonGridAlignedDomain,
                     NotCertifiablyFpf, PieceOutsideDomain,
                     PotentialVanishesOffX, TruncationOverflow)
from .geometry import (PLRegion, RationalPolytope, Simplex, affine_image,
                       affine_on_simplex, apply_affine, bboxes_meet,
                       covered_by, point, pullback, rational, to_ibox)


@dataclass(frozen=True)
class GridSpec:
    dimension: int
    spacing: Fraction
    origin: tuple

    def __post_init__(self):
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise InputError("dimension must be a positive integer")
        if self.spacing <= 0:
            raise InputError("grid spacing must be positive")
        if len(self.origin) != self.dimension:
            raise DimensionMismatch("origin has wrong length")

    def point(self, v):
        return tuple(o + self.spacing * k for o, k in zip(self.origin, v))

    def halved(self):
        return GridSpec(self.dimension, self.spacing / 2, self.origin)


@dataclass(frozen=True)
class AmbientBox:
    """Grid-aligned box ``[lo, hi]`` (corner points)."""

    lo: tuple
    hi: tuple

    def polytope(self):
        return RationalPolytope.box(self.lo, self.hi)

    def contains_box(self, lo, hi):
        return all(a <= b for a, b in zip(self.lo, lo)) and all(b <= a for a, b in zip(self.hi, hi))


class SimplexPiece:
    """One Kuhn simplex of the domain with its affine piece ``G x + t``."""

    __slots__ = ("index", "cell", "perm", "lattice", "points", "values",
                 "g", "t", "_poly", "bbox", "image_bbox", "simplex",
                 "ibox", "image_ibox")

    def __init__(self, index, cell, perm, lattice, points, values):
        self.index = index
        self.cell = cell
        self.perm = perm
        self.lattice = lattice
        self.points = points
        self.values = values
        self.simplex = Simplex(points)
        self.g, self.t = affine_on_simplex(self.simplex, values)
        self._poly = None
        n = len(points[0])
        self.bbox = (tuple(min(p[i] for p in points) for i in range(n)),
                     tuple(max(p[i] for p in points) for i in range(n)))
        m = len(values[0])
        self.image_bbox = (tuple(min(v[i] for v in values) for i in range(m)),
                           tuple(max(v[i] for v in values) for i in range(m)))
        self.ibox = to_ibox(self.bbox)
        self.image_ibox = to_ibox(self.image_bbox)

    @property
    def poly(self):
        if self._poly is None:
            self._poly = self.simplex.polytope()
        return self._poly

    def __call__(self, x):
        return apply_affine(self.g, self.t, x)

    def __repr__(self):
        return f"SimplexPiece({self.index}, cell={self.cell}, perm={self.perm})"


class SampledMap:
    """``f: X -> R^n`` given by values at lattice vertices of the domain cells."""

    def __init__(self, grid: GridSpec, cells, values):
        self.grid = grid
        n = grid.dimension
        cells = sorted(set(tuple(c) for c in cells))
        for c in cells:
            if len(c) != n:
                raise NonGridAlignedDomain(f"cell {c} has wrong dimension")
        self.cells = tuple(cells)
        self._cellset = frozenset(cells)
        self._cellpos = {c: k for k, c in enumerate(cells)}
        vals = {}
        for v, val in values.items():
            v = tuple(v)
            val = point(val)
            if len(val) != n:
                raise DimensionMismatch(f"value at {v} has wrong dimension")
            vals[v] = val
        for c in cells:
            for corner in itertools.product((0, 1), repeat=n):
                v = tuple(a + b for a, b in zip(c, corner))
                if v not in vals:
                    raise MissingVertexValue(f"no value for vertex {list(v)}")
        self.values = vals
        self._pieces = None

    @property
    def dimension(self):
        return self.grid.dimension

    @property
    def spacing(self):
        return self.grid.spacing

    def is_empty(self):
        return not self.cells

    def vertices(self):
        n = self.dimension
        out = set()
        for c in self.cells:
            for corner in itertools.product((0, 1), repeat=n):
                out.add(tuple(a + b for a, b in zip(c, corner)))
        return sorted(out)

    def has_cell(self, c):
        return tuple(c) in self._cellset

    @property
    def pieces(self):
        """Kuhn simplices in (cell, permutation) order."""
        if self._pieces is None:
            n = self.dimension
            perms = kuhn_permutations(n)
            out = []
            for c in self.cells:
                for k, sigma in enumerate(perms):
                    lat = kuhn_vertices(sigma, c, 1)
                    lat = [tuple(int(x) for x in v) for v in lat]
                    pts = [self.grid.point(v) for v in lat]
                    vals = [self.values[v] for v in lat]
                    out.append(SimplexPiece(len(out), c, k, tuple(lat), tuple(pts), tuple(vals)))
            self._pieces = out
        return self._pieces

    def domain_region(self) -> PLRegion:
        return PLRegion(self.dimension, [p.poly for p in self.pieces])

    def cell_polytope(self, c):
        lo = self.grid.point(c)
        hi = tuple(x + self.spacing for x in lo)
        return RationalPolytope.box(lo, hi)

    def domain_bbox(self):
        lo = [min(c[i] for c in self.cells) for i in range(self.dimension)]
        hi = [max(c[i] for c in self.cells) + 1 for i in range(self.dimension)]
        return self.grid.point(lo), self.grid.point(hi)

    def image_bbox(self):
        vals = [self.values[v] for v in self.vertices()]
        n = self.dimension
        return (tuple(min(v[i] for v in vals) for i in range(n)),
                tuple(max(v[i] for v in vals) for i in range(n)))

    def locate(self, x):
        """A simplex piece containing ``x`` or ``None`` when ``x`` is not in X."""
        x = point(x)
        n = self.dimension
        h = self.spacing
        rel = [(xi - o) / h for xi, o in zip(x, self.grid.origin)]
        options = []
        for r in rel:
            f = math.floor(r)
            options.append((f, f - 1) if r == f else (f,))
        perms = kuhn_permutations(n)
        for c in itertools.product(*options):
            if c in self._cellset:
                local = [r - ci for r, ci in zip(rel, c)]
                order = tuple(sorted(range(n), key=lambda i: (-local[i], i)))
                k = self._cellpos[c] * len(perms) + perms.index(order)
                return self.pieces[k]
        return None

    def __call__(self, x):
        p = self.locate(x)
        if p is None:
            raise PieceOutsideDomain(f"point {x} is outside the domain")
        return p(point(x))

    def subdivided(self) -> "SampledMap":
        """Same map on the grid of half spacing (exact: the Kuhn triangulation
        of the finer grid refines the coarser one)."""
        n = self.dimension
        grid = self.grid.halved()
        cells = set()
        for c in self.cells:
            for off in itertools.product((0, 1), repeat=n):
                cells.add(tuple(2 * a + b for a, b in zip(c, off)))
        values = {}
        for c in sorted(cells):
            for corner in itertools.product((0, 1), repeat=n):
                v = tuple(a + b for a, b in zip(c, corner))
                if v in values:
                    continue
                if all(k % 2 == 0 for k in v):
                    values[v] = self.values[tuple(k // 2 for k in v)]
                else:
                    values[v] = self(grid.point(v))
        return SampledMap(grid, cells, values)

    def refined(self, depth) -> "SampledMap":
        m = self
        for _ in range(depth):
            m = m.subdivided()
        return m

    def ambient_box(self, slack=1) -> AmbientBox:
        """Grid-aligned box containing X and f(X) with ``slack`` spare cells."""
        if self.is_empty():
            z = tuple(self.grid.origin)
            return AmbientBox(z, z)
        dlo, dhi = self.domain_bbox()
        ilo, ihi = self.image_bbox()
        h = self.spacing
        lo = []
        hi = []
        for i in range(self.dimension):
            o = self.grid.origin[i]
            a = min(dlo[i], ilo[i])
            b = max(dhi[i], ihi[i])
            lo.append(o + h * (math.floor((a - o) / h) - slack))
            hi.append(o + h * (math.ceil((b - o) / h) + slack))
        return AmbientBox(tuple(lo), tuple(hi))

    def __repr__(self):
        return f"SampledMap(n={self.dimension}, h={self.spacing}, cells={len(self.cells)})"


# serialisation ---------------------------------------------------------------


def load_map(doc) -> SampledMap:
    if not isinstance(doc, dict):
        raise InputError("map spec must be a JSON object")
    try:
        n = doc["dimension"]
        grid = doc["grid"]
        cells = doc["domain_cells"]
        entries = doc["vertex_values"]
    except KeyError as e:
        raise InputError(f"map spec missing field {e.args[0]!r}") from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("dimension must be a positive integer")
    spacing = rational(grid.get("spacing", "1"))
    origin = grid.get("origin", ["0"] * n)
    if len(origin) != n:
        raise DimensionMismatch("origin has wrong length")
    g = GridSpec(n, spacing, point(origin))
    parsed = []
    for c in cells:
        if not isinstance(c, list) or len(c) != n or not all(isinstance(x, int) and not isinstance(x, bool) for x in c):
            raise NonGridAlignedDomain(f"domain cell {c!r} is not an integer multi-index of length {n}")
        parsed.append(tuple(c))
    values = {}
    for e in entries:
        v = e.get("vertex")
        if not isinstance(v, list) or len(v) != n or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
            raise NonGridAlignedDomain(f"vertex {v!r} is not a lattice index")
        val = e.get("value")
        if not isinstance(val, list):
            raise InputError(f"value at {v} must be a list")
        val = point(val)
        if len(val) != n:
            raise DimensionMismatch(f"value at {v} has wrong dimension")
        v = tuple(v)
        if v in values and values[v] != val:
            raise InputError(f"conflicting values for vertex {list(v)}")
        values[v] = val
    return SampledMap(g, parsed, values)


def dump_map(m: SampledMap) -> dict:
    return {
        "dimension": m.dimension,
        "grid": {"spacing": str(m.spacing), "origin": [str(x) for x in m.grid.origin]},
        "domain_cells": [list(c) for c in m.cells],
        "vertex_values": [{"vertex": list(v), "value": [str(x) for x in m.values[v]]}
                          for v in sorted(m.values)],
    }


def map_from_function(fn, n, cells, spacing=1, origin=None) -> SampledMap:
    """Sample ``fn`` (point -> point) at the vertices of the given cells."""
    spacing = rational(spacing)
    origin = point(origin) if origin is not None else tuple(Fraction(0) for _ in range(n))
    g = GridSpec(n, spacing, origin)
    values = {}
    for c in cells:
        for corner in itertools.product((0, 1), repeat=n):
            v = tuple(a + b for a, b in zip(c, corner))
            if v not in values:
                values[v] = point(fn(g.point(v)))
    return SampledMap(g, cells, values)


# certification -----------------------------------------------------------------


@dataclass
class FpfCertificate:
    """Per-simplex witness ``(i, s)`` with ``s*(f_i - x_i) >= delta``."""

    witnesses: list
    margins: list
    delta: Fraction
    depth: int
    map: SampledMap = field(repr=False)

    def to_json(self):
        return {
            "delta": str(self.delta),
            "depth": self.depth,
            "spacing": str(self.map.spacing),
            "simplices": [
                {"cell": list(p.cell), "perm": p.perm, "coordinate": w[0] + 1,
                 "sign": "+" if w[1] > 0 else "-", "margin": str(mg)}
                for p, w, mg in zip(self.map.pieces, self.witnesses, self.margins)
            ],
        }


def best_witness(piece: SimplexPiece):
    """``((i, s), margin)`` maximising the margin; ties: smallest i, then +."""
    n = len(piece.points[0])
    best = None
    for i in range(n):
        for s in (1, -1):
            mg = min(s * (val[i] - p[i]) for p, val in zip(piece.points, piece.values))
            if best is None or mg > best[1]:
                best = ((i, s), mg)
    return best


def _certify_once(m):
    wit, margins, bad = [], [], []
    for p in m.pieces:
        w, mg = best_witness(p)
        wit.append(w)
        margins.append(mg)
        if mg <= 0:
            bad.append(p)
    return wit, margins, bad


def certify_fpf(m: SampledMap, max_subdiv=0) -> FpfCertificate:
    """Certify fixed-point freeness, halving the grid up to ``max_subdiv``
    times when some simplex has no strictly separating coordinate."""
    cur = m
    depth = 0
    while True:
        wit, margins, bad = _certify_once(cur)
        if not bad:
            delta = min(margins) if margins else Fraction(0)
            return FpfCertificate(wit, margins, delta, depth, cur)
        if depth >= max_subdiv:
            offending = [{"cell": list(p.cell), "perm": p.perm,
                          "vertices": [[str(x) for x in q] for q in p.points]} for p in bad]
            raise NotCertifiablyFpf(
                f"{len(bad)} simplices admit no certifying coordinate at depth {depth}"
                + ("" if depth else "; try subdividing"),
                offending=offending, depth=depth)
        cur = cur.subdivided()
        depth += 1


# images and preimages ----------------------------------------------------------


def preimage_pieces(m: SampledMap, region, pieces=None):
    """``[(simplex index, polytope)]`` with ``f`` mapping the polytope into a
    piece of ``region`` (one entry per simplex/region-piece pair)."""
    out = []
    polys = region.pieces if isinstance(region, PLRegion) else list(region)
    if not polys:
        return out
    cand = m.pieces if pieces is None else pieces
    rb = [q.ibox() for q in polys]
    for sp in cand:
        for q, qb in zip(polys, rb):
            if not bboxes_meet(sp.image_ibox, qb):
                continue
            hs = pullback(q.halfspaces, sp.g, sp.t)
            if hs is None:
                continue
            r = sp.poly.intersect_halfspaces(hs)
            if r is not None:
                out.append((sp.index, r))
    return out


def preimage_region(m: SampledMap, region: PLRegion) -> PLRegion:
    return PLRegion(m.dimension, [p for _, p in preimage_pieces(m, region)]).simplified()


def clip_to_domain(m: SampledMap, poly: RationalPolytope, check=True):
    """``[(simplex index, poly ∩ simplex)]``; raises PieceOutsideDomain when
    ``check`` is set and the polytope leaves X."""
    out = []
    pb = poly.ibox()
    for sp in m.pieces:
        if not bboxes_meet(sp.ibox, pb):
            continue
        r = poly.intersect(sp.poly)
        if r is not None:
            out.append((sp.index, r))
    if check:
        ok, wit = covered_by(poly, [r for _, r in out])
        if not ok:
            raise PieceOutsideDomain(f"piece leaves the domain near {tuple(map(str, wit))}")
    return out


def image_region(m: SampledMap, region: PLRegion, check=True) -> PLRegion:
    out = []
    for poly in region.pieces:
        for k, r in clip_to_domain(m, poly, check=check):
            sp = m.pieces[k]
            out.append(affine_image(r, sp.g, sp.t))
    return PLRegion(m.dimension, out).simplified()


# cylinder lift -----------------------------------------------------------------


def lift_cylinder(m: SampledMap, ext: SampledMap, potential, height, layers=None) -> SampledMap:
    """``g(y, r) = (ext(y), r + potential(y))`` on ``Y x [0, layers*h]``.

    ``ext`` is defined on the box Y and must agree with ``m`` on X;
    ``potential`` maps lattice vertices of Y to non-negative rationals and
    vanishes exactly on X.  Values of the last coordinate must stay below the
    truncation ``height``.
    """
    if ext.grid != m.grid:
        raise DimensionMismatch("extension must live on the same grid as the map")
    n = m.dimension
    h = m.spacing
    height = rational(height)
    xverts = set(m.vertices())
    phi = {}
    for v in ext.vertices():
        if v not in potential:
            raise MissingVertexValue(f"no potential value at {list(v)}")
        phi[v] = rational(potential[v])
        if phi[v] < 0:
            raise InputError(f"negative potential at {list(v)}")
    for v in xverts:
        if ext.values.get(v) != m.values[v]:
            raise ExtensionDisagreesOnX(f"extension differs from the map at {list(v)}")
        if phi.get(v, 0) != 0:
            raise ExtensionDisagreesOnX(f"potential is nonzero on X at {list(v)}")
    # zero set of the interpolated potential must be exactly X
    xcells = set(m.cells)
    for sp in ext.pieces:
        zeros = [v for v in sp.lattice if phi[v] == 0]
        if not zeros:
            continue
        if not any(all(all(0 <= z[i] - c[i] <= 1 for i in range(n)) for z in zeros)
                   for c in _cells_touching(zeros[0], xcells, n)):
            raise PotentialVanishesOffX(
                f"potential vanishes off X on the face {[list(z) for z in zeros]}")
    for sp in ext.pieces:
        w, mg = best_witness(sp)
        if mg <= 0 and any(phi[v] == 0 for v in sp.lattice):
            raise NotCertifiablyFpf("extension has an uncertifiable simplex meeting X",
                                    offending=[{"cell": list(sp.cell), "perm": sp.perm}])
    top = max(phi.values())
    if layers is None:
        layers = math.floor((height - top) / h)
        if layers < 1:
            raise TruncationOverflow("truncation height leaves no room for a layer")
    elif layers * h + top > height:
        raise TruncationOverflow(f"r + potential reaches {layers * h + top} > {height}")
    grid = GridSpec(n + 1, h, tuple(ext.grid.origin) + (Fraction(0),))
    cells = [c + (l,) for c in ext.cells for l in range(layers)]
    values = {}
    for v in ext.vertices():
        for l in range(layers + 1):
            values[v + (l,)] = ext.values[v] + (l * h + phi[v],)
    return SampledMap(grid, cells, values)


def _cells_touching(v, cells, n):
    for off in itertools.product((0, -1), repeat=n):
        c = tuple(a + b for a, b in zip(v, off))
        if c in cells:
            yield c
