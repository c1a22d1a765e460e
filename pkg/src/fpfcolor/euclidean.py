"""Coloring over nested cube annuli.

Points whose image does not fall back to an inner annulus (the set ``A``) are
colored shell by shell with the compact colorer; shells of equal parity are
far enough apart to share colors.  The rest of X is colored by the staged
recursion over the annulus decomposition, after swelling the A-colors a
little so that the leftover is closed and stays clear of ``A``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .coloring import Coloring, annulus_rep, compact_color, good_color
from .errors import AnnulusOverflow, EnlargeFailed, HypothesisViolated
from .geometry import HalfSpace, PLRegion, RationalPolytope, pullback, subtract
from .maps import AmbientBox, FpfCertificate, SampledMap, clip_to_domain
from .verify import color_clash, color_margin

MAX_HALVINGS = 12


def _axis(n, i, s):
    e = [0] * n
    e[i] = s
    return e


def shell_halfspaces(n, inner, outer):
    """Convex pieces (as halfspace lists) of ``[-outer,outer]^n`` minus the
    open cube ``(-inner,inner)^n``."""
    cube = []
    for j in range(n):
        cube.append(HalfSpace.make(_axis(n, j, 1), outer))
        cube.append(HalfSpace.make(_axis(n, j, -1), outer))
    if inner <= 0:
        return [cube]
    return [cube + [HalfSpace.make(_axis(n, i, -s), -inner)]
            for i in range(n) for s in (1, -1)]


def _clip_domain(domain, hs_lists):
    out = []
    for host, p in domain:
        for hs in hs_lists:
            r = p.intersect_halfspaces(hs)
            if r is not None:
                out.append((host, r))
    return out


def outward_part(m: SampledMap, k):
    """Pieces of X in annulus ``k`` whose image has sup-norm at least ``k-1``."""
    n = m.dimension
    ring = _clip_domain([(sp.index, sp.poly) for sp in m.pieces], shell_halfspaces(n, k - 1, k))
    if k == 1:
        return ring
    out = []
    for host, p in ring:
        sp = m.pieces[host]
        for i in range(n):
            for s in (1, -1):
                hs = pullback([HalfSpace.make(_axis(n, i, -s), -(k - 1))], sp.g, sp.t)
                if hs is None:
                    continue
                r = p.intersect_halfspaces(hs)
                if r is not None:
                    out.append((host, r))
    return out


def _max_image_norm(m, domain):
    best = Fraction(0)
    for host, p in domain:
        sp = m.pieces[host]
        for v in p.vertices:
            best = max(best, max(abs(c) for c in sp(v)))
    return best


def shell_radii(m: SampledMap, reach):
    """``b_0 = 0 < b_1 = 1 < ...`` with ``f(X ∩ [-b_k,b_k]^n)`` inside the
    open cube of radius ``b_{k+1}`` and ``b_{k+1} >= b_k + 2``; stops once
    ``b_k >= reach``."""
    n = m.dimension
    allx = [(sp.index, sp.poly) for sp in m.pieces]
    b = [0, 1]
    while b[-1] < reach:
        inside = _clip_domain(allx, shell_halfspaces(n, 0, b[-1]))
        top = math.floor(_max_image_norm(m, inside)) + 1
        b.append(max(b[-1] + 2, top))
    return b


def swell(poly: RationalPolytope, eps):
    """Outer approximation of ``poly`` grown by ``eps`` in the sup-norm; it
    contains the sup-norm ``eps``-neighbourhood."""
    n = poly.dim
    normals = {h.normal for h in poly.reduced().halfspaces}
    for i in range(n):
        normals.add(tuple(_axis(n, i, 1)))
        normals.add(tuple(_axis(n, i, -1)))
    hs = []
    for a in sorted(normals):
        support = max(sum(x * y for x, y in zip(a, v)) for v in poly.vertices)
        hs.append(HalfSpace.make(a, support + eps * sum(abs(x) for x in a)))
    return RationalPolytope(n, hs)


def _dyadic_below(q):
    """Largest ``1/2^j`` strictly below ``q`` (q > 0)."""
    e = Fraction(1)
    while e >= q:
        e /= 2
    return e


def _swollen_color(m, region, eps):
    grown = [swell(p, eps) for p in region.pieces]
    clipped = [c for g in grown for c in clip_to_domain(m, g, check=False)]
    return grown, clipped


def swell_color(m: SampledMap, region: PLRegion):
    """``(eps, grown pieces, color)``: the grown set meets X in a color."""
    clipped = [c for p in region.pieces for c in clip_to_domain(m, p, check=False)]
    dist = color_margin(m, region, clipped)
    eps = _dyadic_below(dist / 2)
    for _ in range(MAX_HALVINGS):
        grown, gclip = _swollen_color(m, region, eps)
        color = PLRegion(m.dimension, [p for _, p in gclip])
        if color_clash(m, color, gclip) is None:
            return eps, grown, color
        eps /= 2
    raise EnlargeFailed("could not swell a color without losing the color property")


def leftover(m: SampledMap, grown):
    """Closure of X minus the grown sets, as ``(host, polytope)`` pieces."""
    out = []
    n = m.dimension
    for sp in m.pieces:
        todo = [sp.poly]
        for g in grown:
            nxt = []
            for u in todo:
                if u.intersect(g) is None:
                    nxt.append(u)
                else:
                    nxt.extend(subtract(u, g, n))
            todo = nxt
            if not todo:
                break
        out.extend((sp.index, u) for u in todo)
    return out


def _group_by_witness(cert, pieces):
    groups = {}
    for host, p in pieces:
        groups.setdefault(cert.witnesses[host], []).append((host, p))
    return groups


def euclidean_color(m: SampledMap, cert: FpfCertificate, annuli, seed=0, check=True) -> Coloring:
    """Coloring with at most ``8n(n+1) + 2n + 2`` colors for X inside the
    cube of radius ``annuli``."""
    m = cert.map
    n = m.dimension
    reach = max((max(abs(c) for c in v) for v in m.vertices()), default=0)
    if reach > annuli:
        raise AnnulusOverflow(f"domain reaches radius {reach} beyond {annuli} annuli")
    empty = Coloring(n, [], "euclidean", seed)
    if not m.pieces:
        return empty
    # the outward part A, then its coloring shell by shell
    a_pieces = [c for k in range(1, annuli + 1) for c in outward_part(m, k)]
    radii = shell_radii(m, reach)
    per_shell = []
    for k in range(1, len(radii)):
        dom = _clip_domain(a_pieces, shell_halfspaces(n, radii[k - 1], radii[k]))
        if not dom:
            per_shell.append([])
            continue
        sub = compact_color(m, cert, seed=seed, check=check,
                            domain_by_group=_group_by_witness(cert, dom))
        per_shell.append(sub.colors)
    merged, prov = [], []
    for parity, tag in ((1, "odd"), (0, "even")):
        width = max((len(c) for k, c in enumerate(per_shell, 1) if k % 2 == parity), default=0)
        for i in range(width):
            pieces = [p for k, cs in enumerate(per_shell, 1)
                      if k % 2 == parity and i < len(cs) for p in cs[i].pieces]
            merged.append(PLRegion(n, pieces))
            prov.append({"part": "outward", "parity": tag, "index": i + 1})
    colors, grown_all, eps_used = [], [], []
    for region in merged:
        if check and color_clash(m, region) is not None:
            raise HypothesisViolated("shells of equal parity interfere")
        eps, grown, color = swell_color(m, region)
        colors.append(color)
        grown_all.extend(grown)
        eps_used.append(eps)
    # the inward part
    rest = leftover(m, grown_all)
    inward = 0
    if rest:
        box = AmbientBox(tuple(Fraction(-annuli) for _ in range(n)),
                         tuple(Fraction(annuli) for _ in range(n)))
        rep = annulus_rep(box, m.spacing, annuli)
        res = good_color(rep, m, rest, seed=seed, label="inward", check=check)
        inward = res.coloring.color_count
        colors.extend(res.coloring.colors)
        prov.extend({"part": "inward"} | pv for pv in res.coloring.provenance)
    col = Coloring(n, colors, "euclidean", seed, provenance=prov)
    col.stats.update({"radii": radii, "outward_colors": len(merged),
                      "inward_colors": inward, "swell": [str(e) for e in eps_used]})
    return col
