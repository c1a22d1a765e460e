"""Exact verification of colorings and brute-force baselines."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .errors import LoopDetected, TooLarge
from .geometry import PLRegion, bboxes_meet, covered_by, pullback, to_ibox
from .lp import linf_distance
from .maps import SampledMap, clip_to_domain


@dataclass
class VerificationReport:
    colors: list
    cover_ok: bool
    uncovered: tuple = None
    margin: Fraction = None

    @property
    def valid(self):
        return self.cover_ok and all(c["status"] == "valid" for c in self.colors)

    def to_json(self):
        out = {
            "valid": self.valid,
            "colors": [
                {"name": c["name"], "status": c["status"]}
                | ({"witness": [str(x) for x in c["witness"]],
                    "image_of": [str(x) for x in c["source"]]} if c["status"] != "valid" else {})
                for c in self.colors
            ],
            "cover": "certified" if self.cover_ok else "uncovered",
        }
        if self.uncovered is not None:
            out["uncovered_witness"] = [str(x) for x in self.uncovered]
        if self.margin is not None:
            out["margin"] = str(self.margin)
        return out


def _bbox_gap(a, b):
    gap = Fraction(0)
    for i in range(len(a[0])):
        g = max(b[0][i] - a[1][i], a[0][i] - b[1][i], 0)
        gap = max(gap, g)
    return gap


def color_clash(m: SampledMap, region: PLRegion, clipped=None):
    """``None`` if ``f(region ∩ X)`` misses ``region``; otherwise
    ``(x, f(x))`` with both ``x`` and ``f(x)`` in the region."""
    if clipped is None:
        clipped = [c for p in region.pieces for c in clip_to_domain(m, p, check=False)]
    boxes = [q.ibox() for q in region.pieces]
    for host, p in clipped:
        sp = m.pieces[host]
        imgs = [sp(v) for v in p.vertices]
        n = len(imgs[0])
        ib = to_ibox((tuple(min(v[i] for v in imgs) for i in range(n)),
                      tuple(max(v[i] for v in imgs) for i in range(n))))
        for q, qb in zip(region.pieces, boxes):
            if not bboxes_meet(ib, qb):
                continue
            hs = pullback(q.halfspaces, sp.g, sp.t)
            if hs is None:
                continue
            r = p.intersect_halfspaces(hs)
            if r is not None:
                x = min(r.vertices)
                return x, sp(x)
    return None


def color_margin(m, region, clipped, best=None):
    """L-infinity distance between the color and its image (pruned by ``best``)."""
    from .geometry import affine_image
    for host, p in clipped:
        sp = m.pieces[host]
        img = affine_image(p, sp.g, sp.t)
        ib = img.bbox()
        for q in region.pieces:
            qb = q.bbox()
            if best is not None and _bbox_gap(ib, qb) >= best:
                continue
            d = linf_distance(img, q)
            if best is None or d < best:
                best = d
    return best


def verify_coloring(c, m: SampledMap, margin=True) -> VerificationReport:
    """Exact check that every color misses its image and the colors cover X."""
    statuses = []
    best = None
    for name, region in zip(c.names, c.colors):
        clipped = [cl for p in region.pieces for cl in clip_to_domain(m, p, check=False)]
        clash = color_clash(m, region, clipped)
        if clash is None:
            statuses.append({"name": name, "status": "valid"})
            if margin and clipped:
                best = color_margin(m, region, clipped, best)
        else:
            x, y = clash
            statuses.append({"name": name, "status": "violation", "witness": y, "source": x})
    pieces = [p for region in c.colors for p in region.pieces]
    boxes = [p.ibox() for p in pieces]
    cover_ok, wit = True, None
    for sp in m.pieces:
        near = [p for p, b in zip(pieces, boxes) if bboxes_meet(b, sp.ibox)]
        ok, w = covered_by(sp.poly, near)
        if not ok:
            cover_ok, wit = False, w
            break
    return VerificationReport(statuses, cover_ok, wit, best if margin else None)


# conflict graphs ----------------------------------------------------------------


@dataclass
class ConflictGraph:
    """Nodes are Kuhn simplices of a dyadic refinement of the domain."""

    map: SampledMap
    depth: int
    edges: set
    loops: list = field(default_factory=list)

    @property
    def nodes(self):
        return list(range(len(self.map.pieces)))

    def __len__(self):
        return len(self.map.pieces)

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(sorted(self.edges))
        return g

    def adjacency_text(self) -> str:
        adj = {u: [] for u in self.nodes}
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        lines = [f"# nodes {len(self)} edges {len(self.edges)} loops {len(self.loops)}"]
        for u in self.nodes:
            lines.append(f"{u}: " + " ".join(str(v) for v in sorted(adj[u])))
        return "\n".join(lines) + "\n"


def _meets_image(su, sv):
    """Does ``f(u)`` meet ``v`` (u given by its simplex piece)?"""
    if not bboxes_meet(su.image_ibox, sv.ibox):
        return False
    hs = pullback(sv.poly.halfspaces, su.g, su.t)
    if hs is None:
        return False
    return su.poly.intersect_halfspaces(hs) is not None


def build_conflict_graph(m: SampledMap, depth=0, allow_loops=False) -> ConflictGraph:
    mm = m.refined(depth)
    ps = mm.pieces
    loops = [k for k, sp in enumerate(ps) if _meets_image(sp, sp)]
    if loops and not allow_loops:
        raise LoopDetected(f"{len(loops)} simplices meet their own image at depth {depth}; "
                           f"try depth {depth + 1}", loops=loops, depth=depth)
    edges = set()
    for u in range(len(ps)):
        for v in range(u + 1, len(ps)):
            if _meets_image(ps[u], ps[v]) or _meets_image(ps[v], ps[u]):
                edges.add((u, v))
    return ConflictGraph(mm, depth, edges, loops)


# chromatic numbers ----------------------------------------------------------------


@dataclass
class OracleResult:
    count: int
    partition: list
    exact: bool
    lower_bound: int


def exact_coloring(n, edges):
    """Chromatic number by DSATUR branch and bound; returns (k, colors)."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    if n == 0:
        return 0, []
    greedy = nx.greedy_color(_graph(n, edges), strategy="DSATUR")
    best = [max(greedy.values()) + 1, [greedy[u] for u in range(n)]]
    clique = _greedy_clique(n, adj)
    colors = [-1] * n

    def pick():
        bestu, key = None, None
        for u in range(n):
            if colors[u] >= 0:
                continue
            sat = len({colors[v] for v in adj[u] if colors[v] >= 0})
            k = (sat, len(adj[u]), -u)
            if key is None or k > key:
                bestu, key = u, k
        return bestu

    def search(used, done):
        if used >= best[0]:
            return
        if done == n:
            best[0] = used
            best[1] = list(colors)
            return
        u = pick()
        forbidden = {colors[v] for v in adj[u] if colors[v] >= 0}
        for c in range(min(used + 1, best[0] - 1)):
            if c in forbidden:
                continue
            colors[u] = c
            search(max(used, c + 1), done + 1)
            colors[u] = -1
            if best[0] <= len(clique):
                return

    # seed the clique with fixed colors to break symmetry
    for c, u in enumerate(clique):
        colors[u] = c
    search(len(clique), len(clique))
    return best[0], best[1]


def _graph(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


def _greedy_clique(n, adj):
    order = sorted(range(n), key=lambda u: (-len(adj[u]), u))
    best = []
    for start in order:
        cl = [start]
        for v in order:
            if v != start and all(v in adj[w] for w in cl):
                cl.append(v)
        if len(cl) > len(best):
            best = cl
    return best


def _partition(colors):
    k = max(colors) + 1 if colors else 0
    return [[u for u, c in enumerate(colors) if c == j] for j in range(k)]


def oracle_min_colors(g: ConflictGraph, limit=40, mode="auto") -> OracleResult:
    """Minimum number of independent classes covering the conflict graph.

    Exact for at most ``limit`` nodes; larger graphs get a DSATUR upper
    bound (``mode="exact"`` refuses them instead)."""
    if g.loops:
        raise LoopDetected("conflict graph has loops", loops=g.loops, depth=g.depth)
    n = len(g)
    edges = sorted(g.edges)
    if n <= limit:
        k, colors = exact_coloring(n, edges)
        return OracleResult(k, _partition(colors), True, k)
    if mode == "exact":
        raise TooLarge(f"{n} nodes exceed the exact limit {limit}")
    gr = g.graph()
    greedy = nx.greedy_color(gr, strategy="DSATUR")
    colors = [greedy[u] for u in range(n)]
    adj = [set(gr.neighbors(u)) for u in range(n)]
    lb = max(len(_greedy_clique(n, adj)), 1 if n else 0)
    if edges and not nx.is_bipartite(gr):
        lb = max(lb, 3)
    k = max(colors) + 1 if colors else 0
    return OracleResult(k, _partition(colors), lb == k, lb)


def partition_coloring(g: ConflictGraph, partition):
    from .coloring import Coloring
    ps = g.map.pieces
    colors = [PLRegion(g.map.dimension, [ps[u].poly for u in cls]) for cls in partition]
    return Coloring(g.map.dimension, colors, "oracle",
                    provenance=[{"nodes": list(cls)} for cls in partition])
