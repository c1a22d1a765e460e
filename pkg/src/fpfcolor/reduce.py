"""Validity-preserving color-count reduction by local search."""

from __future__ import annotations

from .coloring import Coloring
from .geometry import PLRegion
from .maps import SampledMap, clip_to_domain
from .verify import color_clash


class _Clipped:
    """Colors with their pieces clipped to X, cached."""

    def __init__(self, m, colors):
        self.m = m
        self.colors = list(colors)
        self.clip = [self._clip(c) for c in self.colors]

    def _clip(self, region):
        return [cl for p in region.pieces for cl in clip_to_domain(self.m, p, check=False)]

    def compatible(self, i, region, clipped):
        """Does color ``i`` together with ``region`` still miss its image?"""
        own = self.colors[i]
        return (color_clash(self.m, region, self.clip[i]) is None
                and color_clash(self.m, own, clipped) is None)


def reduce_colors(c: Coloring, m: SampledMap, budget=1000) -> Coloring:
    """Merge colors pairwise, then try to dissolve whole colors piece by piece
    into the others; every accepted step is checked exactly.  ``budget``
    caps the number of checks."""
    if budget <= 0 or len(c.colors) <= 1:
        return c
    work = _Clipped(m, c.colors)
    prov = [dict(p) for p in c.provenance]
    spent = 0
    merged = True
    while merged and spent < budget:
        merged = False
        order = sorted(range(len(work.colors)), key=lambda k: (len(work.colors[k]), k))
        for a in order:
            for b in range(len(work.colors)):
                if b == a or spent >= budget:
                    continue
                spent += 1
                if work.compatible(b, work.colors[a], work.clip[a]):
                    _absorb(work, prov, b, a)
                    merged = True
                    break
            if merged:
                break
    # dissolve: every piece of a color moves to some other color
    dissolved = True
    while dissolved and spent < budget and len(work.colors) > 1:
        dissolved = False
        order = sorted(range(len(work.colors)), key=lambda k: (len(work.colors[k]), k))
        for a in order:
            plan, ok = [], True
            trial = _Clipped(m, work.colors)
            for piece in work.colors[a].pieces:
                single = PLRegion(m.dimension, [piece])
                sclip = trial._clip(single)
                dest = None
                for b in range(len(trial.colors)):
                    if b == a or spent >= budget:
                        continue
                    spent += 1
                    if (color_clash(m, single, sclip) is None
                            and trial.compatible(b, single, sclip)):
                        dest = b
                        break
                if dest is None:
                    ok = False
                    break
                plan.append(dest)
                trial.colors[dest] = trial.colors[dest].union(single)
                trial.clip[dest] = trial.clip[dest] + sclip
            if ok:
                for dest in sorted(set(plan)):
                    prov[dest].setdefault("absorbed", []).append(dict(prov[a]))
                work = trial
                del work.colors[a], work.clip[a], prov[a]
                dissolved = True
                break
    out = Coloring(c.dim, work.colors, "reduced", c.seed, provenance=prov,
                   stats=dict(c.stats) | {"reduced_from": len(c.colors), "checks": spent})
    return out


def _absorb(work, prov, keep, gone):
    work.colors[keep] = work.colors[keep].union(work.colors[gone])
    work.clip[keep] = work.clip[keep] + work.clip[gone]
    prov[keep].setdefault("absorbed", []).append(dict(prov[gone]))
    del work.colors[gone], work.clip[gone], prov[gone]
