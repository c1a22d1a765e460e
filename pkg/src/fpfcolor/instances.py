"""Seeded random instances for property suites and experiments."""

from __future__ import annotations

import random
from fractions import Fraction

from .complex import SimplicialComplex, kuhn_triangulate
from .geometry import PLRegion, RationalPolytope


def segment_complex(length, step=1):
    step = Fraction(step)
    count = int(Fraction(length) / step)
    return SimplicialComplex.from_point_lists([[(k * step,), ((k + 1) * step,)] for k in range(count)])


def square_complex(side, cells=None):
    cells = cells or side
    h = Fraction(side, cells)
    simp = []
    for i in range(cells):
        for j in range(cells):
            simp.extend(s.vertices for s in kuhn_triangulate((i * h, j * h), h))
    return SimplicialComplex.from_point_lists(simp)


def _random_box(rng, n, side, den, max_width):
    lo, hi = [], []
    for _ in range(n):
        w = rng.randint(0, max_width)
        a = rng.randint(0, side * den - w)
        lo.append(Fraction(a, den))
        hi.append(Fraction(a + w, den))
    return RationalPolytope.box(lo, hi)


def random_enlarge_instance(seed, n):
    """``(complex, pairs)`` with n+1 disjoint pairs of random box unions
    (boxes may be degenerate) inside ``[0,4]`` (n=1) or ``[0,2]^2`` (n=2)."""
    rng = random.Random(f"enlarge:{n}:{seed}")
    side = 4 if n == 1 else 2
    den = 4
    k = segment_complex(side) if n == 1 else square_complex(side)
    pairs = []
    while len(pairs) < n + 1:
        c = [_random_box(rng, n, side, den, 3) for _ in range(rng.randint(0, 2))]
        d = [_random_box(rng, n, side, den, 3) for _ in range(rng.randint(0, 2))]
        cr, dr = PLRegion(n, c), PLRegion(n, d)
        if cr.meets(dr)[0]:
            continue
        pairs.append((cr, dr))
    return k, pairs
