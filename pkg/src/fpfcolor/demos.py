"""Generators for the standard demo instances."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import InputError
from .maps import SampledMap, dump_map, lift_cylinder, map_from_function

DEMOS = ("translation", "antipodal", "doubling", "lifted", "identity")


def translation(n=1, cells=4, spacing=1):
    """``f(x) = x + e_1`` on ``[0, cells]^n`` (cells counted in grid units)."""
    box = [tuple(c) for c in itertools.product(range(cells), repeat=n)]
    return map_from_function(lambda x: (x[0] + 1,) + tuple(x[1:]), n, box, spacing)


def _ring_cells(n, r_in, r_out):
    out = []
    for c in itertools.product(range(-r_out, r_out), repeat=n):
        # every point of the cell keeps sup-norm at least r_in
        if max(min(abs(a), abs(a + 1)) for a in c) >= r_in:
            out.append(c)
    return out


def antipodal(n=2, r_in=1, r_out=3):
    """``f(x) = -x`` on the cube annulus ``r_in <= |x|_inf <= r_out``."""
    return map_from_function(lambda x: tuple(-a for a in x), n, _ring_cells(n, r_in, r_out))


def doubling(n=1, r_out=4, r_in=1):
    """``f(x) = 2x`` on the cube annulus ``r_in <= |x|_inf <= r_out``."""
    return map_from_function(lambda x: tuple(2 * a for a in x), n, _ring_cells(n, r_in, r_out))


def identity(n=1, cells=1):
    box = [tuple(c) for c in itertools.product(range(cells), repeat=n)]
    return map_from_function(lambda x: tuple(x), n, box)


def lifted(n=1, cells=1, pad=2, layers=2):
    """Cylinder lift of the translation on ``[0, cells]^n`` inside the box
    ``[0, cells + pad]^n``; the potential is the lattice sup-distance to X."""
    base = translation(n, cells)
    big = [tuple(c) for c in itertools.product(range(cells + pad), repeat=n)]
    ext = map_from_function(lambda x: (x[0] + 1,) + tuple(x[1:]), n, big)
    phi = {}
    for v in ext.vertices():
        phi[v] = Fraction(max(max(a - cells, 0) for a in v))
    top = max(phi.values())
    return lift_cylinder(base, ext, phi, top + layers * ext.spacing, layers)


def make_demo(name, **params) -> SampledMap:
    if name not in DEMOS:
        raise InputError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")
    params = {k: v for k, v in params.items() if v is not None}
    fn = globals()[name]
    try:
        return fn(**params)
    except TypeError as e:
        raise InputError(f"bad parameters for demo {name}: {e}") from None


def demo_spec(name, **params) -> dict:
    return dump_map(make_demo(name, **params))
