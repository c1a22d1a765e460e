"""JSON documents for colorings and reports; atomic, deterministic writes."""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction

from .errors import InputError
from .geometry import HalfSpace, PLRegion, RationalPolytope, rational


def _plain(x):
    """JSON-safe copy with rationals as strings and tuples as lists."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _piece_json(p: RationalPolytope):
    hs = sorted((h.normal, h.offset) for h in p.halfspaces)
    return {"halfspaces": [{"normal": [str(a) for a in nm], "offset": str(off)} for nm, off in hs]}


def coloring_to_json(c, margin=None) -> dict:
    stats = {"color_count": c.color_count, "piece_count": c.piece_count}
    if margin is not None:
        stats["margin"] = str(margin)
    extra = {k: v for k, v in c.stats.items() if k not in stats}
    return {
        "method": c.method,
        "seed": c.seed,
        "dimension": c.dim,
        "colors": [
            {"name": name, "pieces": [_piece_json(p) for p in region.pieces],
             "provenance": _plain(prov)}
            for name, region, prov in zip(c.names, c.colors, c.provenance)
        ],
        "stats": stats | {"construction": _plain(extra)},
    }


def coloring_from_json(doc):
    from .coloring import Coloring
    try:
        dim = doc.get("dimension")
        colors, names, prov = [], [], []
        for col in doc["colors"]:
            pieces = []
            for p in col["pieces"]:
                hs = [HalfSpace.make([rational(a) for a in h["normal"]], rational(h["offset"]))
                      for h in p["halfspaces"]]
                if dim is None:
                    dim = len(hs[0].normal)
                poly = RationalPolytope(dim, hs)
                if poly.is_empty():
                    raise InputError(f"empty piece in color {col.get('name')}")
                pieces.append(poly)
            colors.append(PLRegion(dim, pieces))
            names.append(col.get("name", f"F{len(names) + 1}"))
            prov.append(col.get("provenance", {}))
    except (KeyError, TypeError, IndexError) as e:
        raise InputError(f"malformed coloring document: {e!r}") from None
    return Coloring(dim or 0, colors, doc.get("method", "loaded"), doc.get("seed", 0),
                    names, prov)


def dumps(doc) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def write_atomic(path, text):
    """Write through a temporary file in the same directory, then rename."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
