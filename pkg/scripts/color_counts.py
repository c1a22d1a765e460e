"""Constructed and reduced color counts with timings, one line per instance."""

import argparse
import time

from fpfcolor.coloring import compact_color
from fpfcolor.demos import make_demo
from fpfcolor.euclidean import euclidean_color
from fpfcolor.maps import certify_fpf, map_from_function
from fpfcolor.reduce import reduce_colors
from fpfcolor.verify import verify_coloring


def split_doubling():
    return map_from_function(lambda x: (2 * x[0],), 1, [(-4,), (-3,), (-2,), (1,), (2,), (3,)])


def instances(big):
    yield "translation n=1 [0,4]", make_demo("translation", cells=4), "compact", None
    yield "translation n=1 [-3,3]", map_from_function(lambda x: (x[0] + 1,), 1, [(i,) for i in range(-3, 3)]), "euclidean", 3
    yield "doubling split K=4", split_doubling(), "euclidean", 4
    if big:
        yield "translation n=2 [0,3]^2", make_demo("translation", n=2, cells=3), "compact", None


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--big", action="store_true", help="include the two-dimensional run (about a minute)")
    ap.add_argument("--budget", type=int, default=500)
    args = ap.parse_args(argv)
    print("instance,method,colors,reduced,seconds,valid")
    for name, m, method, k in instances(args.big):
        cert = certify_fpf(m)
        t = time.perf_counter()
        if method == "compact":
            c = compact_color(m, cert, check=m.dimension == 1)
        else:
            c = euclidean_color(m, cert, k)
        dt = time.perf_counter() - t
        r = reduce_colors(c, cert.map, args.budget)
        ok = verify_coloring(r, cert.map).valid
        print(f"{name},{method},{c.color_count},{r.color_count},{dt:.2f},{ok}")


if __name__ == "__main__":
    main()
