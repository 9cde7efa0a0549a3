"""Betti tables of V_g over Lambda_g from the resolution, the closed form and the Koszul complex."""

import argparse
import time

from holmaps.extor import ext_vg_closed, minimal_resolution, mn_dims
from holmaps.specseq import vg_koszul_homology


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--gmax", type=int, default=3)
    p.add_argument("--max-l", type=int, default=4)
    args = p.parse_args()
    for g in range(1, args.gmax + 1):
        max_l = min(args.max_l, 5)
        start = time.perf_counter()
        res = minimal_resolution(g, max_l)
        elapsed = time.perf_counter() - start
        closed = ext_vg_closed(g, max_l)
        kos = vg_koszul_homology(g, max_l)
        print(f"g={g} (resolution {elapsed:.2f}s)")
        for (l, m), b in res.entries():
            print(f"  ({l},{m}): resolution {b}  closed {closed[(l, m)]}  koszul {kos[(l, m)]}")
    for n in range(1, 5):
        m = mn_dims(n, 2 * n + 8, validate=n <= 3)
        print(f"M_{n}: c={m.c_n} dims {dict(sorted(m.dims.items()))}")


if __name__ == "__main__":
    main()
