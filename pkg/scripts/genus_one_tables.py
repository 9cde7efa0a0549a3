"""Print the genus-one Poincare series next to the closed form and the mapping space."""

import argparse

from holmaps.specseq import genus1_closed_form, hol_poincare_genus1, map_poincare


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--nmax", type=int, default=3)
    args = p.parse_args()
    for n in range(1, args.nmax + 1):
        for k in range(2, args.kmax + 1):
            hol = hol_poincare_genus1(k, n).dual_series
            closed = genus1_closed_form(k, n)
            mp = map_poincare(1, n, hol.degree)
            flag = "" if hol == closed else "  <- differs from closed form"
            print(f"n={n} k={k}")
            print(f"  computed: {hol}{flag}")
            print(f"  closed:   {closed}")
            print(f"  Map:      {mp}")


if __name__ == "__main__":
    main()
