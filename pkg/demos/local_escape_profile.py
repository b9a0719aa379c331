"""Shrink a hole onto a point and watch rate/size converge.

For the cylinder of depth N around a point x, the ratio rho / measure
tends to 1 - 2^-p when x is p-periodic under doubling and to 1 at a
non-periodic point: periodic points hold on to nearby mass.  The second
table checks the closed form rho ~ 1/(2 f_w(2)): the raw residual falls
by a factor ~4 per level, so after scaling by 4^N only a slow drift is
left over.
"""

import argparse

from escapelab import asymptotic_escape, local_escape_ratio


def profile(x, label: str, levels) -> None:
    print(f"\nhole shrinking onto x = {label}")
    print(f"{'N':>3} {'word':>22} {'rho':>12} {'rho/size':>10}")
    for n in levels:
        r = local_escape_ratio(x, n)
        print(f"{n:>3} {r.word:>22} {r.rho:>12.8f} {r.ratio:>10.6f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-level", type=int, default=16)
    args = ap.parse_args()

    levels = range(4, args.max_level + 1, 2)
    profile(0, "0 (fixed point, expect 1/2)", levels)
    profile("1/3", "1/3 (2-cycle, expect 3/4)", levels)
    profile("sqrt2-1", "sqrt(2)-1 (not periodic, expect 1)", levels)

    print("\nclosed-form residual |rho - 1/(2 f_w(2))| scaled by 4^N"
          "\n(raw residuals span four orders of magnitude here)")
    print(f"{'N':>3} {'x=0':>10} {'x=1/3':>10} {'x=sqrt2-1':>12}")
    for n in range(8, 15):
        cells = []
        for x in (0, "1/3", "sqrt2-1"):
            r = local_escape_ratio(x, n)
            cells.append(abs(r.rho - asymptotic_escape(r.word)) * 4 ** n)
        print(f"{n:>3} {cells[0]:>10.4f} {cells[1]:>10.4f} {cells[2]:>12.4f}")


if __name__ == "__main__":
    main()
