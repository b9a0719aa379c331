"""Halving the slowest hole does not slow the leak any further.

The minimum escape rate at level N (attained by the cells at 0 and 1) is
exactly the maximum escape rate at level N+1: the level-(N+1) cell 0^N 1
escapes at the same rate as the level-N cell 0^N.  Numerically the gap is
at working precision; algebraically, the rate-determining polynomial of
0^N 1 is (z - 1) times the one of 0^N, so they share every root above 1.
"""

from escapelab import denominator_polynomial, extremes, scan_level
from escapelab.polyroots import poly_divmod


def poly_str(coeffs) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        var = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        mag = "" if abs(c) == 1 and k > 0 else str(abs(c))
        terms.append(("- " if c < 0 else "+ ") + mag + var)
    out = " ".join(terms) if terms else "+ 0"
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def main() -> None:
    print(f"{'N':>3} {'min rho(N)':>14} {'max rho(N+1)':>14} {'gap':>10}")
    for n in range(1, 10):
        slow, _ = extremes(n)
        next_max = max(r.rho for r in scan_level(n + 1))
        print(f"{n:>3} {slow[0].rho:>14.10f} {next_max:>14.10f} "
              f"{next_max - slow[0].rho:>10.2e}")

    print("\nwhy: the rate polynomial of 0^N 1 factors through 0^N")
    for n in (2, 3, 4):
        d_short = denominator_polynomial("0" * n)
        d_long = denominator_polynomial("0" * n + "1")
        q, rem = poly_divmod(d_long, d_short)
        print(f"  N={n}:  D[{'0' * n}1] = ({poly_str(q)}) * D[{'0' * n}]"
              f"  remainder {poly_str(rem) if rem else '0'}")
        assert q == (-1, 1) and not rem


if __name__ == "__main__":
    main()
