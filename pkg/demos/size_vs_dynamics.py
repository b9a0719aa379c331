"""A bigger hole can leak slower.  Intuition says more open area means
faster escape; the dynamics says the hole's position matters more.

Part 1 pins two exact counterexamples for the doubling map.  Part 2
constructs holes of measure beyond any requested epsilon whose escape
rate stays below 0.1: pad a slow cylinder with its own preimages, which
inflates the measure without touching the rate (certified exactly).
"""

from fractions import Fraction

from escapelab import (DOUBLING, big_hole_small_rate, code_hole, escape_rate,
                       measure, parse_hole)

PAIRS = (
    ("union:0:1/4;1/2:5/8", "interval:1/4:1/2"),
    ("interval:0:5/16", "interval:1/2:3/4"),
)


def main() -> None:
    for big_text, small_text in PAIRS:
        big, small = parse_hole(big_text), parse_hole(small_text)
        lam_b = measure("lebesgue", big)
        lam_s = measure("lebesgue", small)
        rb = escape_rate(code_hole(DOUBLING, big))
        rs = escape_rate(code_hole(DOUBLING, small))
        print(f"{big_text}: size {lam_b}, rho {rb.rho:.6f}")
        print(f"{small_text}: size {lam_s}, rho {rs.rho:.6f}")
        print(f"  -> larger hole ({lam_b} > {lam_s}), slower escape "
              f"({rb.rho:.4f} < {rs.rho:.4f})\n")

    print("holes of ever larger measure, escape rate pinned below 0.1:")
    for eps in (Fraction(3, 10), Fraction(1, 2), Fraction(7, 10)):
        res = big_hole_small_rate(eps, 0.1)
        print(f"  measure > {eps}: base [{res.base_word}] deepened "
              f"{res.depth} steps -> measure {res.hole_measure} "
              f"= {float(res.hole_measure):.4f}, rho {res.rho:.4f}, "
              f"{len(res.hole.intervals)} intervals, "
              f"rate equality certified: {res.certified_equal}")


if __name__ == "__main__":
    main()
