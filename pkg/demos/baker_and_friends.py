"""One symbolic engine, four maps.

The doubling map, the tent map, the logistic map and the baker map all
read their escape data off the same pattern machinery: doubling cells use
the plain binary index, tent cells the reflected (Gray) order, logistic
cells inherit the tent words through the conjugacy (with the arcsine
measure replacing length), and a baker rectangle pins a two-sided window
of the itinerary.
"""

from escapelab import (BAKER, DOUBLING, LOGISTIC, SimConfig, TENT, BakerRect,
                       MarkovCylinder, baker_rect_word, code_hole,
                       escape_rate, hole_intervals, measure, poincare_time,
                       survival_mc, survival_series)

LEVEL = 3


def interval_maps() -> None:
    print(f"level-{LEVEL} cells left to right, coding word per map")
    print(f"{'cell':>5} {'doubling':>9} {'tent':>6} {'logistic':>9} "
          f"{'arcsine size':>13}")
    for i in range(1, 2 ** LEVEL + 1):
        hole = MarkovCylinder(LEVEL, i)
        wd = code_hole(DOUBLING, hole).patterns[0]
        wt = code_hole(TENT, hole).patterns[0]
        wl = code_hole(LOGISTIC, hole).patterns[0]
        mu = measure("arcsine", hole, map_spec=LOGISTIC)
        print(f"{i:>5} {str(wd):>9} {str(wt):>6} {str(wl):>9} {str(mu):>13}")
    print("tent and logistic agree cell by cell; the logistic cells have "
          "wildly different lengths but all the same arcsine mass")


def baker() -> None:
    rect = BakerRect(2, 1, 3, 2)
    word = baker_rect_word(rect)
    print(f"\nbaker rectangle {rect}: window word {word}, "
          f"area {measure('lebesgue', rect)}")
    print(f"first return: geometric {poincare_time(BAKER, rect)}, "
          f"symbolic {code_hole(BAKER, rect).recurrence_time()}")
    report = escape_rate(code_hole(BAKER, rect))
    print(f"escape rate {report.rho:.6f} (theta {report.theta:.6f})")

    cfg = SimConfig(samples=200_000, n_max=16, seed=2)
    est = survival_mc(BAKER, rect, cfg)
    exact = survival_series(code_hole(BAKER, rect), cfg.n_max)
    z = est.max_z_against(exact.fractions())
    print(f"2-D simulation, {cfg.samples} samples: worst |z| = {z:.2f} "
          f"against the exact series")


def main() -> None:
    interval_maps()
    baker()
    print("\ntent cell [1/2, 3/4): intervals",
          hole_intervals(TENT, MarkovCylinder(2, 3)))


if __name__ == "__main__":
    main()
