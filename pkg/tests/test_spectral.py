import math
from fractions import Fraction

import pytest

from escapelab.avoid import PatternSet, count_profile
from escapelab.polyroots import compare_roots
from escapelab.spectral import (EscapeReport, asymptotic_escape,
                                compare_holes, denominator_polynomial,
                                escape_rate, extremes, local_escape_ratio,
                                matrix_bracket, reduced_denominator,
                                rho_equal_certificate, rho_from_theta,
                                scan_level, theta, theta_bracket,
                                theta_estimate)
from escapelab.words import Word, all_words, recurrence_time

PHI = (1 + 5 ** 0.5) / 2


def test_denominator_polynomial():
    # word 00: 1 + (z-2)(z+1) = z^2 - z - 1
    assert denominator_polynomial("00") == (-1, -1, 1)
    # the reduction never finds a common factor; same polynomial back
    assert reduced_denominator("00") == (-1, -1, 1)
    assert reduced_denominator("10100101") == denominator_polynomial("10100101")


def test_theta_known_values():
    assert abs(theta("00") - PHI) < 1e-12
    assert abs(theta("11") - PHI) < 1e-12
    assert theta("01") == pytest.approx(1.0, abs=1e-12)
    assert abs(theta("0") - 1.0) < 1e-12
    # tribonacci constant for 000
    assert abs(theta("000") - 1.8392867552141612) < 1e-12


def test_rho_range_and_complement_symmetry():
    for length in range(1, 9):
        for w in all_words(length):
            r = rho_from_theta(theta_bracket(w).value)
            assert 0 < r <= math.log(2) + 1e-15
            assert denominator_polynomial(w) == denominator_polynomial(w.complement())


def test_engines_agree_on_defective_case():
    # avoid-01 counts grow linearly: the transition matrix has a repeated
    # eigenvalue at 1, which power iteration cannot resolve but the exact
    # characteristic polynomial can
    rb = theta_bracket("01")
    mb = matrix_bracket(PatternSet.of("01"))
    assert compare_roots(rb, mb) == 0
    assert mb.value == pytest.approx(1.0, abs=1e-13)


def test_theta_methods_and_degenerate():
    ps = PatternSet.from_strings("00,0100")
    assert abs(theta(ps, method="matrix") - PHI) < 1e-12
    with pytest.raises(ValueError):
        theta(PatternSet.of("0", "1"))  # hole covers everything


def test_theta_estimate_matches_exact():
    ps = PatternSet.from_strings("000,111")
    est, delta = theta_estimate(ps)
    assert delta < 1e-10
    assert abs(est - theta(ps, method="matrix")) < 1e-8


def test_escape_report_fields():
    rep = escape_rate("00")
    assert isinstance(rep, EscapeReport)
    assert rep.engine == "root"
    assert rep.tau == 1 and rep.corr_number == 3
    assert abs(rep.rho - (math.log(2) - math.log(PHI))) < 1e-12
    d = rep.as_dict()
    assert d["patterns"] == "{00}" and 0 < d["tolerance"] < 1e-12


def test_compare_holes_ordering():
    cmp = compare_holes("00", "01")
    assert cmp.rho_sign == 1  # rho(01) > rho(00)
    assert cmp.count_threshold == 3
    assert cmp.survival_crossover == 1
    same = compare_holes("00", "11")
    assert same.rho_sign == 0
    assert same.count_threshold is None and same.survival_crossover is None


def test_asymptotic_escape():
    assert asymptotic_escape("00") == pytest.approx(1 / 6)
    assert asymptotic_escape("01") == pytest.approx(1 / 4)
    # long words: rho and its closed-form approximation pinch together
    w = "0" * 12
    rho = rho_from_theta(theta_bracket(w).value)
    assert abs(rho - asymptotic_escape(w)) < 2e-6


def test_scan_level_rows():
    rows = scan_level(3)
    assert len(rows) == 8
    assert [r.word for r in rows] == ["000", "001", "010", "011",
                                      "100", "101", "110", "111"]
    for r in rows:
        assert r.tau == recurrence_time(r.word)
        assert abs(r.rho - rho_from_theta(r.theta)) < 1e-14


def test_extremes_structure():
    # slowest escape at the two fixed-point holes, fastest at full
    # recurrence time; the second hole always achieves the maximum
    for level in range(2, 9):
        slow, fast = extremes(level)
        assert sorted(r.index for r in slow) == [1, 2 ** level]
        assert all(r.tau == level for r in fast)
        assert 2 in {r.index for r in fast}


def test_local_escape_ratio_periodic_points():
    r = local_escape_ratio(Fraction(0), 12)
    assert r.word == "0" * 12
    assert r.ratio == pytest.approx(0.5, abs=1e-2)
    r = local_escape_ratio(Fraction(1, 3), 12)
    assert r.ratio == pytest.approx(0.75, abs=1e-2)
    # period-3 point 1/7 = 0.001001...: ratio tends to 1 - 2^-3
    r = local_escape_ratio(Fraction(1, 7), 15)
    assert r.ratio == pytest.approx(0.875, abs=1e-2)


def test_two_periodic_points_fixed_size():
    # every hole of size 2^-12 with the fixed point 0 strictly inside
    # escapes slower than every one with the period-2 point 1/3 inside
    holes_fixed = [PatternSet.of("1" * 13, "0" * 13)]
    for j in (-3, -2, -1):
        words = [format((j + k) % 2 ** 14, "014b") for k in range(4)]
        holes_fixed.append(PatternSet.of(*words))
    holes_period2 = []
    for level, width in ((13, 2), (14, 4)):
        base = (Fraction(1, 3) * 2 ** level).__floor__()
        for j in range(base - width + 1, base + 1):
            if not Fraction(j, 2 ** level) < Fraction(1, 3) \
               < Fraction(j + width, 2 ** level):
                continue
            words = [format(j + k, f"0{level}b") for k in range(width)]
            holes_period2.append(PatternSet.of(*words))
    assert len(holes_period2) >= 5
    horizon = 4000  # far enough for the ~6e-5 rate gap to dominate
    fixed = []
    for a in holes_fixed:
        ta, da = theta_estimate(a)
        fixed.append((ta, da, count_profile(a, horizon)[horizon]))
    period2 = []
    for b in holes_period2:
        tb, db = theta_estimate(b)
        period2.append((tb, db, count_profile(b, horizon)[horizon]))
    for ta, da, ca in fixed:
        for tb, db, cb in period2:
            # rho(a) < rho(b) means theta(a) > theta(b); the gap dwarfs
            # the iteration tolerance by several orders of magnitude
            assert ta - tb > 1000 * (da + db)
            # same denominator 2^horizon: more survivors around the fixed point
            assert ca > cb


def test_rho_equal_certificate():
    base = PatternSet.of("00")
    # the one-step-deeper hole keeps the rate: {00} union T^-1{00}
    deeper = PatternSet.from_strings("000,001,100")
    assert rho_equal_certificate(base, deeper)
    assert not rho_equal_certificate(base, PatternSet.of("01"))


def test_scan_parallel_env(monkeypatch):
    monkeypatch.setenv("ESCAPELAB_THREADS", "2")
    rows = scan_level(6)
    monkeypatch.delenv("ESCAPELAB_THREADS")
    assert rows == scan_level(6)
