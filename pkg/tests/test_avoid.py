from fractions import Fraction

import pytest

from escapelab.avoid import (AvoidanceAutomaton, PatternSet,
                             brute_force_count, brute_force_profile,
                             count_avoiding, count_profile,
                             dominance_threshold, gf_coefficients,
                             survival_series)
from escapelab.words import all_words


def test_counts_avoiding_00_are_fibonacci():
    # 1, 2, 3, 5, 8, ... shifted Fibonacci
    assert count_profile(PatternSet.of("00"), 10) == \
        [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]


def test_counts_avoiding_01_are_linear():
    # words with no 01 factor are 1...10...0
    assert count_profile(PatternSet.of("01"), 8) == list(range(1, 10))


def test_counts_avoiding_0_are_ones():
    assert count_profile(PatternSet.of("0"), 5) == [1] * 6


def test_single_word_three_routes_agree():
    for length in range(1, 5):
        for w in all_words(length):
            ps = PatternSet.of(w)
            a = count_profile(ps, 12)
            assert a == brute_force_profile(ps, 12)
            assert a == gf_coefficients(w, 12)


def test_multi_pattern_oracle():
    for text in ("0,11", "00,11", "01,10", "00,010", "000,111", "0,10,110"):
        ps = PatternSet.from_strings(text)
        assert count_profile(ps, 12) == brute_force_profile(ps, 12)


def test_mixed_lengths_normalize():
    # {0, 11} normalized to length 2 forbids {00, 01, 11}
    ps = PatternSet.of("0", "11")
    assert ps.length == 2
    assert sorted(map(str, ps.patterns)) == ["00", "01", "11"]
    # survivors after the first step: only "10" repeated... which dies too
    assert count_avoiding(ps, 4) == brute_force_count(ps, 4)


def test_measure():
    assert PatternSet.of("00").measure == Fraction(1, 4)
    assert PatternSet.of("0", "11").measure == Fraction(3, 4)
    assert PatternSet.from_strings("00,0100").measure == Fraction(5, 16)


def test_pattern_set_recurrence_time():
    assert PatternSet.of("00").recurrence_time() == 1
    assert PatternSet.of("01").recurrence_time() == 2
    assert PatternSet.of("10100101").recurrence_time() == 5
    # union: any suffix-prefix match across the set counts
    assert PatternSet.from_strings("000,001,100").recurrence_time() == 1


def test_automaton_shape():
    aut = AvoidanceAutomaton(PatternSet.of("00"))
    assert aut.size == 2
    mat = aut.transition_matrix()
    assert all(sum(row) <= 2 for row in mat)
    assert all(v >= 0 for row in mat for v in row)
    # covering set: only the root survives and every step is dead
    full = AvoidanceAutomaton(PatternSet.of("0", "1"))
    assert full.size == 1
    assert full.transition_matrix() == [[0]]
    assert full.count_profile(3) == [1, 0, 0, 0]


def test_survival_monotone_under_bigger_holes():
    # a bigger hole kills survivors at least as fast, at every horizon
    sa = survival_series(PatternSet.of("00"), 20).fractions()
    sb = survival_series(PatternSet.from_strings("00,0110"), 20).fractions()
    assert all(y <= x for x, y in zip(sa, sb))
    assert sb[4] < sa[4]
    # widening 00's hole with 0100 squeezes the survival between two
    # shifts of the original series (every 0100 occurrence grows a 00 two
    # steps later), which is why both holes share one escape rate
    sa = survival_series(PatternSet.of("00"), 22).fractions()
    sc = survival_series(PatternSet.from_strings("00,0100"), 20).fractions()
    assert sc[0] == Fraction(11, 16)
    for n in range(20):
        assert sa[n + 2] <= sc[n] <= sa[n]


def test_survival_series_nonincreasing():
    for text in ("00", "010", "00,11", "0110"):
        s = survival_series(PatternSet.from_strings(text), 30)
        fr = s.fractions()
        assert fr[0] == 1 - s.patterns.measure
        assert all(Fraction(0) <= f <= Fraction(1) for f in fr)
        assert all(fr[i + 1] <= fr[i] for i in range(len(fr) - 1))


def test_survival_rows_shape():
    s = survival_series(PatternSet.of("00"), 3)
    rows = list(s.rows())
    assert rows[0] == (0, 3, 3, 4, 0.75)
    assert rows[2][0] == 2 and rows[2][2] == 1 and rows[2][3] == 2


def test_growth_sandwich():
    # c_w(n) / theta^n stays within fixed positive bounds on [20, 64];
    # the only linear-drift cases are the alternating length-2 words
    from escapelab.spectral import theta_bracket
    for length in range(1, 11):
        for w in all_words(length):
            theta = theta_bracket(w).value
            prof = count_profile(PatternSet.of(w), 64)
            ratios = [prof[n] / theta ** n for n in range(20, 65)]
            assert min(ratios) > 0
            assert max(ratios) / min(ratios) < 4


def test_dominance_threshold_values():
    assert dominance_threshold("00", "01") == 3
    # corr(0101)=1010 vs corr(0011)=1000: first difference at the third bit
    assert dominance_threshold("0101", "0011") == 6
    assert dominance_threshold("000", "000") is None
    with pytest.raises(ValueError):
        dominance_threshold("01", "00")
    with pytest.raises(ValueError):
        dominance_threshold("00", "010")


def test_dominance_kicks_in():
    n0 = dominance_threshold("0101", "0011")
    cw = count_profile(PatternSet.of("0101"), n0 + 30)
    cu = count_profile(PatternSet.of("0011"), n0 + 30)
    assert all(cw[n] > cu[n] for n in range(n0, n0 + 31))


def test_brute_force_guard():
    with pytest.raises(ValueError):
        brute_force_count(PatternSet.of("00"), 40)
