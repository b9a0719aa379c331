import math
from fractions import Fraction

import numpy as np
import pytest

from escapelab.avoid import PatternSet, survival_series
from escapelab.maps import BAKER, DOUBLING, TENT, BakerRect, MapSpec, parse_hole
from escapelab.simulate import (SimConfig, escape_rate_fit, pattern_mc,
                                rotation_escape, survival_mc)

F = Fraction


def test_pattern_mc_deterministic():
    cfg = SimConfig(samples=20000, n_max=25, seed=42)
    a = pattern_mc(PatternSet.of("00"), cfg)
    b = pattern_mc(PatternSet.of("00"), cfg)
    assert a.survivors == b.survivors
    c = pattern_mc(PatternSet.of("00"), SimConfig(samples=20000, n_max=25, seed=43))
    assert c.survivors != a.survivors


def test_pattern_mc_tracks_exact():
    cfg = SimConfig(samples=200000, n_max=25, seed=5)
    est = pattern_mc(PatternSet.of("00"), cfg)
    exact = survival_series(PatternSet.of("00"), 25).fractions()
    assert est.max_z_against(exact) < 4.0
    assert est.s_hat(0) == pytest.approx(0.75, abs=0.01)


def test_multi_pattern_mc():
    ps = PatternSet.from_strings("000,111")
    cfg = SimConfig(samples=100000, n_max=20, seed=11)
    est = pattern_mc(ps, cfg)
    exact = survival_series(ps, 20).fractions()
    assert est.max_z_against(exact) < 4.0


def test_survival_mc_dispatches_interval_holes():
    cfg = SimConfig(samples=100000, n_max=18, seed=9)
    est = survival_mc(DOUBLING, parse_hole("markov:2:1"), cfg)
    exact = survival_series(PatternSet.of("00"), 18).fractions()
    assert est.max_z_against(exact) < 4.0


def test_survival_mc_exact_orbits_on_non_adic_hole():
    # [0, 1/3) has no finite dyadic coding; orbits run on wide integers
    cfg = SimConfig(samples=50000, n_max=15, seed=13)
    est = survival_mc(DOUBLING, parse_hole("interval:0:1/3"), cfg)
    # survival of [0,1/3) under doubling: s_0 = 2/3
    assert est.s_hat(0) == pytest.approx(2 / 3, abs=0.01)
    assert all(est.survivors[i + 1] <= est.survivors[i]
               for i in range(len(est.survivors) - 1))


def test_tent_mc():
    cfg = SimConfig(samples=100000, n_max=16, seed=17)
    est = survival_mc(TENT, parse_hole("markov:2:3"), cfg)
    # tent cell [1/2, 3/4) codes to 11
    exact = survival_series(PatternSet.of("11"), 16).fractions()
    assert est.max_z_against(exact) < 4.0


def test_baker_mc():
    cfg = SimConfig(samples=100000, n_max=16, seed=7)
    rect = BakerRect(2, 1, 3, 2)
    est = survival_mc(BAKER, rect, cfg)
    exact = survival_series(PatternSet.of("110"), 16).fractions()
    assert est.max_z_against(exact) < 4.0


def test_rotation_mc_refused():
    cfg = SimConfig(samples=1000, n_max=10, seed=1)
    with pytest.raises(ValueError):
        survival_mc(MapSpec.parse("rot:2/5"), parse_hole("interval:0:1/10"), cfg)


def test_escape_rate_fit():
    cfg = SimConfig(samples=500000, n_max=40, seed=1)
    est = pattern_mc(PatternSet.of("00"), cfg)
    fit = escape_rate_fit(est)
    target = math.log(2) - math.log((1 + 5 ** 0.5) / 2)
    assert abs(fit.rho - target) / target < 0.05
    assert fit.window[0] >= 1 and fit.window[1] <= 40


def test_rotation_escape_all_leave():
    # rotation by 2/5 with hole [0,1/5): the orbit of any point steps through
    # the five fifths in the order 0,2,4,1,3, so the fifth containing the
    # start fixes the hit time and each time 0..4 collects a fifth of the grid
    res = rotation_escape(F(2, 5), parse_hole("interval:0:1/5"), grid=1000,
                          horizon=1000)
    assert res.escaped_all
    assert res.max_time == 4
    assert res.time_counts() == {0: 200, 1: 200, 2: 200, 3: 200, 4: 200}


def test_rotation_translation_invariance():
    # shifting the hole by a multiple of 1/grid permutes the grid orbits, so
    # the multiset of escape times is exactly invariant
    alpha = F(514229, 832040)
    hole = parse_hole("interval:0:1/10")
    res = rotation_escape(alpha, hole, grid=10000, horizon=10 ** 5)
    assert res.escaped_all
    for shift in (F(1, 4), F(3, 10), F(7, 100)):
        moved = rotation_escape(alpha, hole, grid=10000, horizon=10 ** 5,
                                hole_shift=shift)
        assert moved.max_time == res.max_time
        assert moved.time_counts() == res.time_counts()


def test_rotation_lattice_guard():
    # denominators that cannot share an exact lattice under 2^62 are refused
    with pytest.raises(ValueError):
        rotation_escape(F(1, 2 ** 61), parse_hole("interval:0:1/10"),
                        grid=10 ** 7, horizon=10)


def test_sim_config_orbit_bits():
    assert SimConfig(n_max=40).orbit_bits() == 104
    assert SimConfig(n_max=40, precision=256).orbit_bits() == 256
