"""escapelab: where to place a hole in a chaotic map, computed exactly.

Escape rates of open interval and planar maps (doubling, m-branch
expanding, tent, logistic, baker, circle rotation) through the
combinatorics of forbidden itinerary factors: autocorrelations and
correlation polynomials of words, exact avoidance counting, spectral radii
with certified rational brackets, geometric hole calculus, and Monte Carlo
cross-checks.
"""

from .words import (Word, Correlation, CorrelationPolynomial, all_words,
                    autocorrelation, correlation_number, correlation_polynomial,
                    cylinder_interval, recurrence_time, word_from_index,
                    word_of_point)
from .avoid import (AvoidanceAutomaton, PatternSet, SurvivalSeries,
                    brute_force_count, brute_force_profile, count_avoiding,
                    count_profile, dominance_threshold, gf_coefficients,
                    survival_series)
from .spectral import (EscapeReport, HoleComparison, LocalEscape, ScanRow,
                       asymptotic_escape, compare_holes, denominator_polynomial,
                       escape_rate, extremes, local_escape_ratio,
                       reduced_denominator, rho_equal_certificate,
                       rho_from_theta, scan_level, theta, theta_bracket,
                       theta_estimate, matrix_bracket)
from .maps import (BAKER, DOUBLING, LOGISTIC, TENT, BakerRect, BigHoleResult,
                   IntervalHole, MapSpec, MarkovCylinder, UnionOfIntervals,
                   baker_rect_word, big_hole_small_rate, code_hole,
                   hole_intervals, logistic_cell_endpoints, measure,
                   parse_hole, poincare_time, preimage_union)
from .simulate import (FitResult, RotationEscape, SimConfig, SurvivalEstimate,
                       escape_rate_fit, pattern_mc, rotation_escape,
                       survival_mc)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
