"""End-to-end acceptance gate.

Each test runs one check suite from escapelab.verify and prints its verdict
line, so `pytest tests/test_acceptance.py -s` shows twelve one-line results.
The suites carry their own tolerances; a failure's detail string says which
quantity missed.
"""

from escapelab import verify


def _gate(capsys, suite: str) -> None:
    result = verify.SUITES[suite]()
    with capsys.disabled():
        print(result.line())
    assert result.passed, result.detail


def test_counting_oracle(capsys):
    # automaton profiles == brute-force window enumeration, exact, < 60 s
    _gate(capsys, "oracle")


def test_correlation_worked_example(capsys):
    # corr(10100101) = [10000101], number 133, tau 5
    _gate(capsys, "correlation")


def test_padded_word_count_identity(capsys):
    # c_{0^N}(j) = c_{0^N 1}(j) - c_{0^N 1}(j - N), exact, two routes
    _gate(capsys, "identity")


def test_theta_engines_agree(capsys):
    # denominator root vs matrix eigenvalue: 1e-10 floats, exact root compare
    _gate(capsys, "engines")


def test_later_return_slower_escape(capsys):
    # tau(u) > tau(w) forces c_w(256) > c_u(256) and s_n(u) < s_n(w)
    _gate(capsys, "ordering")


def test_count_dominance_threshold(capsys):
    # corr(w) > corr(u) forces count dominance from the threshold on,
    # with a sharp witness tying just below it
    _gate(capsys, "dominance")


def test_extreme_rates_match_across_levels(capsys):
    # max rho one level down == min rho, gap < 1e-12; (z-1) factor exact
    _gate(capsys, "monotone")


def test_local_rate_at_periodic_and_generic_points(capsys):
    # ratio -> 1/2 at the fixed point, 3/4 on the 2-cycle, 1 at sqrt2-1
    _gate(capsys, "local")


def test_bigger_hole_smaller_rate_pairs(capsys):
    # two pinned pairs: strictly larger measure, strictly smaller rho, exact
    _gate(capsys, "size")


def test_big_hole_below_rate_bound(capsys):
    # constructed hole: measure > 1/2, rho < 0.1, equality certified
    _gate(capsys, "bighole")


def test_conjugate_maps_share_escape_data(capsys):
    # tent == doubling word sets, logistic cell sizes closed-form,
    # baker rectangles exact + Monte Carlo within 3 sigma
    _gate(capsys, "conjugacy")


def test_monte_carlo_against_closed_forms(capsys):
    # fitted rate within 5% of ln(2/phi); rotation escape exhaustive and
    # translation-invariant
    _gate(capsys, "montecarlo")
