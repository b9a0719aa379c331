"""Escape rates from exact spectral radii of avoidance counting.

For a hole that is the cylinder of a word w (or a union of cylinders), the
number c(n) of surviving length-n itineraries grows like theta^n, and the
exponential escape rate under the uniform measure is

    rho = ln m - ln theta,

m the alphabet size.  Two independent engines compute theta exactly:

* root engine (single word): theta is the largest real root in (0, m) of
  the denominator D(z) = 1 + (z - m) f_w(z), with f_w the correlation
  polynomial.  D is monic of degree |w|; the rational function
  z f_w(z) / D(z) is reduced by an explicit gcd step first (the gcd is
  constant for any word; the step guards the contract).

* matrix engine (any pattern set): theta is the largest real root in
  (0, m) of the exact integer characteristic polynomial of the live-state
  transition matrix of the avoidance automaton.  For large automata a
  float power iteration provides an estimate instead.

Both engines isolate roots with the same Sturm bisection, so their results
carry exact rational brackets and can be compared or ordered without any
floating-point tolerance.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import polyroots
from .avoid import AvoidanceAutomaton, PatternSet, count_profile, dominance_threshold
from .polyroots import RootBracket, largest_root_in, compare_roots
from .words import (Word, all_words, autocorrelation, correlation_polynomial,
                    recurrence_time, word_from_index, word_of_point)

DEFAULT_TOL = Fraction(1, 10 ** 13)
MATRIX_EXACT_LIMIT = 90  # states; char poly is O(S^4) big-int work


def denominator_polynomial(word: Word | str, alphabet: int = 2) -> tuple:
    """D(z) = 1 + (z - m) f_w(z), ascending integer coefficients."""
    w = word if isinstance(word, Word) else Word.from_string(str(word), alphabet)
    m = w.alphabet
    f = correlation_polynomial(w).ascending
    out = [0] * (len(f) + 1)
    for i, b in enumerate(f):
        out[i] -= m * b
        out[i + 1] += b
    out[0] += 1
    return polyroots.trim(tuple(out))


def reduced_denominator(word: Word | str, alphabet: int = 2) -> tuple:
    """Denominator after cancelling any common factor with the numerator
    z f_w(z).  The gcd is always constant (D(0) = +-1 while z | numerator,
    and D(x) = 1 at any root x of f_w), so this returns D unchanged; the
    cancellation is kept explicit because theta is defined on the reduced
    form."""
    w = word if isinstance(word, Word) else Word.from_string(str(word), alphabet)
    d = denominator_polynomial(w)
    numer = (0,) + correlation_polynomial(w).ascending  # z * f_w(z)
    g = polyroots.poly_gcd(d, numer)
    if polyroots.degree(g) >= 1:
        q, r = polyroots.poly_divmod(d, g)
        assert not r
        return polyroots.primitive(q)
    return d


@lru_cache(maxsize=None)
def _bracket_from_corr(alphabet: int, bits: tuple) -> RootBracket | None:
    # theta depends on the word only through its correlation
    f = tuple(reversed(bits))
    out = [0] * (len(f) + 1)
    for i, b in enumerate(f):
        out[i] -= alphabet * b
        out[i + 1] += b
    out[0] += 1
    return largest_root_in(polyroots.trim(tuple(out)), 0, alphabet, DEFAULT_TOL)


def theta_bracket(word: Word | str, alphabet: int = 2,
                  tol: Fraction = DEFAULT_TOL) -> RootBracket:
    """Exact isolating bracket for theta of a single forbidden word."""
    w = word if isinstance(word, Word) else Word.from_string(str(word), alphabet)
    br = _bracket_from_corr(w.alphabet, autocorrelation(w).bits)
    if br is None:  # unreachable for a genuine word: D(1) <= 0 < D(m)
        raise ValueError(f"no spectral root in (0, {w.alphabet}) for {w}")
    return br.refined(tol) if tol < DEFAULT_TOL else br


def matrix_bracket(patterns: PatternSet,
                   tol: Fraction = DEFAULT_TOL) -> RootBracket | None:
    """Exact bracket from the characteristic polynomial of the live matrix.

    None when the automaton is nilpotent (every long word hits the hole).
    """
    aut = AvoidanceAutomaton(patterns)
    if aut.size == 0:
        return None
    if aut.size > MATRIX_EXACT_LIMIT:
        raise ValueError(
            f"automaton has {aut.size} live states; exact characteristic "
            f"polynomial is limited to {MATRIX_EXACT_LIMIT} (use theta_estimate)")
    cp = polyroots.char_poly(aut.transition_matrix())
    br = largest_root_in(cp, 0, patterns.alphabet, tol)
    return br


def theta_estimate(patterns: PatternSet, max_iter: int = 100000,
                   rtol: float = 1e-12) -> tuple[float, float]:
    """Power-iteration estimate of theta with a crude error indicator.

    Meant for automata too large for the exact engines.  Converges slowly
    (or not to full precision) when the top eigenvalue is defective, which
    genuinely happens for some holes; the second return value is the last
    relative change, not a certified bound.
    """
    aut = AvoidanceAutomaton(patterns)
    if aut.size == 0:
        return 0.0, 0.0
    t = np.zeros((aut.size, aut.size))
    for i, row in enumerate(aut.step):
        for j in row:
            if j >= 0:
                t[i, j] += 1.0
    v = np.full(aut.size, 1.0 / aut.size)
    est = 0.0
    delta = math.inf
    stable = 0
    for _ in range(max_iter):
        w = v @ t
        norm = w.sum()
        if norm == 0.0:
            return 0.0, 0.0
        new = norm / v.sum()
        delta = abs(new - est)
        est = new
        v = w / norm
        if delta <= rtol * max(est, 1.0):
            stable += 1
            if stable >= 4:
                break
        else:
            stable = 0
    return float(est), float(delta)


def theta(patterns, method: str = "auto", tol: Fraction = DEFAULT_TOL,
          alphabet: int = 2) -> float:
    """Largest spectral root of the hole's counting automaton, as a float.

    method 'root' demands a single pattern; 'matrix' works for any set small
    enough for the exact characteristic polynomial; 'auto' picks the root
    engine for single patterns, the exact matrix engine when feasible, and
    the power-iteration estimate otherwise.  Raises for a degenerate hole
    (no surviving itineraries).
    """
    ps = _as_pattern_set(patterns, alphabet)
    if method == "root":
        if not ps.is_single:
            raise ValueError("root engine handles a single pattern only")
        return theta_bracket(ps.sources[0], tol=tol).value
    if method == "matrix":
        br = matrix_bracket(ps, tol)
        if br is None:
            raise ValueError("degenerate hole: no surviving itineraries")
        return br.value
    if method != "auto":
        raise ValueError(f"unknown engine {method!r}")
    if ps.is_single:
        return theta_bracket(ps.sources[0], tol=tol).value
    size = AvoidanceAutomaton(ps).size
    if size == 0:
        raise ValueError("degenerate hole: no surviving itineraries")
    if size <= MATRIX_EXACT_LIMIT:
        br = matrix_bracket(ps, tol)
        if br is None:
            raise ValueError("degenerate hole: no surviving itineraries")
        return br.value
    return theta_estimate(ps)[0]


def _as_pattern_set(patterns, alphabet: int = 2) -> PatternSet:
    if isinstance(patterns, PatternSet):
        return patterns
    if isinstance(patterns, Word):
        return PatternSet.of(patterns)
    if isinstance(patterns, str):
        return PatternSet.from_strings(patterns, alphabet)
    return PatternSet.of(*patterns, alphabet=alphabet)


def rho_from_theta(theta_value: float, alphabet: int = 2) -> float:
    if theta_value <= 0.0:
        return math.inf
    return math.log(alphabet) - math.log(theta_value)


@dataclass(frozen=True)
class EscapeReport:
    """Escape-rate summary for one hole.

    engine is 'root', 'matrix' or 'fit'; tolerance is the width of the
    computed bracket (or the estimator's error indicator), not a claim
    about model error.  corr_number is None for multi-pattern holes.
    """

    patterns: str
    alphabet: int
    theta: float
    rho: float
    tau: int
    corr_number: int | None
    engine: str
    tolerance: float

    def as_dict(self) -> dict:
        return {
            "patterns": self.patterns,
            "alphabet": self.alphabet,
            "theta": self.theta,
            "rho": self.rho,
            "tau": self.tau,
            "corr_number": self.corr_number,
            "engine": self.engine,
            "tolerance": self.tolerance,
        }


def escape_rate(patterns, method: str = "auto", tol: Fraction = DEFAULT_TOL,
                alphabet: int = 2) -> EscapeReport:
    """Exact escape rate of the union-of-cylinders hole given by `patterns`.

    Degenerate holes (every itinerary eventually forbidden) report theta 0
    and rho = inf rather than raising.
    """
    ps = _as_pattern_set(patterns, alphabet)
    m = ps.alphabet
    tau = ps.recurrence_time()
    corr_n = autocorrelation(ps.sources[0]).number if ps.is_single else None
    if ps.is_single and method in ("auto", "root"):
        br = theta_bracket(ps.sources[0], tol=tol)
        return EscapeReport(str(ps), m, br.value, rho_from_theta(br.value, m),
                            tau, corr_n, "root", float(br.width))
    if method == "root":
        raise ValueError("root engine handles a single pattern only")
    size = AvoidanceAutomaton(ps).size
    if size <= MATRIX_EXACT_LIMIT:
        br = matrix_bracket(ps, tol)
        if br is None:
            return EscapeReport(str(ps), m, 0.0, math.inf, tau, corr_n,
                                "matrix", 0.0)
        return EscapeReport(str(ps), m, br.value, rho_from_theta(br.value, m),
                            tau, corr_n, "matrix", float(br.width))
    est, delta = theta_estimate(ps)
    return EscapeReport(str(ps), m, est, rho_from_theta(est, m), tau, corr_n,
                        "matrix", delta)


@dataclass(frozen=True)
class HoleComparison:
    """Exact ordering of two single-word holes of the same measure.

    rho_sign is the sign of rho(u) - rho(w), decided from exact root
    brackets.  count_threshold is the index from which the count dominance
    c_w(n) > c_u(n) is guaranteed; survival_crossover is the first n where
    the survival probabilities actually differ.  Both are None when the
    correlations coincide (the holes then share every count).
    """

    w: str
    u: str
    rho_sign: int
    count_threshold: int | None
    survival_crossover: int | None


def compare_holes(w: Word | str, u: Word | str, alphabet: int = 2,
                  horizon: int = 256) -> HoleComparison:
    ww = w if isinstance(w, Word) else Word.from_string(str(w), alphabet)
    uu = u if isinstance(u, Word) else Word.from_string(str(u), alphabet)
    bw = autocorrelation(ww)
    bu = autocorrelation(uu)
    sign = compare_roots(theta_bracket(ww), theta_bracket(uu))
    # theta(w) > theta(u) means w's hole leaks slower: rho(u) - rho(w) > 0
    threshold = None
    crossover = None
    if not (len(ww) == len(uu) and bw.bits == bu.bits):
        if len(ww) == len(uu):
            big, small = (ww, uu) if bw.number > bu.number else (uu, ww)
            threshold = dominance_threshold(big, small)
        cw = count_profile(PatternSet.of(ww), horizon)
        cu = count_profile(PatternSet.of(uu), horizon)
        kw, ku = len(ww), len(uu)
        m = ww.alphabet
        for n in range(horizon - max(kw, ku) + 1):
            if Fraction(cw[n + kw], m ** (n + kw)) != Fraction(cu[n + ku], m ** (n + ku)):
                crossover = n
                break
    return HoleComparison(str(ww), str(uu), sign, threshold, crossover)


def asymptotic_escape(word: Word | str, alphabet: int = 2) -> float:
    """Leading-order escape rate of a small cylinder: 1 / (m f_w(m)).

    First term of rho = ln m - ln theta expanded around theta = m; the
    error is O(f_w(m)^-2), so the approximation sharpens exponentially
    with the word length.
    """
    w = word if isinstance(word, Word) else Word.from_string(str(word), alphabet)
    m = w.alphabet
    return 1.0 / (m * float(correlation_polynomial(w)(m)))


@dataclass(frozen=True)
class LocalEscape:
    """Escape rate of the depth-N cylinder around a point, and its ratio
    to the hole size."""

    level: int
    word: str
    theta: float
    rho: float
    measure: float
    ratio: float


def local_escape_ratio(x, level: int, side: str = "right",
                       alphabet: int = 2) -> LocalEscape:
    """rho(I_N(x)) / lambda(I_N(x)) for the level-N cylinder at x.

    As N grows this ratio tends to 1 - m^-p when x is periodic with
    minimal period p, and to 1 for non-periodic x: holes around periodic
    points leak slower than their size suggests.
    """
    w = word_of_point(x, level, alphabet=alphabet, side=side)
    br = theta_bracket(w)
    rho = rho_from_theta(br.value, w.alphabet)
    lam = w.alphabet ** (-level)
    return LocalEscape(level, str(w), br.value, rho, lam, rho / lam)


@dataclass(frozen=True)
class ScanRow:
    level: int
    index: int
    word: str
    tau: int
    corr_number: int
    theta: float
    rho: float
    rho_asymptotic: float


def _scan_row(args) -> ScanRow:
    level, index, alphabet = args
    w = word_from_index(index, level, alphabet)
    br = theta_bracket(w)
    return ScanRow(level, index, str(w), recurrence_time(w),
                   autocorrelation(w).number, br.value,
                   rho_from_theta(br.value, alphabet),
                   asymptotic_escape(w))


def scan_level(level: int, alphabet: int = 2) -> list[ScanRow]:
    """Escape data for every level-N cylinder hole, in index order.

    Honors ESCAPELAB_THREADS for process-parallel scans; the default is
    serial, which is already fast because theta is cached per correlation
    class.
    """
    jobs = [(level, i, alphabet) for i in range(1, alphabet ** level + 1)]
    threads = int(os.environ.get("ESCAPELAB_THREADS", "1"))
    if threads > 1 and len(jobs) >= 64:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_scan_row, jobs, chunksize=64))
    else:
        rows = [_scan_row(j) for j in jobs]
    return rows


def extremes(level: int, alphabet: int = 2):
    """(min rho rows, max rho rows) at a level, ties resolved exactly.

    Rows share the extreme when their theta brackets compare equal, which
    for equal correlations is decided without refinement.
    """
    rows = scan_level(level, alphabet)
    brackets = {r.index: theta_bracket(Word.from_string(r.word, alphabet))
                for r in rows}
    # rho minimal <-> theta maximal
    max_idx = [rows[0].index]
    min_idx = [rows[0].index]
    for r in rows[1:]:
        c = compare_roots(brackets[r.index], brackets[max_idx[0]])
        if c > 0:
            max_idx = [r.index]
        elif c == 0:
            max_idx.append(r.index)
        c = compare_roots(brackets[r.index], brackets[min_idx[0]])
        if c < 0:
            min_idx = [r.index]
        elif c == 0:
            min_idx.append(r.index)
    by_index = {r.index: r for r in rows}
    return ([by_index[i] for i in max_idx], [by_index[i] for i in min_idx])


def rho_equal_certificate(a, b, alphabet: int = 2) -> bool:
    """Exact proof that two holes share the same escape rate.

    Compares the avoidance counts of the two pattern sets at the same
    absolute word length.  Both sequences satisfy monic integer linear
    recurrences of order at most their automaton sizes s_a, s_b
    (Cayley-Hamilton on the live matrices), so their difference satisfies
    the product recurrence: agreement on s_a + s_b consecutive lengths
    forces agreement forever after, hence identical growth and identical
    rho.  False only means this certificate does not apply (the counts
    genuinely differ), not that the rates must differ.
    """
    pa = _as_pattern_set(a, alphabet)
    pb = _as_pattern_set(b, alphabet)
    aut_a = AvoidanceAutomaton(pa)
    aut_b = AvoidanceAutomaton(pb)
    order = aut_a.size + aut_b.size
    start = max(pa.length, pb.length) + order
    ca = aut_a.count_profile(start + order)
    cb = aut_b.count_profile(start + order)
    return ca[start:start + order] == cb[start:start + order]
