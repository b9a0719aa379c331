"""Counting words that avoid a set of forbidden factors.

c(n) is the number of length-n words over {0,...,m-1} containing no pattern
of the set as a (contiguous) factor.  Three independent routes compute it:

* brute force: enumerate all m^n words (numpy-vectorized, small n only),
  the ground-truth oracle;
* automaton: a factor-matching automaton (Aho-Corasick trie with suffix
  links); c(n) is the number of length-n paths through live states, an
  exact big-integer DP;
* generating function (single pattern only): with correlation polynomial
  f_w and k = |w|, the survival generating function in t is
      P(t) / (t^k + (1 - m t) P(t)),  P(t) = t^(k-1) f_w(1/t),
  whose Taylor coefficients obey a linear recurrence with integer
  coefficients, evaluated exactly.

Survival probabilities follow by normalization: a hole that is the union of
the patterns' cylinder sets (all patterns lifted to one common length L) has
n-step survival probability s_n = c(n + L) / m^(n + L) under the uniform
measure, because a point survives n steps iff its first n + L digits avoid
every pattern.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .words import Word, autocorrelation

BRUTE_FORCE_LIMIT = 22


@dataclass(frozen=True)
class PatternSet:
    """A finite set of forbidden factors, normalized to one common length.

    Patterns of different lengths are admitted: a shorter pattern forbids a
    factor, which is the same as forbidding every extension of it to the
    maximal length, so normalization replaces each pattern u by all words
    u.s of length L = max length.  The normalized set is what the counting
    and survival routines consume; `sources` keeps the originals.
    """

    patterns: tuple[Word, ...]
    sources: tuple[Word, ...]

    @classmethod
    def of(cls, *items, alphabet: int = 2) -> "PatternSet":
        src = []
        for it in items:
            if isinstance(it, Word):
                src.append(it)
            else:
                src.append(Word.from_string(str(it), alphabet))
        if not src:
            raise ValueError("empty pattern set")
        m = max(w.alphabet for w in src)
        src = [Word(w.symbols, m) for w in src]
        length = max(len(w) for w in src)
        seen = set()
        normalized = []
        for w in src:
            for ext in _extensions(w, length, m):
                if ext.symbols not in seen:
                    seen.add(ext.symbols)
                    normalized.append(ext)
        normalized.sort(key=lambda w: w.symbols)
        return cls(tuple(normalized), tuple(src))

    @classmethod
    def from_strings(cls, text: str, alphabet: int = 2) -> "PatternSet":
        """Parse a comma-separated list like '00,010'."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        return cls.of(*parts, alphabet=alphabet)

    @property
    def alphabet(self) -> int:
        return self.patterns[0].alphabet

    @property
    def length(self) -> int:
        return len(self.patterns[0])

    @property
    def is_single(self) -> bool:
        return len(self.sources) == 1

    @property
    def measure(self) -> Fraction:
        """Uniform measure of the union of the patterns' cylinders."""
        return Fraction(len(self.patterns), self.alphabet ** self.length)

    def __str__(self) -> str:
        return "{" + ",".join(str(w) for w in self.sources) + "}"

    def recurrence_time(self) -> int:
        """First shift at which some pattern's suffix matches some pattern's
        prefix; the symbolic return time of the union hole.  At most L."""
        L = self.length
        pats = [w.symbols for w in self.patterns]
        for shift in range(1, L):
            n = L - shift
            suffixes = {p[shift:] for p in pats}
            if any(p[:n] in suffixes for p in pats):
                return shift
        return L


def _extensions(w: Word, length: int, m: int):
    gap = length - len(w)
    if gap == 0:
        yield w
        return
    for n in range(m ** gap):
        tail = []
        x = n
        for _ in range(gap):
            tail.append(x % m)
            x //= m
        yield Word(w.symbols + tuple(reversed(tail)), m)


class AvoidanceAutomaton:
    """Factor-matching automaton over the pattern set's alphabet.

    States are trie nodes of the patterns; suffix links complete the
    transition function.  A state is dead when the path into it ends with
    some pattern.  Words avoiding the set correspond one-to-one to paths
    through live states from the root.
    """

    def __init__(self, patterns: PatternSet | tuple[Word, ...]):
        pats = patterns.patterns if isinstance(patterns, PatternSet) else tuple(patterns)
        m = pats[0].alphabet
        goto = [[-1] * m]
        fail = [0]
        terminal = [False]
        for w in pats:
            node = 0
            for s in w.symbols:
                if goto[node][s] < 0:
                    goto.append([-1] * m)
                    fail.append(0)
                    terminal.append(False)
                    goto[node][s] = len(goto) - 1
                node = goto[node][s]
            terminal[node] = True
        # BFS: resolve missing transitions through suffix links
        queue = deque()
        for s in range(m):
            child = goto[0][s]
            if child < 0:
                goto[0][s] = 0
            else:
                queue.append(child)
        while queue:
            node = queue.popleft()
            terminal[node] = terminal[node] or terminal[fail[node]]
            for s in range(m):
                child = goto[node][s]
                if child < 0:
                    goto[node][s] = goto[fail[node]][s]
                else:
                    fail[child] = goto[fail[node]][s]
                    queue.append(child)
        self.alphabet = m
        self._goto = goto
        self._dead = terminal
        # live states, reachable from the root without touching dead ones
        live = []
        if not terminal[0]:
            seen = {0}
            stack = [0]
            while stack:
                node = stack.pop()
                live.append(node)
                for s in range(m):
                    nxt = goto[node][s]
                    if not terminal[nxt] and nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
        live.sort()
        self.live = live
        self._index = {node: i for i, node in enumerate(live)}
        # per-symbol live transition table, -1 for a dead move
        self.step = [[-1] * m for _ in live]
        for i, node in enumerate(live):
            for s in range(m):
                nxt = goto[node][s]
                if not terminal[nxt]:
                    self.step[i][s] = self._index[nxt]

    @property
    def size(self) -> int:
        return len(self.live)

    def transition_matrix(self) -> list[list[int]]:
        """T[i][j] = number of symbols moving live state i to live state j."""
        n = self.size
        t = [[0] * n for _ in range(n)]
        for i in range(n):
            for s in range(self.alphabet):
                j = self.step[i][s]
                if j >= 0:
                    t[i][j] += 1
        return t

    def count_profile(self, n_max: int) -> list[int]:
        """[c(0), c(1), ..., c(n_max)] as exact integers."""
        if self.size == 0:
            return [1 if n == 0 else 0 for n in range(n_max + 1)]
        vec = [0] * self.size
        vec[0] = 1
        out = [1]
        for _ in range(n_max):
            nxt = [0] * self.size
            for i, v in enumerate(vec):
                if v:
                    for j in self.step[i]:
                        if j >= 0:
                            nxt[j] += v
            vec = nxt
            out.append(sum(vec))
        return out

    def count(self, n: int) -> int:
        return self.count_profile(n)[n]


def count_avoiding(patterns: PatternSet, n: int) -> int:
    """Number of length-n words avoiding every pattern (automaton route)."""
    return AvoidanceAutomaton(patterns).count(n)


def count_profile(patterns: PatternSet, n_max: int) -> list[int]:
    return AvoidanceAutomaton(patterns).count_profile(n_max)


def brute_force_count(patterns: PatternSet, n: int) -> int:
    """Enumerate all m^n words and test windows directly.  Oracle route.

    Refuses n above BRUTE_FORCE_LIMIT (the array would not fit in memory).
    """
    m = patterns.alphabet
    if n < 0:
        raise ValueError("negative length")
    if m ** n > 2 ** BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to m^n <= 2^{BRUTE_FORCE_LIMIT}")
    L = patterns.length
    if n < L:
        return m ** n
    pat_values = np.array(sorted(_pattern_value(w) for w in patterns.patterns),
                          dtype=np.int64)
    total = m ** n
    if n <= L:
        hits = len(pat_values)
        return total - hits
    words = np.arange(total, dtype=np.int64)
    window_mod = m ** L
    bad = np.zeros(total, dtype=bool)
    for shift in range(n - L + 1):
        win = (words // (m ** shift)) % window_mod
        bad |= np.isin(win, pat_values)
    return int(total - np.count_nonzero(bad))


def brute_force_profile(patterns: PatternSet, n_max: int) -> list[int]:
    """[c(0), ..., c(n_max)] by enumeration, one pass over m^n_max words.

    A length-n word is the first n digits of m^(n_max - n) full words, so
    counts for every n fall out of the first-forbidden-window position
    histogram of the full enumeration.  Same semantics as brute_force_count,
    amortized across n.
    """
    m = patterns.alphabet
    L = patterns.length
    if m ** n_max > 2 ** BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to m^n <= 2^{BRUTE_FORCE_LIMIT}")
    out = [m ** n for n in range(min(n_max, L - 1) + 1)]
    if n_max < L:
        return out
    total = m ** n_max
    words = np.arange(total, dtype=np.int64)
    table = np.zeros(m ** L, dtype=bool)
    for w in patterns.patterns:
        table[_pattern_value(w)] = True
    n_windows = n_max - L + 1
    # window j covers digits j+1 .. j+L (1-based, digit 1 most significant)
    first_bad = np.full(total, n_windows, dtype=np.int64)
    for j in range(n_windows - 1, -1, -1):
        win = (words // (m ** (n_max - L - j))) % (m ** L)
        first_bad[table[win]] = j
    # word of length n is bad iff some window fits inside the first n digits,
    # i.e. first_bad <= n - L
    counts = np.bincount(first_bad, minlength=n_windows + 1)
    bad_cum = np.cumsum(counts)
    for n in range(L, n_max + 1):
        bad = int(bad_cum[n - L])
        out.append((total - bad) // (m ** (n_max - n)))
    return out


def _pattern_value(w: Word) -> int:
    v = 0
    for s in w.symbols:
        v = v * w.alphabet + s
    return v


def gf_coefficients(word: Word | str, n_max: int, alphabet: int = 2) -> list[int]:
    """[c(0), ..., c(n_max)] for a single forbidden word, by the correlation
    generating function.

    With P(t) = b_1 + b_2 t + ... + b_k t^(k-1) (autocorrelation bits) and
    Q(t) = t^k + (1 - m t) P(t), the counts are the Taylor coefficients of
    P/Q, computed by the induced integer recurrence
        c(n) = [t^n] P - sum_{j>=1} Q_j c(n - j)   (Q_0 = b_1 = 1).
    """
    w = word if isinstance(word, Word) else Word.from_string(str(word), alphabet)
    m = w.alphabet
    bits = autocorrelation(w).bits
    k = len(bits)
    p = list(bits)  # p[i] = coefficient of t^i
    q = [0] * (k + 1)
    for i in range(k):
        q[i] += p[i]
        q[i + 1] -= m * p[i]
    q[k] += 1
    assert q[0] == 1
    out = []
    for n in range(n_max + 1):
        c = p[n] if n < len(p) else 0
        for j in range(1, min(n, k) + 1):
            c -= q[j] * out[n - j]
        out.append(c)
    return out


@dataclass(frozen=True)
class SurvivalSeries:
    """Exact survival probabilities of the union-of-cylinders hole.

    s_n = counts[n + L] / m^(n + L): the probability that a uniform point
    stays out of the hole for steps 0 .. n.  s_0 = 1 - measure(hole).
    """

    patterns: PatternSet
    counts: tuple[int, ...]  # c(L), c(L+1), ..., c(L+n_max)

    @property
    def n_max(self) -> int:
        return len(self.counts) - 1

    def fraction(self, n: int) -> Fraction:
        L = self.patterns.length
        m = self.patterns.alphabet
        return Fraction(self.counts[n], m ** (n + L))

    def fractions(self) -> list[Fraction]:
        return [self.fraction(n) for n in range(len(self.counts))]

    def floats(self) -> list[float]:
        return [float(self.fraction(n)) for n in range(len(self.counts))]

    def rows(self):
        """(n, count, survival_numerator, survival_denominator, survival_float)"""
        for n in range(len(self.counts)):
            f = self.fraction(n)
            yield n, self.counts[n], f.numerator, f.denominator, float(f)


def survival_series(patterns: PatternSet, n_max: int) -> SurvivalSeries:
    L = patterns.length
    profile = count_profile(patterns, n_max + L)
    return SurvivalSeries(patterns, tuple(profile[L:]))


def dominance_threshold(w: Word | str, u: Word | str) -> int | None:
    """Smallest N* with c_w(n) > c_u(n) guaranteed for all n >= N*.

    Requires corr(w) > corr(u) and equal lengths; the threshold is
    k + min{ i : b_i != a_i } - 1 where b, a are the correlation bits of
    w, u.  Returns None when the correlations are equal (the counts then
    agree for every n).  Raises when corr(w) < corr(u).
    """
    ww = w if isinstance(w, Word) else Word.from_string(str(w))
    uu = u if isinstance(u, Word) else Word.from_string(str(u))
    if len(ww) != len(uu):
        raise ValueError("dominance threshold needs equal-length words")
    b = autocorrelation(ww).bits
    a = autocorrelation(uu).bits
    if b == a:
        return None
    first = next(i for i in range(len(b)) if b[i] != a[i])
    if b[first] < a[first]:
        raise ValueError("corr(w) < corr(u); swap the arguments")
    return len(b) + (first + 1) - 1
