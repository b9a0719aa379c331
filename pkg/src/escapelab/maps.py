"""Piecewise-linear chaotic maps, holes, and their symbolic codings.

Supported maps on [0, 1] (mod 1 where needed):

* doubling       x -> 2x mod 1, and the m-branch version x -> mx mod 1
* tent           x -> 2x on [0, 1/2), 2 - 2x on [1/2, 1]
* logistic       x -> 4x(1-x), handled through the conjugacy
                 F(x) = sin^2(pi x / 2), which carries tent orbits to
                 logistic orbits and Lebesgue measure to the arcsine
                 measure d(mu) = dx / (pi sqrt(x(1-x)))
* baker          (x, y) -> (2x mod 1, (y + floor(2x)) / 2), the invertible
                 two-dimensional extension of doubling
* rotation       x -> x + alpha mod 1 (not mixing; no symbolic coding)

Holes are cylinder cells of the map's Markov partition, explicit intervals
with exact rational endpoints, unions of such, or axis-parallel rectangles
for the baker map.  `code_hole` turns a Markov hole into the pattern set of
forbidden itinerary factors, which is where the counting machinery of
`avoid` and `spectral` takes over.  Set operations (images, preimages,
intersections) are exact over Fractions; intervals are half-open [a, b) and
boundary points, which carry no measure, are not tracked through the tent
fold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .avoid import PatternSet
from .words import Word, word_from_index, word_of_point

Interval = tuple  # (Fraction lo, Fraction hi), the half-open [lo, hi)


@dataclass(frozen=True)
class MapSpec:
    """One of the supported maps; `branches` only matters for 'expanding',
    `alpha` only for 'rotation'."""

    kind: str
    branches: int = 2
    alpha: Fraction | None = None

    def __post_init__(self):
        if self.kind not in ("doubling", "expanding", "tent", "logistic",
                             "baker", "rotation"):
            raise ValueError(f"unknown map {self.kind!r}")
        if self.kind == "expanding" and self.branches < 2:
            raise ValueError("expanding map needs at least 2 branches")
        if self.kind == "rotation" and self.alpha is None:
            raise ValueError("rotation needs alpha")

    @classmethod
    def parse(cls, text: str) -> "MapSpec":
        """'doubling', 'expand:3', 'tent', 'logistic', 'baker', 'rot:0.618...'"""
        t = text.strip().lower()
        if t in ("doubling", "tent", "logistic", "baker"):
            return cls(t)
        if t.startswith("expand:"):
            return cls("expanding", branches=int(t.split(":", 1)[1]))
        if t.startswith("rot:"):
            return cls("rotation", alpha=Fraction(t.split(":", 1)[1]))
        raise ValueError(f"cannot parse map {text!r}")

    @property
    def alphabet(self) -> int:
        return self.branches if self.kind == "expanding" else 2

    def __str__(self) -> str:
        if self.kind == "expanding":
            return f"expand:{self.branches}"
        if self.kind == "rotation":
            return f"rot:{self.alpha}"
        return self.kind


DOUBLING = MapSpec("doubling")
TENT = MapSpec("tent")
LOGISTIC = MapSpec("logistic")
BAKER = MapSpec("baker")


@dataclass(frozen=True)
class MarkovCylinder:
    """The index-th cell (1-based) of the map's level-N Markov partition."""

    level: int
    index: int

    def __post_init__(self):
        if self.level < 1 or self.index < 1:
            raise ValueError("level and index are 1-based positive")

    def __str__(self) -> str:
        return f"markov:{self.level}:{self.index}"


@dataclass(frozen=True)
class IntervalHole:
    """[a, b) with exact rational endpoints."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        if not (0 <= self.a < self.b <= 1):
            raise ValueError("need 0 <= a < b <= 1")

    def __str__(self) -> str:
        return f"interval:{self.a}:{self.b}"


@dataclass(frozen=True)
class UnionOfIntervals:
    intervals: tuple

    def __str__(self) -> str:
        return "union:" + ";".join(f"{a}:{b}" for a, b in self.intervals)


@dataclass(frozen=True)
class BakerRect:
    """Product of the i-th level-N x-cell and the j-th level-M y-cell."""

    x_level: int
    y_level: int
    x_index: int
    y_index: int

    def __str__(self) -> str:
        return f"rect:{self.x_level}:{self.y_level}:{self.x_index}:{self.y_index}"


def parse_hole(text: str):
    """'markov:N:i', 'interval:a:b' (endpoints like 1/2 or 0.25),
    'union:a:b;c:d;...', 'rect:N:M:i:j'."""
    t = text.strip()
    head, _, rest = t.partition(":")
    if head == "markov":
        n, i = rest.split(":")
        return MarkovCylinder(int(n), int(i))
    if head == "interval":
        a, b = rest.split(":")
        return IntervalHole(Fraction(a), Fraction(b))
    if head == "union":
        ivs = []
        for part in rest.split(";"):
            a, b = part.split(":")
            ivs.append((Fraction(a), Fraction(b)))
        return UnionOfIntervals(normalize_union(ivs))
    if head == "rect":
        n, m, i, j = rest.split(":")
        return BakerRect(int(n), int(m), int(i), int(j))
    raise ValueError(f"cannot parse hole {text!r}")


# ---------------------------------------------------------------- intervals

def normalize_union(intervals) -> tuple:
    """Sort, drop empty, merge overlapping or touching half-open intervals."""
    ivs = sorted((Fraction(a), Fraction(b)) for a, b in intervals if a < b)
    out = []
    for a, b in ivs:
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return tuple(out)


def union_measure(intervals) -> Fraction:
    return sum((b - a for a, b in normalize_union(intervals)), Fraction(0))


def intersect_unions(first, second) -> tuple:
    out = []
    for a, b in first:
        for c, d in second:
            lo, hi = max(a, c), min(b, d)
            if lo < hi:
                out.append((lo, hi))
    return normalize_union(out)


def _mod1_pieces(a, b):
    # [a, b) with b - a <= 1, shifted into [0, 1)
    a_ = a - math.floor(a)
    span = b - a
    if a_ + span <= 1:
        return [(a_, a_ + span)]
    return [(a_, Fraction(1)), (Fraction(0), a_ + span - 1)]


def image_union(map_spec: MapSpec, intervals) -> tuple:
    """One forward step of a union of intervals, exact.

    Tent-fold boundary points are not tracked (measure zero); logistic
    holes are handled in tent coordinates by the conjugacy, so images in
    logistic coordinates are never needed and not offered.
    """
    out = []
    for a, b in normalize_union(intervals):
        if map_spec.kind in ("doubling", "expanding"):
            m = map_spec.alphabet
            lo, hi = m * a, m * b
            while lo < hi:
                cut = min(hi, math.floor(lo) + 1)
                out.extend(_mod1_pieces(lo, cut))
                lo = cut
        elif map_spec.kind == "tent":
            half = Fraction(1, 2)
            if a < half:
                c = min(b, half)
                out.append((2 * a, 2 * c))
            if b > half:
                c = max(a, half)
                out.append((2 - 2 * b, 2 - 2 * c))
        elif map_spec.kind == "rotation":
            out.extend(_mod1_pieces(a + map_spec.alpha, b + map_spec.alpha))
        else:
            raise ValueError(f"interval image undefined for {map_spec.kind}")
    return normalize_union(out)


def preimage_step(map_spec: MapSpec, intervals) -> tuple:
    """One backward step T^-1 of a union of intervals, exact."""
    out = []
    for a, b in normalize_union(intervals):
        if map_spec.kind in ("doubling", "expanding"):
            m = map_spec.alphabet
            for k in range(m):
                out.append(((a + k) / m, (b + k) / m))
        elif map_spec.kind == "tent":
            out.append((a / 2, b / 2))
            out.append((1 - b / 2, 1 - a / 2))
        elif map_spec.kind == "rotation":
            out.extend(_mod1_pieces(a - map_spec.alpha, b - map_spec.alpha))
        else:
            raise ValueError(f"interval preimage undefined for {map_spec.kind}")
    return normalize_union(out)


# ------------------------------------------------------------------ coding

def _is_power_fraction(x: Fraction, m: int) -> bool:
    den = x.denominator
    while den > 1:
        d = gcd(den, m)
        if d == 1:
            return False
        den //= d
    return True


def _gray_word(k: int, level: int) -> Word:
    # tent itineraries of dyadic cells follow the reflected binary code
    g = k ^ (k >> 1)
    return Word(tuple((g >> (level - 1 - t)) & 1 for t in range(level)), 2)


def hole_intervals(map_spec: MapSpec, hole) -> tuple:
    """The hole as an exact union of intervals in the map's own coordinates
    (tent coordinates for the logistic map)."""
    if isinstance(hole, MarkovCylinder):
        m = map_spec.alphabet
        if map_spec.kind == "rotation":
            raise ValueError("rotation has no Markov partition here")
        if map_spec.kind == "baker":
            raise ValueError("baker holes are rectangles, not intervals")
        if not hole.index <= m ** hole.level:
            raise ValueError(f"index {hole.index} out of range at level {hole.level}")
        a = Fraction(hole.index - 1, m ** hole.level)
        b = Fraction(hole.index, m ** hole.level)
        return ((a, b),)
    if isinstance(hole, IntervalHole):
        if map_spec.kind == "logistic":
            raise ValueError("logistic interval holes: give a MarkovCylinder, "
                             "or work in tent coordinates explicitly")
        return ((hole.a, hole.b),)
    if isinstance(hole, UnionOfIntervals):
        if map_spec.kind == "logistic":
            raise ValueError("logistic interval holes: give a MarkovCylinder, "
                             "or work in tent coordinates explicitly")
        return normalize_union(hole.intervals)
    raise ValueError(f"no interval form for {hole!r} under {map_spec}")


def adic_decomposition(map_spec: MapSpec, intervals) -> list[Word]:
    """Maximal-cylinder decomposition of an m-adic union of intervals.

    Raises when an endpoint is not m-adic: such a hole is not a union of
    Markov cells at any depth; callers should fall back to Monte Carlo
    (simulate.survival_mc) or bracket the hole between m-adic hulls.
    """
    m = map_spec.alphabet
    words = []
    for a, b in normalize_union(intervals):
        if not (_is_power_fraction(a, m) and _is_power_fraction(b, m)):
            raise ValueError(
                f"[{a}, {b}) is not {m}-adic, hence not Markov for {map_spec}; "
                f"use Monte Carlo or inner/outer adic hulls")
        while a < b:
            level = 1
            while not (_is_integer(a * m ** level) and a + Fraction(1, m ** level) <= b):
                level += 1
                if level > 64:
                    raise ValueError("decomposition deeper than 64 levels")
            k = int(a * m ** level)
            if map_spec.kind == "tent" or map_spec.kind == "logistic":
                words.append(_gray_word(k, level))
            else:
                words.append(word_from_index(k + 1, level, m))
            a += Fraction(1, m ** level)
    return words


def _is_integer(x: Fraction) -> bool:
    return x.denominator == 1


def code_hole(map_spec: MapSpec, hole) -> PatternSet:
    """Forbidden itinerary factors of a Markov hole.

    The resulting pattern set is the exact symbolic shadow of the hole:
    a point survives n steps iff its first n + L itinerary symbols avoid
    every pattern (L the normalized length), so survival probabilities and
    escape rates are those of the pattern set.
    """
    if map_spec.kind == "rotation":
        raise ValueError("the rotation is not expanding: no finite coding; "
                         "use simulate.rotation_escape")
    if map_spec.kind == "baker":
        if not isinstance(hole, BakerRect):
            raise ValueError("baker holes are BakerRect")
        return PatternSet.of(baker_rect_word(hole))
    words = adic_decomposition(map_spec, hole_intervals(map_spec, hole))
    return PatternSet.of(*words, alphabet=map_spec.alphabet)


def baker_rect_word(rect: BakerRect) -> Word:
    """Contiguous two-sided block pinned by a baker rectangle.

    Coding the baker map by the bi-infinite doubling itinerary (x digits
    forward, y digits backward), the rectangle fixes the M symbols before
    the origin (y digits reversed) followed by the N symbols after it
    (x digits), one window of length N + M.
    """
    n, m = rect.x_level, rect.y_level
    if not (1 <= rect.x_index <= 2 ** n and 1 <= rect.y_index <= 2 ** m):
        raise ValueError("rectangle index out of range")
    x_word = word_from_index(rect.x_index, n, 2)
    y_word = word_from_index(rect.y_index, m, 2)
    return Word(tuple(reversed(y_word.symbols)) + x_word.symbols, 2)


def baker_rect_box(rect: BakerRect) -> tuple:
    n, m = rect.x_level, rect.y_level
    x0 = Fraction(rect.x_index - 1, 2 ** n)
    y0 = Fraction(rect.y_index - 1, 2 ** m)
    return (x0, x0 + Fraction(1, 2 ** n), y0, y0 + Fraction(1, 2 ** m))


def _baker_image(rects):
    out = []
    half = Fraction(1, 2)
    for x0, x1, y0, y1 in rects:
        if x0 < half:
            c = min(x1, half)
            out.append((2 * x0, 2 * c, y0 / 2, y1 / 2))
        if x1 > half:
            c = max(x0, half)
            out.append((2 * c - 1, 2 * x1 - 1, (y0 + 1) / 2, (y1 + 1) / 2))
    return out


def _rects_overlap_measure(rects, box):
    x0, x1, y0, y1 = box
    total = Fraction(0)
    for a0, a1, b0, b1 in rects:
        w = min(a1, x1) - max(a0, x0)
        h = min(b1, y1) - max(b0, y0)
        if w > 0 and h > 0:
            total += w * h
    return total


def poincare_time(map_spec: MapSpec, hole, n_max: int | None = None) -> int:
    """Geometric return time: least n >= 1 with T^n(hole) meeting the hole
    in positive measure.  Exact set iteration, no coding involved.

    The cap defaults to 4x the hole's partition depth (the return time of
    a Markov hole never exceeds the depth, so hitting the cap signals a
    modelling error and raises).
    """
    if map_spec.kind == "baker":
        if not isinstance(hole, BakerRect):
            raise ValueError("baker holes are BakerRect")
        box = baker_rect_box(hole)
        cap = n_max or 4 * (hole.x_level + hole.y_level)
        rects = [box]
        for n in range(1, cap + 1):
            rects = _baker_image(rects)
            if _rects_overlap_measure(rects, box) > 0:
                return n
        raise RuntimeError(f"no return within {cap} steps: cap too small "
                           f"or degenerate hole {hole}")
    base = hole_intervals(map_spec, hole)
    work = TENT if map_spec.kind == "logistic" else map_spec
    if n_max is None:
        if map_spec.kind == "rotation":
            n_max = 10 ** 6
        else:
            depth = max(_adic_depth(a, b, work.alphabet) for a, b in base)
            n_max = max(4 * depth, 8)
    img = base
    for n in range(1, n_max + 1):
        img = image_union(work, img)
        if intersect_unions(img, base):
            return n
    raise RuntimeError(f"no return within {n_max} steps for {hole} under "
                       f"{map_spec}; raise n_max if the hole is tiny")


def _adic_depth(a: Fraction, b: Fraction, m: int) -> int:
    depth = 1
    while Fraction(1, m ** depth) > b - a and depth < 64:
        depth += 1
    return depth


def measure(mu: str, hole, map_spec: MapSpec | None = None):
    """Size of a hole under 'lebesgue' or 'arcsine'.

    Exact Fraction for Lebesgue on intervals and for arcsine on logistic
    Markov cells (the conjugacy sends dyadic cells to arcsine mass 2^-N
    on the nose); float for arcsine on general intervals.
    """
    if isinstance(hole, BakerRect):
        if mu != "lebesgue":
            raise ValueError("baker rectangles carry Lebesgue area only")
        x0, x1, y0, y1 = baker_rect_box(hole)
        return (x1 - x0) * (y1 - y0)
    if isinstance(hole, MarkovCylinder) and map_spec is not None \
            and map_spec.kind == "logistic":
        if mu == "arcsine":
            return Fraction(1, 2 ** hole.level)
        a, b = logistic_cell_endpoints(hole.level, hole.index)
        return b - a  # float Lebesgue length of the curved cell
    ivs = hole_intervals(map_spec or DOUBLING, hole) if not isinstance(hole, tuple) \
        else normalize_union(hole)
    if mu == "lebesgue":
        return union_measure(ivs)
    if mu == "arcsine":
        total = 0.0
        for a, b in ivs:
            total += (2 / math.pi) * (math.asin(math.sqrt(float(b)))
                                      - math.asin(math.sqrt(float(a))))
        return total
    raise ValueError(f"unknown measure {mu!r}")


def logistic_cell_endpoints(level: int, index: int) -> tuple[float, float]:
    """Endpoints of the logistic image F(cell) of the dyadic cell, with
    F(x) = sin^2(pi x / 2).  These are the logistic map's Markov cells;
    each carries arcsine measure exactly 2^-level."""
    lo = math.sin(math.pi * (index - 1) / 2 ** (level + 1)) ** 2
    hi = math.sin(math.pi * index / 2 ** (level + 1)) ** 2
    return lo, hi


def preimage_union(map_spec: MapSpec, hole, depth: int):
    """Union of T^-k(hole) over k = 0..depth, as a normalized interval union.

    Survivors of this union for n steps are exactly the survivors of the
    original hole for n + depth steps, which is what makes big holes with
    small escape rates possible.
    """
    base = hole_intervals(map_spec, hole)
    work = TENT if map_spec.kind == "logistic" else map_spec
    if work.kind not in ("doubling", "expanding", "tent"):
        raise ValueError(f"preimage union not defined for {map_spec.kind}")
    # iterate U <- U + T^-1(U) on the merged union: T^-1 distributes over
    # unions, and merging each round keeps the component count at the gap
    # count of the survivor set instead of the raw 2^depth layer size
    acc = normalize_union(base)
    for _ in range(depth):
        acc = normalize_union(list(acc) + list(preimage_step(work, acc)))
    return UnionOfIntervals(acc)


@dataclass(frozen=True)
class BigHoleResult:
    """A hole of measure > epsilon whose escape rate equals that of a small
    cylinder (rate < rate_bound), by swallowing the cylinder's preimages."""

    base_word: str
    level: int
    depth: int
    hole: UnionOfIntervals
    hole_measure: Fraction
    theta: float
    rho: float
    certified_equal: bool

    def as_dict(self) -> dict:
        return {
            "base_word": self.base_word,
            "level": self.level,
            "depth": self.depth,
            "component_count": len(self.hole.intervals),
            "hole_measure": str(self.hole_measure),
            "hole_measure_float": float(self.hole_measure),
            "theta": self.theta,
            "rho": self.rho,
            "certified_equal": self.certified_equal,
        }


def big_hole_small_rate(epsilon: Fraction | float = Fraction(1, 2),
                        rate_bound: float = 0.1,
                        map_spec: MapSpec = DOUBLING) -> BigHoleResult:
    """Construct a hole of measure > epsilon with escape rate < rate_bound.

    Take the smallest left cylinder 0^N with rho < rate_bound, then union
    it with enough backward images: adding T^-k(hole) pieces never changes
    the escape rate (survivor sets only get relabeled in time), while the
    measure 1 - s_depth grows toward 1.

    Certification is exact and two-route: padding by one more preimage of
    the built union must shave off exactly the symbolic survival decrement,
    measure(U_{depth+n}) = 1 - s_base(depth + n), checked as equalities of
    rationals on a window past the returned depth (interval geometry on the
    left, automaton counts on the right; the identity in the padding index
    is plain index arithmetic, so any discrepancy is a plumbing bug and
    shows up within one pattern length).
    """
    from .spectral import escape_rate
    if map_spec.kind not in ("doubling", "expanding"):
        raise ValueError("construction implemented on the m-ary expanding maps")
    m = map_spec.alphabet
    if not isinstance(epsilon, Fraction):
        epsilon = Fraction(epsilon).limit_denominator(10 ** 12)
    level = 1
    while True:
        word = Word((0,) * level, m)
        report = escape_rate(PatternSet.of(word))
        if report.rho < rate_bound:
            break
        level += 1
        if level > 64:
            raise ValueError(f"no cylinder reaches rate < {rate_bound}")
    base = MarkovCylinder(level, 1)
    from .avoid import survival_series
    window = level + 2
    depth = 0
    series = survival_series(PatternSet.of(word), 4096)
    while series.fraction(depth) >= 1 - epsilon:
        depth += 1
        if depth > series.n_max - window:
            raise ValueError("epsilon too close to 1 for this horizon")
    # survivor cylinders bound the component count of the union and of the
    # certificate probes; past ~2M components the exact interval arithmetic
    # is no longer worth the wait
    if series.counts[depth + window] > 2_000_000:
        raise ValueError(f"epsilon {epsilon} needs depth {depth}; "
                         f"the hole would have ~{series.counts[depth]} "
                         f"components, past the exact-geometry budget")
    union = preimage_union(map_spec, base, depth)
    mass = union_measure(union.intervals)
    certified = mass == 1 - series.fraction(depth)
    probe = list(union.intervals)
    for n in range(1, window + 1):
        probe = list(normalize_union(probe + list(preimage_step(map_spec,
                                                                probe))))
        certified &= union_measure(probe) == 1 - series.fraction(depth + n)
    return BigHoleResult(str(word), level, depth, union, mass,
                         report.theta, report.rho, certified)
