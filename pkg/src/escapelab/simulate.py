"""Monte Carlo survival estimates and exact rotation escape times.

Random itineraries of the doubling, expanding, tent and logistic maps under
their natural measures are i.i.d. uniform symbol streams (the tent map's
dyadic cells have Lebesgue measure 2^-N; the logistic map inherits this
through the conjugacy, with the arcsine measure in place of Lebesgue), so
survival of a Markov hole is simulated by sliding a length-L window over a
fresh symbol stream and consulting the pattern table.  The baker map gets a
genuine two-dimensional simulation with explicit (x, y) registers stepped by
the exact baker rule, deliberately independent of the pattern machinery it
cross-checks.  Non-Markov interval holes fall back to exact fixed-point
integer orbits: each sample carries precision-many random bits and every
hole-membership test is an exact integer comparison, so the only error
source is the truncation measure ~ samples * 2^-(precision - n_max), far
below statistical noise at the default 64 guard bits.

Randomness is the counter-based Philox generator with an explicit seed;
independent substreams (key = (seed, stream)) keep the x-stream, y-stream
and limb draws decoupled and every run reproducible.

The circle rotation never mixes, so instead of sampling it gets an exact
lattice sweep: with rational alpha and hole endpoints, all orbit positions
of a uniform grid live on one lattice 1/D and escape times are computed by
exact int64 arithmetic for every grid point at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .avoid import PatternSet
from .maps import (BakerRect, IntervalHole, MapSpec, UnionOfIntervals,
                   MarkovCylinder, code_hole, hole_intervals, normalize_union)


@dataclass(frozen=True)
class SimConfig:
    samples: int = 1_000_000
    n_max: int = 40
    seed: int = 0
    precision: int | None = None  # bits per sample for exact-orbit runs

    def orbit_bits(self) -> int:
        return self.precision if self.precision else self.n_max + 64


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed % 2 ** 64, stream]))


@dataclass(frozen=True)
class SurvivalEstimate:
    """Survivor counts per step; s_hat(n) estimates the exact s_n."""

    label: str
    survivors: tuple[int, ...]
    samples: int
    seed: int

    @property
    def n_max(self) -> int:
        return len(self.survivors) - 1

    def s_hat(self, n: int) -> float:
        return self.survivors[n] / self.samples

    def stderr(self, n: int) -> float:
        p = self.s_hat(n)
        return math.sqrt(p * (1.0 - p) / self.samples)

    def ci_halfwidth(self, n: int, z: float = 3.0) -> float:
        return z * self.stderr(n)

    def rows(self):
        """(n, survivors, s_hat, ci_halfwidth) with the 3-sigma halfwidth."""
        for n in range(len(self.survivors)):
            yield n, self.survivors[n], self.s_hat(n), self.ci_halfwidth(n)

    def max_z_against(self, exact_fractions) -> float:
        """Largest |z| score of the estimate against exact survival values,
        using the known-variance normal scale at each step."""
        worst = 0.0
        for n, s in enumerate(exact_fractions):
            if n > self.n_max:
                break
            p = float(s)
            se = math.sqrt(p * (1.0 - p) / self.samples)
            if se == 0.0:
                if self.s_hat(n) != p:
                    return math.inf
                continue
            worst = max(worst, abs(self.s_hat(n) - p) / se)
        return worst


def pattern_mc(patterns: PatternSet, config: SimConfig) -> SurvivalEstimate:
    """Sliding-window survival simulation over an i.i.d. symbol stream."""
    m, L = patterns.alphabet, patterns.length
    if m ** L > 2 ** 26:
        raise ValueError("pattern table too large for the window engine")
    table = np.zeros(m ** L, dtype=bool)
    for w in patterns.patterns:
        v = 0
        for s in w.symbols:
            v = v * m + s
        table[v] = True
    rng = _rng(config.seed, 0)
    window = rng.integers(0, m ** L, size=config.samples, dtype=np.int64)
    alive = ~table[window]
    survivors = [int(alive.sum())]
    drop = m ** (L - 1)
    for _ in range(config.n_max):
        sym = rng.integers(0, m, size=config.samples, dtype=np.int64)
        window = (window % drop) * m + sym
        alive &= ~table[window]
        survivors.append(int(alive.sum()))
    return SurvivalEstimate(str(patterns), tuple(survivors),
                            config.samples, config.seed)


def _baker_mc(rect: BakerRect, config: SimConfig) -> SurvivalEstimate:
    n, m = rect.x_level, rect.y_level
    xi, yj = rect.x_index - 1, rect.y_index - 1
    rng_x = _rng(config.seed, 0)
    rng_y = _rng(config.seed, 1)
    # x is tracked through its leading n bits, y through its leading m bits;
    # the baker step consumes the top x bit and pushes it onto y
    x_win = rng_x.integers(0, 2 ** n, size=config.samples, dtype=np.int64)
    y_top = rng_y.integers(0, 2 ** m, size=config.samples, dtype=np.int64)
    alive = ~((x_win == xi) & (y_top == yj))
    survivors = [int(alive.sum())]
    for _ in range(config.n_max):
        lead = x_win >> (n - 1)
        y_top = (lead << (m - 1)) | (y_top >> 1)
        fresh = rng_x.integers(0, 2, size=config.samples, dtype=np.int64)
        x_win = ((x_win << 1) & (2 ** n - 1)) | fresh
        alive &= ~((x_win == xi) & (y_top == yj))
        survivors.append(int(alive.sum()))
    return SurvivalEstimate(str(rect), tuple(survivors),
                            config.samples, config.seed)


def _exact_orbit_mc(map_spec: MapSpec, intervals, config: SimConfig,
                    label: str) -> SurvivalEstimate:
    if map_spec.kind not in ("doubling", "tent"):
        raise ValueError(f"exact-orbit fallback covers doubling and tent, "
                         f"not {map_spec.kind}")
    bits = config.orbit_bits()
    if bits <= config.n_max:
        raise ValueError("precision must exceed n_max")
    one = 1 << bits
    bounds = []
    for a, b in normalize_union(intervals):
        lo = -((-a.numerator * one) // a.denominator)  # ceil(a * 2^bits)
        hi = -((-b.numerator * one) // b.denominator)
        bounds.append((lo, hi))
    limbs = (bits + 63) // 64
    raw = _rng(config.seed, 2).integers(0, 2 ** 64, dtype=np.uint64,
                                        size=(config.samples, limbs))
    half = one >> 1
    mask = one - 1
    survivors = [0] * (config.n_max + 1)
    tent = map_spec.kind == "tent"
    for row in raw:
        x = 0
        for limb in row.tolist():
            x = (x << 64) | limb
        x &= mask
        for step in range(config.n_max + 1):
            if any(lo <= x < hi for lo, hi in bounds):
                break
            survivors[step] += 1
            if tent and x >= half:
                x = (one - x) << 1
                if x == one:
                    x = one - 1
            else:
                x = (x << 1) & mask
    return SurvivalEstimate(label, tuple(survivors), config.samples, config.seed)


def survival_mc(map_spec: MapSpec, hole, config: SimConfig) -> SurvivalEstimate:
    """Monte Carlo survival series of a hole under the map's natural measure.

    Markov holes run on the vectorized window engine; baker rectangles on
    the 2-D register engine; non-Markov interval holes of the doubling and
    tent maps on exact integer orbits (slower, prefer modest sample counts).
    A PatternSet may be passed directly as the hole.
    """
    if isinstance(hole, PatternSet):
        return pattern_mc(hole, config)
    if map_spec.kind == "rotation":
        raise ValueError("the rotation does not mix; use rotation_escape")
    if map_spec.kind == "baker":
        if not isinstance(hole, BakerRect):
            raise ValueError("baker holes are BakerRect")
        return _baker_mc(hole, config)
    try:
        return pattern_mc(code_hole(map_spec, hole), config)
    except ValueError:
        ivs = hole_intervals(map_spec, hole)
        return _exact_orbit_mc(map_spec, ivs, config, f"{map_spec}:{hole}")


@dataclass(frozen=True)
class FitResult:
    rho: float
    window: tuple[int, int]
    points: int

    def as_dict(self) -> dict:
        return {"rho": self.rho, "window": list(self.window),
                "points": self.points}


def escape_rate_fit(estimate: SurvivalEstimate,
                    window: tuple[int, int] | None = None) -> FitResult:
    """Least-squares slope of -ln s_hat(n) over a window of steps.

    The default window starts at n_max/4 to shed the transient where the
    survival series still remembers the hole geometry.  Steps with fewer
    than 10 survivors are dropped; the exponential regime needs statistics.
    """
    lo, hi = window if window else (estimate.n_max // 4, estimate.n_max)
    ns, ys = [], []
    for n in range(lo, hi + 1):
        if estimate.survivors[n] >= 10:
            ns.append(n)
            ys.append(-math.log(estimate.s_hat(n)))
    if len(ns) < 2:
        raise ValueError("not enough populated steps to fit")
    slope, _ = np.polyfit(np.array(ns, dtype=float), np.array(ys), 1)
    return FitResult(float(slope), (lo, hi), len(ns))


@dataclass(frozen=True)
class RotationEscape:
    """First hitting times of a hole for every grid point under a rotation.

    times[k] is the least n >= 0 with k/grid + n alpha mod 1 in the hole,
    or -1 if the point never hits within the horizon.  All arithmetic is
    exact on the common denominator lattice, so these are not estimates.
    """

    alpha: Fraction
    grid: int
    horizon: int
    times: tuple[int, ...]

    @property
    def escaped_all(self) -> bool:
        return all(t >= 0 for t in self.times)

    @property
    def max_time(self) -> int:
        return max(self.times)

    def time_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for t in self.times:
            out[t] = out.get(t, 0) + 1
        return dict(sorted(out.items()))


def rotation_escape(alpha: Fraction, hole: IntervalHole, grid: int = 100_000,
                    horizon: int = 100_000,
                    hole_shift: Fraction = Fraction(0)) -> RotationEscape:
    """Exact escape (first-hit) times of all grid points k/grid.

    hole_shift translates the hole mod 1; shifting by a multiple of 1/grid
    permutes the grid orbits, so the multiset of times (and hence the
    maximum) is exactly invariant, a fact tests can assert with integer
    equality.  The common denominator of alpha, the grid and the hole
    endpoints must stay below 2^62 for int64 arithmetic.
    """
    alpha = Fraction(alpha)
    a = hole.a + hole_shift
    b = hole.b + hole_shift
    d = _lcm(alpha.denominator, grid, a.denominator, b.denominator)
    if d >= 2 ** 62:
        raise ValueError(f"lattice denominator {d} too large for exact int64")
    alpha_d = (alpha.numerator * (d // alpha.denominator)) % d
    a_d = (a.numerator * (d // a.denominator)) % d
    span_d = int((b - a) * d)
    base = (np.arange(grid, dtype=np.int64) * (d // grid) - a_d) % d
    times = np.full(grid, -1, dtype=np.int64)
    offset = 0
    remaining = grid
    for n in range(horizon + 1):
        pos = base + offset
        pos[pos >= d] -= d
        hit = (pos < span_d) & (times < 0)
        if hit.any():
            times[hit] = n
            remaining -= int(hit.sum())
            if remaining == 0:
                break
        offset = (offset + alpha_d) % d
    return RotationEscape(alpha, grid, horizon, tuple(int(t) for t in times))


def _lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
