"""Command-line front end: every capability of the library as a subcommand
that writes CSV or JSON, so curves and tables can be reproduced as data
files without writing Python.

    escapelab corr 10100101
    escapelab scan --level 4 --format csv --out scan4.csv
    escapelab mc --hole markov:2:1 --samples 1000000 --seed 1 --format json
    escapelab verify all

Rationals are printed as p/q alongside a float column; floats never feed
back into exact pipelines.  ESCAPELAB_THREADS caps scan parallelism.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from fractions import Fraction

from .words import Word, autocorrelation, correlation_polynomial, recurrence_time
from .avoid import PatternSet, count_profile, survival_series
from .spectral import (escape_rate, local_escape_ratio, rho_from_theta,
                       scan_level, theta_bracket)
from .maps import (DOUBLING, MapSpec, MarkovCylinder, big_hole_small_rate,
                   code_hole, measure, parse_hole, poincare_time)
from .simulate import SimConfig, escape_rate_fit, rotation_escape, survival_mc
from . import verify as verify_mod

SCAN_LEVEL_LIMIT = 16


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(header, rows, args) -> None:
    if getattr(args, "format", "csv") == "json":
        payload = [dict(zip(header, row)) for row in rows]
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _write(_csv(header, rows), args.out)


def _patterns_from(args) -> PatternSet:
    """Pattern set from either a literal word list or --map/--hole."""
    if getattr(args, "patterns", None):
        return PatternSet.from_strings(args.patterns)
    if args.hole:
        spec = MapSpec.parse(args.map)
        return code_hole(spec, parse_hole(args.hole))
    raise SystemExit("need either a pattern list or --hole")


def cmd_corr(args) -> int:
    corr = autocorrelation(args.word)
    f = correlation_polynomial(args.word)
    tau = recurrence_time(args.word)
    bits = "".join(map(str, corr.bits))
    _write(f"[{bits}], {corr.number}, f(z) = {f}, tau={tau}\n", args.out)
    return 0


def cmd_count(args) -> int:
    ps = _patterns_from(args)
    profile = count_profile(ps, args.n_max)
    _emit(("n", "count"), list(enumerate(profile)), args)
    return 0


def cmd_survival(args) -> int:
    ps = _patterns_from(args)
    series = survival_series(ps, args.n_max)
    header = ("n", "count", "survival_numerator", "survival_denominator",
              "survival_float")
    _emit(header, list(series.rows()), args)
    return 0


def cmd_escape(args) -> int:
    ps = _patterns_from(args)
    report = escape_rate(ps, method=args.method)
    _write(json.dumps(report.as_dict(), indent=2) + "\n", args.out)
    return 0


def cmd_tau(args) -> int:
    spec = MapSpec.parse(args.map)
    hole = parse_hole(args.hole)
    geometric = poincare_time(spec, hole)
    try:
        combinatorial = code_hole(spec, hole).recurrence_time()
    except ValueError:
        combinatorial = None
    row = {"map": str(spec), "hole": args.hole, "geometric": geometric,
           "combinatorial": combinatorial,
           "match": combinatorial is None or geometric == combinatorial}
    if args.format == "json":
        _write(json.dumps(row, indent=2) + "\n", args.out)
    else:
        comb = "n/a" if combinatorial is None else combinatorial
        _write(f"geometric={geometric} combinatorial={comb} "
               f"match={row['match']}\n", args.out)
    return 0


def cmd_scan(args) -> int:
    if args.level > SCAN_LEVEL_LIMIT:
        raise SystemExit(f"--level tops out at {SCAN_LEVEL_LIMIT} "
                         f"(2^{args.level} holes is past the exact budget)")
    spec = MapSpec.parse(args.map)
    if spec.kind not in ("doubling", "expanding", "tent", "logistic"):
        raise SystemExit(f"scan sweeps interval-map cells, not {spec.kind}")
    rows = scan_level(args.level, alphabet=spec.alphabet)
    if spec.kind in ("tent", "logistic"):
        # cells of the folded maps code to different words than the
        # straight binary index; re-key each index through the map's coding
        by_word = {r.word: r for r in rows}
        rows = []
        for i in range(1, 2 ** args.level + 1):
            w = str(code_hole(spec, MarkovCylinder(args.level, i)).patterns[0])
            rows.append(dataclasses.replace(by_word[w], index=i))
    header = ("level", "index", "word", "tau", "corr_number", "theta", "rho",
              "rho_asymptotic")
    _emit(header, [(r.level, r.index, r.word, r.tau, r.corr_number,
                    r.theta, r.rho, r.rho_asymptotic) for r in rows], args)
    return 0


def _levels_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    n = int(text)
    return range(n, n + 1)


def cmd_local(args) -> int:
    if (args.size is None) == (args.x is None):
        raise SystemExit("pick one mode: --x with --levels, or --size")
    if args.x is not None:
        header = ("level", "word", "theta", "rho", "measure", "ratio")
        rows = []
        for level in _levels_range(args.levels):
            r = local_escape_ratio(args.x, level)
            rows.append((r.level, r.word, r.theta, r.rho, r.measure, r.ratio))
        _emit(header, rows, args)
        return 0

    lam = Fraction(args.size)
    if not 0 < lam < 1:
        raise SystemExit("--size must be a fraction in (0, 1)")
    # Any interval of length lam contains a full cell at this level:
    inner_level = max(1, math.ceil(math.log2(2 / lam)))
    header = ("x", "x_float", "inner_level", "inner_word", "rho_inner",
              "outer_level", "outer_word", "rho_outer",
              "ratio_lower", "ratio_upper")
    rows = []
    for j in range(args.grid):
        x = Fraction(j, args.grid)
        if x + lam > 1:
            break
        k_in = -((-x * 2 ** inner_level) // 1)  # first grid point >= x
        inner = Word.from_string(format(int(k_in), f"0{inner_level}b"))
        # deepest level whose cell around x still contains [x, x + lam)
        outer_level = 0
        while outer_level < inner_level:
            k = (x * 2 ** (outer_level + 1)) // 1
            if x + lam <= Fraction(int(k) + 1, 2 ** (outer_level + 1)):
                outer_level += 1
            else:
                break
        rho_in = rho_from_theta(theta_bracket(inner).value)
        if outer_level == 0:
            # straddles every binary grid line: no cylinder bound exists
            outer_word, rho_out = "", math.inf
        else:
            k = int((x * 2 ** outer_level) // 1)
            outer_word = format(k, f"0{outer_level}b")
            rho_out = rho_from_theta(theta_bracket(outer_word).value)
        rows.append((str(x), float(x), inner_level, str(inner), rho_in,
                     outer_level, outer_word, rho_out,
                     rho_in / float(lam), rho_out / float(lam)))
    _emit(header, rows, args)
    return 0


def cmd_mono(args) -> int:
    header = ("level", "min_rho", "max_rho_next", "gap")
    rows = []
    scans = {n: scan_level(n) for n in range(1, args.max_level + 2)}
    for n in range(1, args.max_level + 1):
        lo = min(r.rho for r in scans[n])
        hi = max(r.rho for r in scans[n + 1])
        rows.append((n, lo, hi, hi - lo))
    _emit(header, rows, args)
    return 0


def cmd_sizes(args) -> int:
    result = verify_mod.check_size_vs_rate()
    payload = {"passed": result.passed, "detail": result.detail}
    if args.format == "json":
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _write(result.line() + "\n", args.out)
    return 0 if result.passed else 1


def cmd_bighole(args) -> int:
    res = big_hole_small_rate(Fraction(args.epsilon), args.rate_bound,
                              MapSpec.parse(args.map))
    _write(json.dumps(res.as_dict(), indent=2) + "\n", args.out)
    return 0


def cmd_rotate(args) -> int:
    hole = parse_hole(args.hole)
    res = rotation_escape(Fraction(args.alpha), hole, grid=args.grid,
                          horizon=args.horizon,
                          hole_shift=Fraction(args.shift))
    if args.format == "json":
        payload = {"alpha": str(res.alpha), "grid": res.grid,
                   "escaped_all": res.escaped_all, "max_time": res.max_time,
                   "time_counts": {str(k): v
                                   for k, v in sorted(res.time_counts().items())}}
        _write(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        rows = sorted(res.time_counts().items())
        _write(_csv(("escape_time", "points"), rows), args.out)
        if args.out is None:
            sys.stdout.write(f"# escaped_all={res.escaped_all} "
                             f"max_time={res.max_time}\n")
    return 0 if res.escaped_all else 1


def cmd_mc(args) -> int:
    cfg = SimConfig(samples=args.samples, n_max=args.n_max, seed=args.seed)
    if getattr(args, "patterns", None):
        from .simulate import pattern_mc
        exact_ps = PatternSet.from_strings(args.patterns)
        est = pattern_mc(exact_ps, cfg)
    else:
        spec = MapSpec.parse(args.map)
        hole = parse_hole(args.hole)
        est = survival_mc(spec, hole, cfg)
        try:
            exact_ps = code_hole(spec, hole)
        except ValueError:
            exact_ps = None
    if args.format == "json":
        fit = escape_rate_fit(est)
        payload = {"label": est.label, "samples": est.samples,
                   "seed": est.seed, "fitted_rho": fit.rho,
                   "fit_window": list(fit.window)}
        if exact_ps is not None:
            exact = survival_series(exact_ps, est.n_max)
            report = escape_rate(exact_ps)
            payload["exact_rho"] = report.rho
            payload["max_z"] = est.max_z_against(exact.fractions())
            payload["within_3_sigma"] = payload["max_z"] <= 3.0
        _write(json.dumps(payload, indent=2) + "\n", args.out)
        return 0
    _emit(("n", "survivors", "s_hat", "ci_halfwidth"), list(est.rows()), args)
    return 0


def cmd_verify(args) -> int:
    try:
        results = verify_mod.run(args.suites or ["all"])
    except ValueError as exc:
        raise SystemExit(str(exc))
    lines = "".join(r.line() + "\n" for r in results)
    _write(lines, args.out)
    return 0 if all(r.passed for r in results) else 1


def _add_io_flags(p, default_format="csv"):
    p.add_argument("--format", choices=("csv", "json"), default=default_format)
    p.add_argument("--out", default=None, help="write to file instead of stdout")


def _add_hole_flags(p):
    p.add_argument("--map", default="doubling",
                   help="doubling | expand:m | tent | logistic | baker | rot:a")
    p.add_argument("--hole", default=None,
                   help="markov:N:i | interval:a:b | union:a:b;c:d | rect:N:M:i:j")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="escapelab",
        description="Exact escape rates for holes in chaotic maps.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("corr", help="correlation vector, number, polynomial, tau")
    p.add_argument("word")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_corr)

    p = sub.add_parser("count", help="exact counts of words avoiding the hole")
    p.add_argument("patterns", nargs="?", help="comma-separated words, e.g. 00,010")
    _add_hole_flags(p)
    p.add_argument("--n-max", type=int, default=40)
    _add_io_flags(p)
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("survival", help="exact survival series of the hole")
    p.add_argument("patterns", nargs="?")
    _add_hole_flags(p)
    p.add_argument("--n-max", type=int, default=40)
    _add_io_flags(p)
    p.set_defaults(fn=cmd_survival)

    p = sub.add_parser("escape", help="theta, rho and recurrence data as JSON")
    p.add_argument("patterns", nargs="?")
    _add_hole_flags(p)
    p.add_argument("--method", choices=("auto", "root", "matrix"), default="auto")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_escape)

    p = sub.add_parser("tau", help="first return time, geometric vs combinatorial")
    _add_hole_flags(p)
    p.add_argument("--format", choices=("csv", "json", "text"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_tau)

    p = sub.add_parser("scan", help="escape data for every hole of one level")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--map", default="doubling")
    _add_io_flags(p)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("local", help="escape rate over hole size around a point")
    p.add_argument("--x", default=None,
                   help="rational 'p/q', decimal, 'sqrt2-1', or 'digits:0110...'")
    p.add_argument("--levels", default="4..16", help="N range, e.g. 4..16")
    p.add_argument("--size", default=None,
                   help="fixed hole size p/q: sweep x, emit two-sided bounds")
    p.add_argument("--grid", type=int, default=256, help="sweep resolution")
    _add_io_flags(p)
    p.set_defaults(fn=cmd_local)

    p = sub.add_parser("mono", help="extreme rates of adjacent levels")
    p.add_argument("--max-level", type=int, default=10)
    _add_io_flags(p)
    p.set_defaults(fn=cmd_mono)

    p = sub.add_parser("sizes", help="bigger holes with smaller escape rates")
    _add_io_flags(p, default_format="json")
    p.set_defaults(fn=cmd_sizes)

    p = sub.add_parser("bighole", help="hole of measure > epsilon, rate < bound")
    p.add_argument("--epsilon", default="1/2")
    p.add_argument("--rate-bound", type=float, default=0.1)
    p.add_argument("--map", default="doubling")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_bighole)

    p = sub.add_parser("rotate", help="escape times under a circle rotation")
    p.add_argument("--alpha", default="514229/832040",
                   help="rotation angle as p/q or decimal")
    p.add_argument("--hole", default="interval:0:1/10")
    p.add_argument("--grid", type=int, default=100_000)
    p.add_argument("--horizon", type=int, default=100_000)
    p.add_argument("--shift", default="0", help="translate the hole by this amount")
    _add_io_flags(p)
    p.set_defaults(fn=cmd_rotate)

    p = sub.add_parser("mc", help="Monte Carlo survival, CSV or fit summary")
    p.add_argument("patterns", nargs="?")
    _add_hole_flags(p)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    _add_io_flags(p)
    p.set_defaults(fn=cmd_mc)

    p = sub.add_parser("verify", help="run acceptance checks, exit 0 iff all pass")
    p.add_argument("suites", nargs="*",
                   help=f"any of: {', '.join(verify_mod.SUITES)}, or 'all'")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
