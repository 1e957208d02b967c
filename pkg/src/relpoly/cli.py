"""Command-line front end: ``relpoly <command> ...``.

Exit status is 0 on success, 1 when a verification or search fails and 2
on usage errors (bad flags, malformed specs, out-of-range values).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, TextIO

import mpmath

from . import __version__
from .analysis import (
    SearchBudget,
    SpecParseError,
    construction_search,
    count_inflections,
    find_theorem_params,
    parse_spec,
    product_reliability,
)
from .analysis.reliability import exact_value, mp_value
from .complete import CACHE_ENV, default_cache, load_cache, reliability_complete, spanning_counts_complete
from .graphs import brute_force_spanning_counts, load_graph, monte_carlo_reliability, MAX_BRUTE_EDGES
from .polycore import DegreeCeilingError, evaluate_exact, format_poly, from_spanning_form, poly_to_json
from .verify import SUITES, run_suite

DEFAULT_DIGITS = 50
#: exact sampling is attempted while the powers stay below this many bits
SAMPLE_EXACT_BITS = 100_000


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    """``"1/8"``, ``"0.125"`` or ``"125e-3"`` as an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def integer(text: str) -> int:
    try:
        return int(text.strip().replace(",", "").replace("_", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _spec(text: str):
    try:
        return parse_spec(text)
    except SpecParseError as exc:
        raise UsageError(f"--spec: {exc}") from None


def _dump(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


# ----------------------------------------------------------------------
# commands

def cmd_complete(args, out: TextIO) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    cache = default_cache()
    if args.n > cache.max_n:
        raise UsageError(f"--n {args.n} exceeds the configured maximum {cache.max_n}")
    if args.basis == "power":
        p = reliability_complete(args.n, cache)
        if args.out == "json":
            _dump({"n": args.n, "basis": "power", "poly": poly_to_json(p)}, out)
        else:
            out.write(format_poly(p) + "\n")
        return 0
    if args.n < 2:
        raise UsageError("--basis spanning needs --n >= 2")
    s = spanning_counts_complete(args.n, cache)
    if args.out == "json":
        _dump({"n": args.n, "basis": "spanning", **s.to_json()}, out)
    else:
        out.write(f"m = {s.m}\n")
        out.write("N = [" + ", ".join(str(c) for c in s.int_counts()) + "]\n")
    return 0


def cmd_product(args, out: TextIO) -> int:
    spec = _spec(args.spec)
    try:
        p = product_reliability(spec)
    except DegreeCeilingError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    if args.json:
        _dump({"spec": str(spec), "degree": p.degree, "poly": poly_to_json(p)}, out)
    else:
        out.write(format_poly(p) + "\n")
    return 0


def cmd_inflect(args, out: TextIO) -> int:
    spec = _spec(args.spec)
    report = count_inflections(spec)
    if args.json:
        _dump({"spec": str(spec), **report.to_json()}, out)
        return 0
    out.write(f"spec: {spec}\n")
    out.write(f"inflections: {report.sign_changes}\n")
    for lo, hi in report.isolating_intervals:
        out.write(f"  ({lo}, {hi})  ~ {float(lo):.6g} .. {float(hi):.6g}\n")
    return 0


def _fmt(x, digits: int) -> str:
    if isinstance(x, Fraction):
        if x == 0:
            return "0.0"
        with mpmath.workdps(digits + 10):
            x = mpmath.mpf(x.numerator) / x.denominator
    return mpmath.nstr(x, digits)


def sample_rows(spec, deriv: int, points: int, digits: int = DEFAULT_DIGITS) -> list[tuple[str, str]]:
    """``(q_j, g^(deriv)(q_j))`` for ``q_j = j/(points-1)`` as decimal strings."""
    if points < 2:
        raise ValueError("points must be at least 2")
    if deriv not in (0, 1, 2):
        raise ValueError("deriv must be 0, 1 or 2")
    rows = []
    for j in range(points):
        q = Fraction(j, points - 1)
        try:
            v = exact_value(spec, q, deriv, max_power_bits=SAMPLE_EXACT_BITS)
        except OverflowError:
            v = mp_value(spec, q, deriv, dps=digits)
        rows.append((_fmt(q, digits), _fmt(v, digits)))
    return rows


def sample_csv(spec, deriv: int, points: int, digits: int = DEFAULT_DIGITS) -> str:
    lines = [f"# spec={spec} deriv={deriv} points={points} digits={digits}", "q,value"]
    lines += [f"{q},{v}" for q, v in sample_rows(spec, deriv, points, digits)]
    return "\n".join(lines) + "\n"


def cmd_sample(args, out: TextIO) -> int:
    spec = _spec(args.spec)
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    if args.digits < 1:
        raise UsageError("--digits must be positive")
    text = sample_csv(spec, args.deriv, args.points, args.digits)
    if args.output:
        Path(args.output).write_bytes(text.encode("ascii"))
    else:
        out.write(text)
    return 0


def cmd_verify(args, out: TextIO) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = [run_suite(name, args.n_max) for name in names]
    if args.json:
        _dump([r.to_json() for r in results], out)
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            out.write(f"{status} {r.name} (v{r.version}): {r.checks} checks, {len(r.failures)} failures\n")
            for f in r.failures[:20]:
                out.write(f"  {f}\n")
    return 0 if all(r.passed for r in results) else 1


def cmd_search(args, out: TextIO) -> int:
    if args.target < 0:
        raise UsageError("--target must be non-negative")
    budget = SearchBudget(
        max_n=args.max_n,
        max_exponent_bits=args.max_exponent_bits,
        max_factors=args.max_factors,
        max_candidates=args.budget,
        time_limit=args.time_limit,
    )
    state = construction_search(args.target, budget=budget, fallback=not args.no_fallback)
    _dump(state.to_json(), out)
    return 0 if state.success else 1


def cmd_theorem_params(args, out: TextIO) -> int:
    a, b, eps = args.a, args.b, args.eps
    if not 0 < a < b < Fraction(1, 8):
        raise UsageError("--a/--b: need 0 < a < b < 1/8")
    if eps <= 0:
        raise UsageError("--eps must be positive")
    res = find_theorem_params(a, b, eps, max_i=args.max_i)
    base_ok = a ** res.k < Fraction(1, res.N) < b ** res.k
    doc = res.to_json()
    doc["base_check"] = {"a^k < 1/N < b^k": base_ok}
    _dump(doc, out)
    return 0 if res.success and base_ok else 1


def cmd_mc(args, out: TextIO) -> int:
    try:
        g = load_graph(args.graph)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"--graph: {exc}") from None
    if not 0 <= args.q <= 1:
        raise UsageError("--q must lie in [0, 1]")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    est = monte_carlo_reliability(g, args.q, args.trials, args.seed)
    doc = {"graph": g.to_json(), **est.to_json()}
    if g.m <= MAX_BRUTE_EDGES and g.m <= 20:
        exact = evaluate_exact(from_spanning_form(brute_force_spanning_counts(g)), args.q)
        doc["exact"] = str(exact)
        se = float(est.std_error)
        doc["z_score"] = None if se == 0 else (float(est.estimate) - float(exact)) / se
    _dump(doc, out)
    return 0


def cmd_cache(args, out: TextIO) -> int:
    path = Path(args.path)
    if args.action == "clear":
        existed = path.exists()
        if existed:
            path.unlink()
        _dump({"path": str(path), "cleared": existed}, out)
        return 0
    try:
        cache = load_cache(path)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    _dump({"path": str(path), "exists": path.exists(), "entries": sorted(cache.entries)}, out)
    return 0


# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="relpoly",
        description="Exact all-terminal reliability of complete graphs and their one-point unions.",
        epilog=f"Set ${CACHE_ENV} to a JSON file to reuse complete-graph polynomials across runs.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    c = sub.add_parser("complete", help="reliability polynomial r_n of K_n")
    c.add_argument("--n", type=integer, required=True)
    c.add_argument("--basis", choices=("power", "spanning"), default="power")
    c.add_argument("--out", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_complete)

    c = sub.add_parser("product", help="expanded reliability of a product spec")
    c.add_argument("--spec", required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_product)

    c = sub.add_parser("inflect", help="exact count of sign changes of g'' on (0, 1)")
    c.add_argument("--spec", required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_inflect)

    c = sub.add_parser("sample", help="CSV samples of g, g' or g'' on an even grid")
    c.add_argument("--spec", required=True)
    c.add_argument("--deriv", type=int, choices=(0, 1, 2), default=2)
    c.add_argument("--points", type=integer, default=201)
    c.add_argument("--digits", type=integer, default=DEFAULT_DIGITS)
    c.add_argument("--out", choices=("csv",), default="csv")
    c.add_argument("--output", help="write to this file instead of stdout")
    c.set_defaults(func=cmd_sample)

    c = sub.add_parser("verify", help="run a verification suite")
    c.add_argument("--suite", required=True, choices=tuple(SUITES) + ("all",))
    c.add_argument("--n-max", type=integer, default=None)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("search", help="grow a product with at least TARGET inflection points")
    c.add_argument("--target", type=integer, required=True)
    c.add_argument("--budget", type=integer, default=SearchBudget.max_candidates, help="maximum candidates examined")
    c.add_argument("--time-limit", type=float, default=SearchBudget.time_limit, help="seconds")
    c.add_argument("--max-n", type=integer, default=SearchBudget.max_n)
    c.add_argument("--max-exponent-bits", type=integer, default=SearchBudget.max_exponent_bits)
    c.add_argument("--max-factors", type=integer, default=SearchBudget.max_factors)
    c.add_argument("--no-fallback", action="store_true", help="do not fall back to known witnesses")
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("theorem-params", help="find n = ik, l = N^i meeting the five bound conditions")
    c.add_argument("--a", type=rational, required=True)
    c.add_argument("--b", type=rational, required=True)
    c.add_argument("--eps", type=rational, required=True)
    c.add_argument("--max-i", type=integer, default=400)
    c.set_defaults(func=cmd_theorem_params)

    c = sub.add_parser("mc", help="Monte Carlo reliability estimate for a graph file")
    c.add_argument("--graph", required=True)
    c.add_argument("--q", type=rational, required=True)
    c.add_argument("--trials", type=integer, required=True)
    c.add_argument("--seed", type=integer, required=True)
    c.set_defaults(func=cmd_mc)

    c = sub.add_parser("cache", help="inspect or remove a complete-graph cache file")
    c.add_argument("--path", required=True)
    c.add_argument("action", choices=("show", "clear"))
    c.set_defaults(func=cmd_cache)
    return p


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"relpoly {args.command}: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
