"""Greedy construction of complete-graph products with many inflection points.

The product is grown one factor at a time, ``g_k = K_n^l * g_(k-1)``.
Alongside it we keep checkpoints ``q_0 < q_1 < ... < q_k`` below 1/8 with

* ``g_k''(q_i) > 0`` for every ``i``;
* ``g_k'(q_i) - g_k'(q_(i-1)) < 0`` for every consecutive pair.

The second condition is the integral of ``g_k''`` over ``[q_(i-1), q_i]``,
so ``g_k''`` is negative somewhere in between and each gap carries two sign
changes.  A base factor with ``n >= 3`` is concave at 0 and convex at
``q_0``, which adds one more: step ``k`` guarantees ``2k + 1``.

Floating point only proposes checkpoints.  Signs of ``P`` are exact, and
each derivative difference is decided either exactly or with outward
rounded intervals at escalating precision.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from mpmath import iv

from ..complete import CompleteCache, reliability_complete
from ..polycore import DEFAULT_DEGREE_CEILING, InflectionReport, evaluate_exact, sign_at
from .reliability import count_inflections, endpoint_jet, exact_value, log_derivative, mp_value
from .spec import ProductSpec, parse_spec
from .theorem import ALPHA, PRECISIONS, _ivprec, _ivq, fraction_decimal

#: known witnesses with 3, 4 and 5 inflection points
FALLBACK_SPECS = (
    "K2^5*K3^4*K4^3*K5^92",
    "K2^2*K4^2*K14^750",
    "K2^5*K3^4*K5^116*K14^100000000",
)
ENUMERATION_ORDER = (
    "step 0: n = 3, 4, ..., l = 2^e for e = 0, 1, ...; "
    "step k >= 1: n = 3, 4, ..., l = 2^e with the float collapse estimate "
    "(n l)^(-1/(n-1)) in [0.7 q_(k-1), 1.5 b_k], stopping e once an old checkpoint fails; "
    "checkpoint = grid point of I_k with the largest g'' among those passing"
)
#: exact powers are used below this many bits, certified intervals above
EXACT_BITS = 200_000


def window(k: int) -> tuple[Fraction, Fraction]:
    """``I_(k,1)``: dyadic windows below 1/8 starting at ``a_(0,1) = 1/64``.

    ``a_(k,1) = 1/8 - (7/64) 2^-k`` and ``b_(k,1) = a_(k+1,1)``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    a = ALPHA - Fraction(7, 64) / 2 ** k
    b = ALPHA - Fraction(7, 64) / 2 ** (k + 1)
    return a, b


def nested_intervals(k: int, q: Fraction, depth: int) -> list[tuple[Fraction, Fraction]]:
    """``I_(k,1) ⊇ I_(k,2) ⊇ ... ⊇ I_(k,depth)``, each the half of its parent holding ``q``.

    A point on the midpoint goes to the right half, so the grid cell whose
    left end is ``q`` is the last entry when ``depth = 1 + log2(grid)``.
    """
    a, b = window(k)
    if not a <= q < b:
        raise ValueError(f"checkpoint {q} outside I_({k},1) = [{a}, {b})")
    out = [(a, b)]
    for _ in range(depth - 1):
        mid = (a + b) / 2
        a, b = (mid, b) if q >= mid else (a, mid)
        out.append((a, b))
    return out


# ----------------------------------------------------------------------
# certified values of g' and g''

def _enclose(spec: ProductSpec, q: Fraction, deriv: int, prec: int, cache: Optional[CompleteCache]):
    ld = log_derivative(spec, cache)
    qv = evaluate_exact(ld.Q, q)
    if deriv == 0:
        ratio = Fraction(1)
    elif deriv == 1:
        ratio = evaluate_exact(ld.A, q) / qv
    else:
        ratio = evaluate_exact(ld.P, q) / (qv * qv)
    with _ivprec(prec):
        log_g = iv.mpf(0)
        for n, l in spec.merged().factors:
            log_g += l * iv.log(_ivq(evaluate_exact(reliability_complete(n, cache), q)))
        return iv.exp(log_g) * _ivq(ratio)


def _exact_feasible(spec: ProductSpec, q: Fraction) -> bool:
    if q in (0, 1):
        return True
    bits = q.denominator.bit_length() + q.numerator.bit_length()
    return sum(l * (n * (n - 1) // 2) * bits for n, l in spec.merged().factors) <= EXACT_BITS


def _value(spec, q, deriv, cache):
    """Exact ``g^(deriv)(q)`` or ``None`` when the powers are too large to form."""
    if _exact_feasible(spec, q):
        return exact_value(spec, q, deriv, cache)
    return None


def derivative_difference_sign(
    spec: ProductSpec, lo: Fraction, hi: Fraction, cache: Optional[CompleteCache] = None
) -> Optional[int]:
    """Sign of ``g'(hi) - g'(lo)``, or ``None`` if no tried precision decides it."""
    x, y = _value(spec, lo, 1, cache), _value(spec, hi, 1, cache)
    if x is not None and y is not None:
        d = y - x
        return (d > 0) - (d < 0)
    for prec in PRECISIONS:
        with _ivprec(prec):
            d = _enclose(spec, hi, 1, prec, cache) - _enclose(spec, lo, 1, prec, cache)
            if d < 0:
                return -1
            if d > 0:
                return 1
    return None


def _abs_at_most(spec, q, deriv, eps, cache) -> tuple[Optional[bool], str]:
    v = _value(spec, q, deriv, cache)
    if v is not None:
        return abs(v) <= eps, fraction_decimal(v)
    text = ""
    for prec in PRECISIONS:
        with _ivprec(prec):
            val = abs(_enclose(spec, q, deriv, prec, cache))
            text = str(val)
            bound = _ivq(eps)
            if val <= bound:
                return True, text
            if val > bound:
                return False, text
    return None, text


# ----------------------------------------------------------------------
# properties of a building block

@dataclass
class PropertyCheck:
    name: str
    holds: Optional[bool]
    value: str

    def to_json(self) -> dict:
        return {"name": self.name, "holds": self.holds, "value": self.value}


@dataclass
class SPropertiesReport:
    spec: ProductSpec
    interval: tuple[Fraction, Fraction]
    eps: Fraction
    grid: int
    checks: list[PropertyCheck] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)

    def to_json(self) -> dict:
        return {
            "spec": str(self.spec),
            "interval": [str(self.interval[0]), str(self.interval[1])],
            "eps": str(self.eps),
            "grid": self.grid,
            "all_hold": self.all_hold,
            "checks": [c.to_json() for c in self.checks],
            "violations": list(self.violations),
        }


def verify_s_properties(
    spec: ProductSpec,
    interval: tuple,
    eps,
    grid: int = 64,
    cache: Optional[CompleteCache] = None,
) -> SPropertiesReport:
    """Check ``s(0) = 1``, ``s(1) = 0``, ``s'(0) = s'(1) = 0`` and ``|s''| <= eps`` off the interval.

    Endpoint facts come from exact jets.  The bound on ``s''`` is checked
    at ``j/grid`` for the grid points outside the open ``interval``.
    A factor ``K2`` has a bridge, so ``s'(0) = 0`` fails; that is listed
    in ``violations`` rather than skipped.
    """
    a, b = Fraction(interval[0]), Fraction(interval[1])
    eps = Fraction(eps)
    if not 0 <= a < b <= 1:
        raise ValueError("need 0 <= a < b <= 1")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if grid < 1:
        raise ValueError("grid must be positive")
    rep = SPropertiesReport(spec, (a, b), eps, grid)
    j0 = endpoint_jet(spec, 0, 2, cache)
    j1 = endpoint_jet(spec, 1, 2, cache)
    for name, value, want in (
        ("s(0) = 1", j0[0], 1),
        ("s(1) = 0", j1[0], 0),
        ("s'(0) = 0", j0[1], 0),
        ("s'(1) = 0", j1[1], 0),
    ):
        ok = value == want
        rep.checks.append(PropertyCheck(name, ok, str(value)))
        if not ok:
            rep.violations.append(f"{name} fails: value {value}")
    if spec.has_bridge() and j0[1] != 0:
        rep.violations.append("a K2 factor is a bridge, so s'(0) != 0")
    for j in range(grid + 1):
        q = Fraction(j, grid)
        if a < q < b:
            continue
        ok, text = _abs_at_most(spec, q, 2, eps, cache)
        rep.checks.append(PropertyCheck(f"|s''({q})| <= {eps}", ok, text))
        if not ok:
            rep.violations.append(f"s''({q}) = {text} has modulus above {eps}" if ok is False else f"|s''({q})| undecided")
    return rep


# ----------------------------------------------------------------------
# the search

@dataclass(frozen=True)
class SearchBudget:
    max_n: int = 64
    max_exponent_bits: int = 400
    max_factors: int = 8
    max_candidates: int = 20_000
    time_limit: float = 480.0
    grid: int = 32


@dataclass
class ConstructionState:
    spec: Optional[ProductSpec]
    checkpoints: list[Fraction] = field(default_factory=list)
    intervals: list[list[tuple[Fraction, Fraction]]] = field(default_factory=list)
    history: list[str] = field(default_factory=list)
    target: int = 0
    report: Optional[InflectionReport] = None
    candidates_tried: int = 0
    fallback_used: bool = False
    greedy_spec: Optional[str] = None
    greedy_count: Optional[int] = None
    stop_reason: str = ""
    elapsed: float = 0.0

    @property
    def achieved(self) -> int:
        return self.report.sign_changes if self.report is not None else 0

    @property
    def success(self) -> bool:
        return self.report is not None and self.achieved >= self.target

    def check_invariants(self) -> None:
        cps = self.checkpoints
        if any(not 0 < q < ALPHA for q in cps):
            raise AssertionError("checkpoint outside (0, 1/8)")
        if any(x >= y for x, y in zip(cps, cps[1:])):
            raise AssertionError("checkpoints not strictly increasing")
        for fam in self.intervals:
            for m, (a, b) in enumerate(fam, start=1):
                if not a < b or b - a > Fraction(1, 2 ** m):
                    raise AssertionError(f"interval I_m={m} = [{a}, {b}] violates width bound")
            for (a1, b1), (a2, b2) in zip(fam, fam[1:]):
                if not (a1 <= a2 and b2 <= b1):
                    raise AssertionError("intervals not nested")

    def to_json(self) -> dict:
        return {
            "spec": str(self.spec) if self.spec is not None else None,
            "target": self.target,
            "inflections": self.achieved,
            "success": self.success,
            "fallback_used": self.fallback_used,
            "checkpoints": [str(q) for q in self.checkpoints],
            "intervals": [[[str(a), str(b)] for a, b in fam] for fam in self.intervals],
            "history": list(self.history),
            "greedy_spec": self.greedy_spec,
            "greedy_inflections": self.greedy_count,
            "candidates_tried": self.candidates_tried,
            "enumeration_order": ENUMERATION_ORDER,
            "stop_reason": self.stop_reason,
            "elapsed_seconds": round(self.elapsed, 3),
            "report": self.report.to_json() if self.report is not None else None,
        }


class _Budget:
    def __init__(self, budget: SearchBudget):
        self.b = budget
        self.start = time.monotonic()
        self.tried = 0

    def spend(self) -> bool:
        self.tried += 1
        return self.tried <= self.b.max_candidates and time.monotonic() - self.start <= self.b.time_limit


def _window_grid(k: int, grid: int, above: Fraction) -> list[Fraction]:
    a, b = window(k)
    return [x for x in (a + (b - a) * Fraction(j, grid) for j in range(grid)) if x > above]


def _best_checkpoint(spec, points, cache, accept) -> Optional[Fraction]:
    """Among ``points`` with ``P > 0`` and ``accept(x)``, the one where ``g''`` looks largest."""
    P = log_derivative(spec, cache).P
    best = None
    for x in points:
        if sign_at(P, x) > 0 and accept(x):
            v = mp_value(spec, x, 2, cache, dps=20)
            if best is None or v > best[0]:
                best = (v, x)
    return best[1] if best else None


def _base_step(state: ConstructionState, budget: _Budget, cache) -> bool:
    grid = _window_grid(0, budget.b.grid, Fraction(0))
    for n in range(3, budget.b.max_n + 1):
        for e in range(budget.b.max_exponent_bits + 1):
            if not budget.spend():
                return False
            spec = ProductSpec(((n, 2 ** e),))
            q = _best_checkpoint(spec, grid, cache, lambda x: True)
            if q is not None:
                state.spec = spec
                state.checkpoints = [q]
                return True
    return False


def _extend_step(state: ConstructionState, k: int, budget: _Budget, cache) -> bool:
    cps = state.checkpoints
    lo = cps[-1]
    a, b = window(k)
    grid = _window_grid(k, budget.b.grid, lo)
    if not grid:
        return False
    for n in range(3, budget.b.max_n + 1):
        for e in range(budget.b.max_exponent_bits + 1):
            # float estimate of where n l q^(n-1) ~ 1; only proposes
            collapse = math.exp(-(math.log(n) + e * math.log(2)) / (n - 1))
            if collapse > 1.5 * float(b):
                continue
            if collapse < 0.7 * float(lo):
                break
            if not budget.spend():
                return False
            spec = state.spec.times(n, 2 ** e)
            merged = spec.merged()
            P = log_derivative(merged, cache).P
            if any(sign_at(P, q) <= 0 for q in cps):
                break
            if any(derivative_difference_sign(merged, x, y, cache) != -1 for x, y in zip(cps, cps[1:])):
                continue
            g_lo = mp_value(merged, lo, 1, cache, dps=20)
            q = _best_checkpoint(merged, grid, cache, lambda x: mp_value(merged, x, 1, cache, dps=20) < g_lo)
            if q is None:
                continue
            if derivative_difference_sign(merged, lo, q, cache) != -1:
                continue
            state.spec = spec
            state.checkpoints = cps + [q]
            return True
    return False


def construction_search(
    target: int,
    cache: Optional[CompleteCache] = None,
    budget: Optional[SearchBudget] = None,
    fallback: bool = True,
) -> ConstructionState:
    """Grow a product until its exact inflection count reaches ``target``.

    Every step adds exactly one factor.  If the budget runs out first and
    ``fallback`` is set, the known witnesses in :data:`FALLBACK_SPECS` are
    tried in order; the greedy result is kept in ``greedy_spec``.
    """
    if target < 0:
        raise ValueError("target must be non-negative")
    budget = budget or SearchBudget()
    if budget.grid < 2 or budget.grid & (budget.grid - 1):
        raise ValueError("grid must be a power of two")
    depth = 1 + budget.grid.bit_length() - 1
    meter = _Budget(budget)
    state = ConstructionState(spec=None, target=target)

    ok = _base_step(state, meter, cache)
    k = 0
    while ok:
        state.intervals.append(nested_intervals(k, state.checkpoints[k], depth))
        state.history.append(str(state.spec))
        state.report = count_inflections(state.spec, cache, cross_check=False)
        if state.achieved >= target:
            state.stop_reason = "target reached"
            break
        if k + 1 >= budget.max_factors:
            ok = False
            break
        k += 1
        ok = _extend_step(state, k, meter, cache)
    if not ok:
        state.stop_reason = "budget exhausted"
    state.candidates_tried = meter.tried
    state.check_invariants()
    if state.spec is not None:
        state.greedy_spec = str(state.spec)
        state.greedy_count = state.achieved
    if not state.success and fallback:
        for text in FALLBACK_SPECS:
            spec = parse_spec(text)
            report = count_inflections(spec, cache, cross_check=False)
            if report.sign_changes >= target:
                state.spec = spec
                state.report = report
                state.fallback_used = True
                state.checkpoints = []
                state.intervals = []
                state.stop_reason += "; known witness used"
                break
    state.elapsed = time.monotonic() - meter.start
    return state


def exact_inflection_recount(state: ConstructionState, cache: Optional[CompleteCache] = None,
                             ceiling: int = DEFAULT_DEGREE_CEILING) -> int:
    """Recount with the expanded cross-check whenever the degree allows."""
    return count_inflections(state.spec, cache, cross_check=True, ceiling=ceiling).sign_changes
