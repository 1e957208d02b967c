"""Deterministic verification suites over the complete-graph and small-graph machinery.

Each suite returns a :class:`SuiteResult` listing every failed check; a
suite passes when that list is empty.  All comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from math import comb
from typing import Callable, Optional

from .complete import (
    CompleteCache,
    derivative_bound_holds,
    ratio_bound_polynomial,
    reliability_complete,
    sandwich_bound_holds,
    spanning_counts_complete,
)
from .graphs import (
    SimpleGraph,
    bridge_pair_counts,
    bridges,
    brute_force_spanning_counts,
    complete_graph,
    connected_graphs,
    cycle_graph,
    one_point_union,
    path_graph,
)
from .polycore import (
    ONE,
    Polynomial,
    differentiate,
    evaluate_exact,
    from_spanning_form,
    spanning_derivative,
    to_spanning_form,
)

SUITE_VERSION = 1


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    parameters: dict = field(default_factory=dict)
    version: int = SUITE_VERSION

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(what)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "version": self.version,
            "passed": self.passed,
            "checks": self.checks,
            "failures": list(self.failures),
            "parameters": dict(self.parameters),
        }


def _graph_reliability(g: SimpleGraph) -> Polynomial:
    return from_spanning_form(brute_force_spanning_counts(g))


def sandwich(n_max: int = 16, cache: Optional[CompleteCache] = None) -> SuiteResult:
    """``1 - (n+1)q^(n-1) <= r_n(q) <= 1 - (n-1)q^(n-1)`` on ``q = j/256``, ``0 <= j <= 32``."""
    res = SuiteResult("sandwich", parameters={"n_max": n_max, "grid": "j/256, j=0..32"})
    for n in range(2, n_max + 1):
        for j in range(33):
            q = Fraction(j, 256)
            res.check(sandwich_bound_holds(n, q, cache), f"n={n} q={q}")
    return res


def ratio(n_max: int = 12, cache: Optional[CompleteCache] = None) -> SuiteResult:
    """``C(n,2)^2 (1-q)^2 / 2 - r_n`` is non-negative on ``j/64`` and has non-negative spanning counts."""
    res = SuiteResult("ratio", parameters={"n_max": n_max, "grid": "j/64, j=0..64"})
    for n in range(3, n_max + 1):
        d = ratio_bound_polynomial(n, cache)
        for j in range(65):
            q = Fraction(j, 64)
            res.check(evaluate_exact(d, q) >= 0, f"n={n} q={q}")
        counts = to_spanning_form(d, comb(n, 2)).counts
        res.check(all(c >= 0 for c in counts), f"n={n} spanning counts {counts}")
    return res


def derivbound(n_max: int = 12, cache: Optional[CompleteCache] = None) -> SuiteResult:
    """``q(1-q)|f'(q)| <= m|f(q)|`` for ``r_n``, ``1 - r_n`` and ``-r_n'`` on ``j/64``."""
    res = SuiteResult("derivbound", parameters={"n_max": n_max, "grid": "j/64, j=0..64"})
    for n in range(2, n_max + 1):
        r = reliability_complete(n, cache)
        m = comb(n, 2)
        cases = [("r", r, m), ("1-r", ONE - r, m), ("-r'", differentiate(r).scale(-1), m - 1)]
        for label, f, deg in cases:
            for j in range(65):
                q = Fraction(j, 64)
                res.check(derivative_bound_holds(f, deg, q), f"n={n} f={label} q={q}")
    return res


def endpoints(n_max: int = 5) -> SuiteResult:
    """``f'(0) = 0`` iff bridgeless, and ``f'(1) = 0`` with at least three vertices."""
    res = SuiteResult("endpoints", parameters={"max_vertices": n_max})
    for g in connected_graphs(n_max):
        if g.m == 0:
            continue
        fp = differentiate(_graph_reliability(g))
        bridgeless = not bridges(g)
        res.check((evaluate_exact(fp, 0) == 0) == bridgeless, f"f'(0) vs bridges for {g.to_json()}")
        if g.vertex_count >= 3:
            res.check(evaluate_exact(fp, 1) == 0, f"f'(1) != 0 for {g.to_json()}")
    return res


def derivative_signs(n_max: int = 10, cache: Optional[CompleteCache] = None) -> SuiteResult:
    """Every spanning-derivative count of ``r_n`` is non-positive."""
    res = SuiteResult("derivative-signs", parameters={"n_max": n_max})
    for n in range(2, n_max + 1):
        counts = spanning_derivative(spanning_counts_complete(n, cache)).counts
        res.check(all(c <= 0 for c in counts), f"n={n} counts {counts}")
    return res


def _small_graphs() -> list[tuple[str, SimpleGraph]]:
    return [
        ("K2", complete_graph(2)),
        ("K3", complete_graph(3)),
        ("P3", path_graph(3)),
        ("P4", path_graph(4)),
        ("C4", cycle_graph(4)),
        ("K4", complete_graph(4)),
        ("K4-e", SimpleGraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3)))),
        ("paw", SimpleGraph(4, ((0, 1), (1, 2), (0, 2), (2, 3)))),
    ]


def product_pairs() -> list[tuple[str, SimpleGraph, str, SimpleGraph]]:
    """The fixed list of 20 graph pairs used by the product-law suite."""
    gs = _small_graphs()
    pairs = []
    for i in range(len(gs)):
        for j in range(i, len(gs)):
            (a, g), (b, h) = gs[i], gs[j]
            if g.m + h.m <= 10:
                pairs.append((a, g, b, h))
    return pairs[:20]


def product_law() -> SuiteResult:
    """``R(G*H) = R(G) R(H)`` for every attachment choice, from brute-force counts."""
    res = SuiteResult("product-law", parameters={"pairs": 0})
    pairs = product_pairs()
    res.parameters["pairs"] = len(pairs)
    for a, g, b, h in pairs:
        expected = _graph_reliability(g) * _graph_reliability(h)
        for u, w in cartesian(range(g.vertex_count), range(h.vertex_count)):
            union = one_point_union([g, h], [u, w])
            res.check(_graph_reliability(union) == expected, f"{a}*{b} attached at ({u}, {w})")
    return res


def bridge_pairs(n_max: int = 10) -> SuiteResult:
    """Bridge-pair counts equal minus the spanning-derivative counts (graphs on <= 5 vertices, ``m <= n_max``)."""
    res = SuiteResult("bridge-pairs", parameters={"max_edges": n_max, "max_vertices": 5})
    for g in connected_graphs(5, n_max):
        if g.m == 0:
            continue
        deriv = spanning_derivative(brute_force_spanning_counts(g)).counts
        pairs = bridge_pair_counts(g)
        res.check(pairs == [int(-c) for c in deriv], f"{g.to_json()}: {pairs} vs {list(deriv)}")
    return res


def oracle(n_max: int = 6, cache: Optional[CompleteCache] = None) -> SuiteResult:
    """Recurrence against enumeration, Cayley's count, and sanity of small-graph reliabilities."""
    res = SuiteResult("oracle", parameters={"n_max": n_max, "cayley_n_max": max(10, n_max)})
    for n in range(2, n_max + 1):
        rec = spanning_counts_complete(n, cache)
        res.check(rec == brute_force_spanning_counts(complete_graph(n)), f"K{n} spanning counts")
    for n in range(2, max(10, n_max) + 1):
        counts = spanning_counts_complete(n, cache).counts
        res.check(counts[n - 1] == n ** (n - 2), f"K{n}: N_(n-1) = {counts[n - 1]}")
    for g in connected_graphs(5):
        f = _graph_reliability(g)
        values = [evaluate_exact(f, Fraction(j, 4)) for j in range(5)]
        res.check(all(0 <= v <= 1 for v in values), f"{g.to_json()} values {values}")
        res.check(values[0] == 1, f"{g.to_json()} f(0) = {values[0]}")
        if g.vertex_count >= 2:
            res.check(values[4] == 0, f"{g.to_json()} f(1) = {values[4]}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "sandwich": sandwich,
    "ratio": ratio,
    "derivbound": derivbound,
    "endpoints": endpoints,
    "derivative-signs": derivative_signs,
    "product-law": product_law,
    "bridge-pairs": bridge_pairs,
    "oracle": oracle,
}


def run_suite(name: str, n_max: Optional[int] = None, cache: Optional[CompleteCache] = None) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    kwargs = {}
    if n_max is not None and name != "product-law":
        kwargs["n_max"] = n_max
    if name in ("sandwich", "ratio", "derivbound", "derivative-signs", "oracle"):
        kwargs["cache"] = cache
    return fn(**kwargs)
