"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.
"""

import io
import json
import sys
import time
from fractions import Fraction as F

import pytest

from relpoly.analysis import construction_search, count_inflections, find_theorem_params, parse_spec
from relpoly.cli import run
from relpoly.complete import reliability_complete
from relpoly.graphs import (
    bridge_pair_counts,
    brute_force_spanning_counts,
    complete_graph,
    connected_graphs,
    monte_carlo_reliability,
)
from relpoly.polycore import evaluate_exact, spanning_derivative
from relpoly.verify import run_suite

MC_SEEDS = {4: 20_261_017, 5: 20_261_018}
MC_TRIALS = 1_000_000


RESULTS: list[str] = []
_capsys = None


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def report(number, title, ok, detail, started):
    line = f"criterion {number} [{title}]: {'PASS' if ok else 'FAIL'} ({detail}; {time.monotonic() - started:.1f}s)"
    RESULTS.append(line)
    if _capsys is not None:
        with _capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    assert ok, line


def suites(*names, **kwargs):
    results = [run_suite(n, **kwargs) for n in names]
    return all(r.passed for r in results), ", ".join(f"{r.name} {r.checks} checks" for r in results)


def test_criterion_1_known_witness_counts():
    t = time.monotonic()
    wanted = {"K2^5*K3^4*K4^3*K5^92": 3, "K2^2*K4^2*K14^750": 4, "K2^5*K3^4*K5^116*K14^100000000": 5}
    got = {}
    for text, minimum in wanted.items():
        out = io.StringIO()
        code = run(["inflect", "--spec", text, "--json"], out)
        got[text] = json.loads(out.getvalue())["sign_changes"] if code == 0 else None
    ok = all(got[s] is not None and got[s] >= m for s, m in wanted.items())
    report(1, "inflection counts of the three witnesses", ok, "counts " + "/".join(str(got[s]) for s in wanted), t)


def test_criterion_2_recurrence_vs_oracle():
    t = time.monotonic()
    ok, detail = suites("oracle", n_max=6)
    report(2, "recurrence vs brute force, Cayley", ok, detail, t)


def test_criterion_3_sandwich():
    t = time.monotonic()
    ok, detail = suites("sandwich", n_max=16)
    report(3, "sandwich bound", ok, detail, t)


def test_criterion_4_ratio_and_derivative_bounds():
    t = time.monotonic()
    ok, detail = suites("ratio", "derivbound", n_max=12)
    report(4, "ratio and derivative bounds", ok, detail, t)


def test_criterion_5_structural_derivative_facts():
    t = time.monotonic()
    ok, detail = suites("derivative-signs", n_max=10)
    ok_e, detail_e = suites("endpoints", n_max=5)
    ok_b, detail_b = suites("bridge-pairs", n_max=10)
    # widen the bridge-pair corpus to six vertices for graphs with at most 8 edges
    extra = 0
    ok_x = True
    for g in connected_graphs(6, 8):
        if g.vertex_count < 6:
            continue
        extra += 1
        deriv = spanning_derivative(brute_force_spanning_counts(g)).counts
        ok_x &= bridge_pair_counts(g) == [-c for c in deriv]
    report(5, "structural derivative facts", ok and ok_e and ok_b and ok_x,
           f"{detail}, {detail_e}, {detail_b}, {extra} six-vertex graphs", t)


def test_criterion_6_product_law():
    t = time.monotonic()
    ok, detail = suites("product-law")
    res = run_suite("product-law")
    report(6, "product law", ok and res.parameters["pairs"] == 20, f"{res.parameters['pairs']} pairs, {detail}", t)


def test_criterion_7_theorem_witness():
    t = time.monotonic()
    out = io.StringIO()
    code = run(["theorem-params", "--a", "1/32", "--b", "1/16", "--eps", "1/100"], out)
    doc = json.loads(out.getvalue())
    N, k, i = doc["N"], doc["k"], doc["i"]
    base_ok = F(1, 32) ** k < F(1, N) < F(1, 16) ** k
    res = find_theorem_params(F(1, 32), F(1, 16), F(1, 100))
    certified = all(c["holds"] and c["decided"] for c in doc["conditions"]["checks"])
    ok = code == 0 and certified and base_ok and (N, k, i) == (17, 1, 56) == (res.N, res.k, res.i)
    report(7, "theorem parameter witness", ok, f"N={N} k={k} i={i}", t)


def test_criterion_8_construction_search():
    t = time.monotonic()
    state = construction_search(3)
    count = count_inflections(state.spec, cross_check=False).sign_changes if state.spec else 0
    how = "known witness" if state.fallback_used else "greedy"
    report(8, "construction search", state.success and count >= 3, f"{state.spec} ({how}), {count} inflections", t)


@pytest.mark.parametrize("n", [4, 5])
def test_criterion_9_monte_carlo(n):
    t = time.monotonic()
    g = complete_graph(n)
    r = reliability_complete(n)
    worst = 0.0
    ok = True
    for q in (F(1, 4), F(1, 2), F(3, 4)):
        est = monte_carlo_reliability(g, q, MC_TRIALS, MC_SEEDS[n])
        z = abs(float(est.estimate - evaluate_exact(r, q))) / float(est.std_error)
        worst = max(worst, z)
        ok &= z <= 4
    report(9, f"Monte Carlo K{n}", ok, f"max |z| = {worst:.2f} over q = 1/4, 1/2, 3/4", t)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
