from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relpoly.polycore import (
    ONE,
    ZERO,
    DegreeCeilingError,
    EndpointRootError,
    Polynomial,
    SpanningForm,
    SturmChain,
    count_sign_changes,
    differentiate,
    evaluate_exact,
    format_poly,
    from_spanning_form,
    poly_arith,
    poly_from_json,
    poly_pow,
    poly_to_json,
    sign_at,
    spanning_derivative,
    squarefree_part,
    sturm_distinct_roots,
    to_spanning_form,
)

R3 = Polynomial((1, 0, -3, 2))
LIN = Polynomial((1, -1))


def lin(root):
    return Polynomial((-F(root), 1))


rationals = st.fractions(min_value=-8, max_value=8, max_denominator=12)
polys = st.lists(rationals, min_size=0, max_size=9).map(Polynomial)


class TestArithmetic:
    def test_square_of_one_minus_q(self):
        assert poly_arith(LIN, LIN, "mul") == Polynomial((1, -2, 1))

    def test_add_zero_is_identity(self):
        assert poly_arith(R3, ZERO, "add") == R3

    def test_r3_times_one_minus_q(self):
        assert poly_arith(R3, LIN, "mul") == Polynomial((1, -1, -3, 5, -2))

    def test_unknown_operation(self):
        with pytest.raises(ValueError):
            poly_arith(R3, LIN, "div")

    def test_zero_polynomial_shape(self):
        assert ZERO.coeffs == ()
        assert ZERO.degree == -1
        assert Polynomial((1, 2, 0, 0)).coeffs == (1, 2)

    @given(polys, polys)
    def test_mul_degree_adds(self, p, r):
        prod = p * r
        if p.is_zero() or r.is_zero():
            assert prod.is_zero()
        else:
            assert prod.degree == p.degree + r.degree

    @given(polys, polys, rationals)
    def test_operations_commute_with_evaluation(self, p, r, x):
        assert evaluate_exact(p + r, x) == evaluate_exact(p, x) + evaluate_exact(r, x)
        assert evaluate_exact(p - r, x) == evaluate_exact(p, x) - evaluate_exact(r, x)
        assert evaluate_exact(p * r, x) == evaluate_exact(p, x) * evaluate_exact(r, x)

    def test_large_products_use_the_same_result(self):
        # long operands go through the packed-integer path
        p = Polynomial([F((-1) ** i * (i + 1), i + 2) for i in range(60)])
        r = Polynomial([F(i * i - 7, 3) for i in range(45)])
        expected = [F(0)] * (p.degree + r.degree + 1)
        for i, a in enumerate(p.coeffs):
            for j, b in enumerate(r.coeffs):
                expected[i + j] += a * b
        assert (p * r).coeffs == tuple(expected)


class TestPower:
    def test_square(self):
        assert poly_pow(LIN, 2) == Polynomial((1, -2, 1))

    def test_zeroth_power(self):
        assert poly_pow(R3, 0) == ONE

    def test_r3_squared(self):
        assert poly_pow(R3, 2) == Polynomial((1, 0, -6, 4, 9, -12, 4))

    def test_ceiling(self):
        with pytest.raises(DegreeCeilingError):
            poly_pow(R3, 10_000, ceiling=1000)

    @given(polys, st.integers(0, 6), rationals)
    def test_power_matches_evaluation(self, p, e, x):
        assert evaluate_exact(poly_pow(p, e), x) == evaluate_exact(p, x) ** e


class TestDerivativeAndEvaluation:
    def test_linear(self):
        assert differentiate(LIN) == Polynomial((-1,))

    def test_r3(self):
        assert differentiate(R3) == Polynomial((0, -6, 6))

    def test_constant(self):
        assert differentiate(Polynomial((5,))).is_zero()

    def test_values(self):
        assert evaluate_exact(LIN, 0) == 1
        assert evaluate_exact(R3, F(1, 2)) == F(1, 2)

    @given(polys)
    def test_value_at_zero_is_constant_term(self, p):
        assert evaluate_exact(p, 0) == (p.coeffs[0] if p.coeffs else 0)

    def test_format(self):
        assert format_poly(R3) == "1 - 3q^2 + 2q^3"
        assert format_poly(ZERO) == "0"


class TestSpanningForm:
    def test_one_minus_q(self):
        assert to_spanning_form(LIN, 1).counts == (0, 1)

    def test_r3(self):
        assert to_spanning_form(R3, 3).counts == (0, 0, 3, 1)

    def test_constant(self):
        assert to_spanning_form(ONE, 0).counts == (1,)

    def test_expansions(self):
        assert from_spanning_form(SpanningForm.of([0, 1])) == LIN
        assert from_spanning_form(SpanningForm.of([0, 0, 3, 1])) == R3
        k4 = from_spanning_form(SpanningForm.of([0, 0, 0, 16, 15, 6, 1]))
        assert evaluate_exact(k4, F(1, 2)) == F(19, 32)

    def test_derivative_examples(self):
        assert spanning_derivative(SpanningForm.of([0, 1])).counts == (-1,)
        assert spanning_derivative(SpanningForm.of([0, 0, 3, 1])).counts == (0, -6, 0)
        assert spanning_derivative(SpanningForm.of([0, 0, 0])).counts == (0, 0)

    def test_degree_too_high(self):
        with pytest.raises(ValueError):
            to_spanning_form(R3, 2)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            SpanningForm(3, (F(0), F(1)))

    @given(st.integers(0, 12).flatmap(lambda m: st.tuples(st.just(m), st.lists(rationals, max_size=m + 1))))
    def test_round_trip(self, data):
        m, coeffs = data
        p = Polynomial(coeffs)
        assert from_spanning_form(to_spanning_form(p, m)) == p

    @given(st.integers(1, 12).flatmap(lambda m: st.lists(rationals, min_size=m + 1, max_size=m + 1)))
    def test_derivative_commutes_with_expansion(self, counts):
        s = SpanningForm.of(counts)
        assert from_spanning_form(spanning_derivative(s)) == differentiate(from_spanning_form(s))

    def test_json_round_trip(self):
        s = SpanningForm.of([0, F(1, 3), 2])
        assert SpanningForm.from_json(s.to_json()) == s


class TestJson:
    def test_format(self):
        assert poly_to_json(Polynomial((F(1, 2), -3))) == {"coeffs": [["1", "2"], ["-3", "1"]]}

    @given(polys)
    def test_round_trip(self, p):
        assert poly_from_json(poly_to_json(p)) == p

    def test_huge_integers_survive(self):
        p = Polynomial((10 ** 80 + 1, F(-(7 ** 90), 3)))
        assert poly_from_json(poly_to_json(p)) == p


class TestSquarefree:
    def test_double_root(self):
        sq = squarefree_part(lin(F(1, 2)) ** 2)
        assert sq.degree == 1 and evaluate_exact(sq, F(1, 2)) == 0

    def test_squarefree_input(self):
        p = lin(F(1, 3)) * lin(2)
        sq = squarefree_part(p)
        assert sq.degree == 2
        assert sq.scale(p.leading() / sq.leading()) == p

    def test_cubic(self):
        sq = squarefree_part(Polynomial((0, 0, -1, 1)))
        assert sq.degree == 2
        assert evaluate_exact(sq, 0) == 0 and evaluate_exact(sq, 1) == 0

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            squarefree_part(ZERO)


class TestSturm:
    def test_examples(self):
        assert sturm_distinct_roots(Polynomial((-F(1, 4), 0, 1)), 0, 1) == 1
        assert sturm_distinct_roots(Polynomial((1, 0, 1)), 0, 1) == 0
        cubic = lin(F(1, 4)) * lin(F(1, 2)) * lin(F(3, 4))
        assert sturm_distinct_roots(cubic, 0, 1) == 3

    def test_endpoint_root_reported(self):
        with pytest.raises(EndpointRootError) as err:
            sturm_distinct_roots(lin(F(1, 2)), F(1, 2), 1)
        assert err.value.point == F(1, 2)

    def test_chain_degrees_decrease(self):
        chain = SturmChain.build(lin(F(1, 4)) * lin(F(1, 2)) * lin(F(3, 4)) * Polynomial((1, 0, 1)))
        degrees = [p.degree for p in chain.sequence]
        assert all(a > b for a, b in zip(degrees, degrees[1:]))
        assert degrees[-1] == 0
        assert chain.count(0, 1) == 3

    @given(st.lists(st.fractions(min_value=F(1, 64), max_value=F(63, 64), max_denominator=64), min_size=1, max_size=6),
           st.integers(0, 2))
    def test_matches_fine_sign_scan(self, roots, quadratics):
        p = ONE
        for r in roots:
            p = p * lin(r)
        for k in range(quadratics):
            p = p * Polynomial((k + 1, 0, 1))
        distinct = sorted(set(roots))
        # a 2^-20 scan finds exactly one change between consecutive distinct roots
        assert sturm_distinct_roots(p, 0, 1) == len(distinct)
        step = F(1, 2 ** 20)
        for r in distinct:
            mult = roots.count(r)
            lo, hi = sign_at(p, r - step), sign_at(p, r + step)
            assert (lo != hi) == (mult % 2 == 1)


class TestSignChanges:
    def test_touch_point(self):
        rep = count_sign_changes(lin(F(1, 2)) ** 2)
        assert rep.sign_changes == 0
        assert rep.distinct_roots == 1
        assert rep.even_multiplicity_roots == 1

    def test_simple_root(self):
        rep = count_sign_changes(lin(F(1, 2)))
        assert rep.sign_changes == 1
        (lo, hi), = rep.isolating_intervals
        assert lo < F(1, 2) < hi

    def test_mixed_multiplicities(self):
        assert count_sign_changes(lin(F(1, 4)) ** 2 * lin(F(1, 2))).sign_changes == 1

    def test_endpoint_roots_are_stripped(self):
        p = Polynomial((0, 0, 1)) * lin(1) ** 3 * lin(F(1, 3))
        rep = count_sign_changes(p)
        assert rep.sign_changes == 1
        assert rep.endpoint_roots == [(F(0), 2), (F(1), 3)]

    def test_zero_polynomial(self):
        rep = count_sign_changes(ZERO)
        assert rep.identically_zero and rep.sign_changes == 0

    @given(st.lists(st.tuples(st.fractions(min_value=F(1, 32), max_value=F(31, 32), max_denominator=32),
                              st.integers(1, 3)), min_size=1, max_size=5))
    def test_intervals_and_parity(self, factors):
        mult: dict = {}
        for r, k in factors:
            mult[r] = mult.get(r, 0) + k
        p = ONE
        for r, k in mult.items():
            p = p * lin(r) ** k
        rep = count_sign_changes(p)
        odd = sorted(r for r, k in mult.items() if k % 2)
        assert rep.sign_changes == len(odd) == len(rep.isolating_intervals)
        assert rep.sign_changes + rep.even_multiplicity_roots == sturm_distinct_roots(squarefree_part(p), 0, 1)
        for (lo, hi), r in zip(rep.isolating_intervals, odd):
            assert 0 <= lo < r < hi <= 1
            assert sign_at(p, lo) * sign_at(p, hi) == -1
        for (a, b), (c, d) in zip(rep.isolating_intervals, rep.isolating_intervals[1:]):
            assert b <= c

    def test_report_json(self):
        doc = count_sign_changes(lin(F(1, 2))).to_json()
        assert doc["sign_changes"] == 1
        assert all(isinstance(x, str) for pair in doc["isolating_intervals"] for x in pair)
