"""Reliability of one-point unions of complete graphs and their inflections.

For ``g = prod r_i^{l_i}`` the logarithmic derivative is
``L = g'/g = sum l_i r_i'/r_i = A/Q`` with ``Q = prod r_i``.  Then
``g''/g = L^2 + L' = P/Q^2`` where ``P = A^2 + A'Q - AQ'``.  On (0, 1) both
``g`` and ``Q`` are positive, so ``sign(g'') = sign(P)``.  The exponents
``l_i`` only enter ``A`` as integer scalars: the degree of ``P`` is at most
``2 deg Q`` no matter how large they are.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import mpmath

from ..complete import CompleteCache, reliability_complete
from ..polycore import (
    DEFAULT_DEGREE_CEILING,
    ONE,
    ZERO,
    DegreeCeilingError,
    InflectionReport,
    Polynomial,
    compose_affine,
    count_sign_changes,
    differentiate,
    evaluate_exact,
    poly_pow,
)
from .spec import ProductSpec

#: independent Sturm recount of the expanded g'' is skipped above this degree
CROSS_CHECK_DEGREE = 150


def product_reliability(
    spec: ProductSpec, cache: Optional[CompleteCache] = None, ceiling: int = DEFAULT_DEGREE_CEILING
) -> Polynomial:
    """Exact ``prod r_n^l`` over the factors of ``spec``."""
    if spec.degree > ceiling:
        raise DegreeCeilingError(
            f"{spec}: degree {spec.degree} exceeds expansion ceiling {ceiling}; "
            "use the log-derivative path"
        )
    out = ONE
    for n, l in spec.merged().factors:
        out = out * poly_pow(reliability_complete(n, cache), l, ceiling)
    return out


@dataclass(frozen=True)
class LogDerivative:
    """``g'/g = A/Q`` and ``g''/g = P/Q^2`` for a product spec."""

    spec: ProductSpec
    A: Polynomial
    Q: Polynomial
    P: Polynomial

    @property
    def dQ(self) -> Polynomial:
        return differentiate(self.Q)


@lru_cache(maxsize=64)
def log_derivative(spec: ProductSpec, cache: Optional[CompleteCache] = None) -> LogDerivative:
    merged = spec.merged()
    rs = [(reliability_complete(n, cache), l) for n, l in merged.factors]
    k = len(rs)
    # prefix/suffix products give prod_{j != i} r_j without division
    prefix = [ONE]
    for r, _ in rs:
        prefix.append(prefix[-1] * r)
    suffix = [ONE] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = rs[i][0] * suffix[i + 1]
    q_poly = prefix[-1]
    a_poly = ZERO
    for i, (r, l) in enumerate(rs):
        a_poly = a_poly + differentiate(r).scale(l) * prefix[i] * suffix[i + 1]
    p_poly = a_poly * a_poly + differentiate(a_poly) * q_poly - a_poly * differentiate(q_poly)
    return LogDerivative(merged, a_poly, q_poly, p_poly)


def log_second_derivative_numerator(
    spec: ProductSpec, cache: Optional[CompleteCache] = None
) -> tuple[Polynomial, Polynomial]:
    """``(P, Q)`` with ``g''/g = P/Q^2``."""
    ld = log_derivative(spec, cache)
    return ld.P, ld.Q


def count_inflections(
    spec: ProductSpec,
    cache: Optional[CompleteCache] = None,
    cross_check: bool = True,
    ceiling: int = DEFAULT_DEGREE_CEILING,
) -> InflectionReport:
    """Sign changes of ``g''`` on (0, 1), decided through the sign of ``P``.

    When the product can be expanded, ``P * g == g'' * Q^2`` is confirmed
    as a polynomial identity, and for modest degrees the expanded ``g''``
    is recounted independently.
    """
    ld = log_derivative(spec, cache)
    report = count_sign_changes(ld.P, 0, 1)
    if cross_check and spec.degree <= ceiling:
        g = product_reliability(spec, cache, ceiling)
        g2 = differentiate(differentiate(g))
        if ld.P * g != g2 * ld.Q * ld.Q:
            raise AssertionError(f"{spec}: log-derivative identity P*g == g''*Q^2 failed")
        if g2.degree <= CROSS_CHECK_DEGREE:
            direct = count_sign_changes(g2, 0, 1)
            if direct.sign_changes != report.sign_changes:
                raise AssertionError(
                    f"{spec}: {report.sign_changes} sign changes via P, "
                    f"{direct.sign_changes} via expanded g''"
                )
    return report


# ----------------------------------------------------------------------
# exact values

def endpoint_jet(spec: ProductSpec, at: int, order: int = 2, cache: Optional[CompleteCache] = None) -> list[Fraction]:
    """Exact ``[g(at), g'(at), ..., g^(order)(at)]`` for ``at`` in {0, 1}.

    Works for any exponent size: at 0 every factor is ``1 + O(q)`` and the
    binomial series needs only ``C(l, j)``; at 1 each factor vanishes, so a
    high power contributes nothing below its valuation.
    """
    if at not in (0, 1):
        raise ValueError("jets are available at q = 0 and q = 1 only")
    series = [Fraction(1)] + [Fraction(0)] * order
    for n, l in spec.merged().factors:
        r = reliability_complete(n, cache)
        shifted = compose_affine(r, at, 1)
        t = [shifted[i] for i in range(order + 1)]
        series = _series_mul(series, _series_pow(t, l, order), order)
    out = []
    fact = 1
    for j, c in enumerate(series):
        if j:
            fact *= j
        out.append(c * fact)
    return out


def _series_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(order + 1 - i):
                out[i + j] += x * b[j]
    return out


def _series_pow(t: list[Fraction], l: int, order: int) -> list[Fraction]:
    v = next((i for i, c in enumerate(t) if c), None)
    if v is None:
        return [Fraction(0)] * (order + 1)
    if v * l > order:
        return [Fraction(0)] * (order + 1)
    lead = t[v]
    u = [c / lead for c in t[v:]] + [Fraction(0)] * v  # 1 + u1 x + ...
    # (1 + w)^l truncated, with w = u - 1 having zero constant term
    w = [Fraction(0)] + u[1:order + 1]
    power = [Fraction(1)] + [Fraction(0)] * order
    term = [Fraction(1)] + [Fraction(0)] * order
    binom = Fraction(1)
    for j in range(1, order + 1):
        term = _series_mul(term, w, order)
        binom = binom * (l - j + 1) / j
        power = [p + binom * x for p, x in zip(power, term)]
    shift = v * l
    scale = lead ** l
    return [Fraction(0)] * shift + [scale * c for c in power[: order + 1 - shift]]


def exact_value(
    spec: ProductSpec,
    q: Fraction,
    deriv: int,
    cache: Optional[CompleteCache] = None,
    max_power_bits: int = 4_000_000,
) -> Fraction:
    """Exact ``g^(deriv)(q)`` on [0, 1] without expanding ``g``.

    Interior points use ``g * (A/Q)`` and ``g * P/Q^2``; the factor
    ``g(q) = prod r_i(q)^l_i`` is formed exactly, so this refuses when the
    power would be too large to hold.
    """
    q = Fraction(q)
    if deriv not in (0, 1, 2):
        raise ValueError("deriv must be 0, 1 or 2")
    if q in (0, 1):
        return endpoint_jet(spec, int(q), deriv, cache)[deriv]
    if not 0 < q < 1:
        raise ValueError("q must lie in [0, 1]")
    merged = spec.merged()
    bits = sum(l * (n * (n - 1) // 2) * q.denominator.bit_length() for n, l in merged.factors)
    if bits > max_power_bits:
        raise OverflowError(f"{spec}: exact g({q}) needs ~{bits} bits")
    g = Fraction(1)
    for n, l in merged.factors:
        g *= evaluate_exact(reliability_complete(n, cache), q) ** l
    if deriv == 0:
        return g
    ld = log_derivative(spec, cache)
    qv = evaluate_exact(ld.Q, q)
    if deriv == 1:
        return g * evaluate_exact(ld.A, q) / qv
    return g * evaluate_exact(ld.P, q) / (qv * qv)


def mp_value(spec: ProductSpec, q: Fraction, deriv: int, cache: Optional[CompleteCache] = None, dps: int = 50):
    """``g^(deriv)(q)`` as an mpmath number with about ``dps`` correct digits.

    ``g`` is assembled in log space so astronomically small values neither
    underflow nor cost memory; ``P``, ``A`` and ``Q`` are evaluated exactly.
    """
    q = Fraction(q)
    if q in (0, 1):
        v = endpoint_jet(spec, int(q), deriv, cache)[deriv]
        with mpmath.workdps(dps):
            return mpmath.mpf(v.numerator) / v.denominator
    merged = spec.merged()
    total = sum(l for _, l in merged.factors)
    guard = len(str(total)) + 15
    with mpmath.workdps(dps + guard):
        log_g = mpmath.mpf(0)
        for n, l in merged.factors:
            r = evaluate_exact(reliability_complete(n, cache), q)
            log_g += l * mpmath.log(mpmath.mpf(r.numerator) / r.denominator)
        g = mpmath.exp(log_g)
        if deriv == 0:
            return +g
        ld = log_derivative(spec, cache)
        if deriv == 1:
            ratio = evaluate_exact(ld.A, q) / evaluate_exact(ld.Q, q)
        else:
            qv = evaluate_exact(ld.Q, q)
            ratio = evaluate_exact(ld.P, q) / (qv * qv)
        return g * (mpmath.mpf(ratio.numerator) / ratio.denominator)
