"""Spanning-subgraph basis ``{(1-q)^i q^(m-i)}`` for polynomials of degree <= m."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .poly import Polynomial


@dataclass(frozen=True)
class SpanningForm:
    """Coefficients ``N_0..N_m`` of ``sum N_i (1-q)^i q^(m-i)``.

    For the reliability polynomial of a graph with ``m`` edges, ``N_i`` is
    the number of connected spanning subgraphs with ``i`` edges.
    """

    m: int
    counts: tuple[Fraction, ...]

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be non-negative")
        counts = tuple(Fraction(c) for c in self.counts)
        if len(counts) != self.m + 1:
            raise ValueError(f"expected {self.m + 1} counts, got {len(counts)}")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def of(cls, counts: Sequence) -> "SpanningForm":
        return cls(len(counts) - 1, tuple(counts))

    def int_counts(self) -> list[int]:
        """Counts as integers; raises if any is fractional."""
        out = []
        for i, c in enumerate(self.counts):
            if c.denominator != 1:
                raise ValueError(f"count N_{i} = {c} is not an integer")
            out.append(c.numerator)
        return out

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.counts],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SpanningForm":
        try:
            return cls(int(obj["m"]), tuple(Fraction(int(n), int(d)) for n, d in obj["coeffs"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed spanning form JSON: {exc}") from exc


def _common_den(values: Sequence[Fraction]) -> int:
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    return den


def to_spanning_form(p: Polynomial, m: int) -> SpanningForm:
    """Solve ``p = sum N_i (1-q)^i q^(m-i)`` by back-substitution.

    The basis element with index ``i`` starts at ``q^(m-i)`` with
    coefficient 1, so walking the power basis upward peels off one count
    per step.
    """
    if p.degree > m:
        raise ValueError(f"degree {p.degree} exceeds m = {m}")
    den = p.denominator
    residual = list(p.numerators) + [0] * (m + 1 - len(p.numerators))
    counts = [0] * (m + 1)
    # row[t] = C(i, t), walked downward from i = m
    row = [1]
    for t in range(1, m + 1):
        row.append(row[-1] * (m - t + 1) // t)
    for j in range(m + 1):
        i = m - j
        n_i = residual[j]
        counts[i] = n_i
        if n_i:
            sign = 1
            for t in range(i + 1):
                residual[j + t] -= sign * n_i * row[t]
                sign = -sign
        if i > 0:
            # C(i-1, t) = C(i, t) - C(i-1, t-1)
            nxt = [1]
            for t in range(1, i):
                nxt.append(row[t] - nxt[t - 1])
            row = nxt
    return SpanningForm(m, tuple(Fraction(c, den) for c in counts))


def from_spanning_form(s: SpanningForm) -> Polynomial:
    """Expand ``sum N_i (1-q)^i q^(m-i)`` into the power basis."""
    den = _common_den(s.counts)
    nums = [c.numerator * (den // c.denominator) for c in s.counts]
    m = s.m
    # homogeneous Horner in (1-q) and q
    acc = [nums[m]]
    for i in range(m - 1, -1, -1):
        acc = _times_one_minus_q(acc)
        if nums[i]:
            deg = m - i
            acc.extend([0] * (deg + 1 - len(acc)))
            acc[deg] += nums[i]
    return Polynomial.from_ints(acc, den)


def _times_one_minus_q(a: list[int]) -> list[int]:
    out = list(a) + [0]
    for k, c in enumerate(a):
        out[k + 1] -= c
    return out


def spanning_derivative(s: SpanningForm) -> SpanningForm:
    """Derivative in the degree-(m-1) basis: ``c_i = (m-i)N_i - (i+1)N_(i+1)``."""
    if s.m < 1:
        raise ValueError("spanning derivative needs m >= 1")
    m, n = s.m, s.counts
    return SpanningForm(m - 1, tuple((m - i) * n[i] - (i + 1) * n[i + 1] for i in range(m)))
