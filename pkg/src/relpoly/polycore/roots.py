"""Real-root counting and isolation with exact integer arithmetic.

Polynomials are reduced to primitive integer coefficient lists before any
remainder sequence is formed.  Sturm chains are produced by the
subresultant algorithm (each pseudo-remainder is divided by a factor known
in advance to divide it), with the signs tracked so that every chain entry
is a positive multiple of the classical signed remainder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .poly import Polynomial, RationalLike, homogeneous_eval

try:  # GMP integers make the remainder sequences several times faster
    from gmpy2 import mpz as _Z
except ImportError:  # pragma: no cover
    _Z = int

IntPoly = list


class EndpointRootError(ValueError):
    """The polynomial vanishes at an endpoint of an open-interval query."""

    def __init__(self, point: Fraction):
        super().__init__(f"polynomial vanishes at interval endpoint {point}")
        self.point = point


# ----------------------------------------------------------------------
# integer polynomial helpers

def _strip(a: IntPoly) -> IntPoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def _content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive_part(a: Sequence[int]) -> IntPoly:
    """Divide out the positive content; the sign of every coefficient is kept."""
    g = _content(a)
    if g in (0, 1):
        return list(a)
    return [c // g for c in a]


def _deriv(a: Sequence[int]) -> IntPoly:
    return [i * c for i, c in enumerate(a)][1:]


def prem(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    """Pseudo-remainder ``lc(b)**(deg a - deg b + 1) * a mod b``."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    steps = len(a) - len(b) + 1
    if steps <= 0:
        return r
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        r = [lb * x for x in r[:k]]
        if c:
            off = k - db
            for j in range(db):
                r[off + j] -= c * b[j]
    # k ran over every degree; each pass multiplied by lb exactly once
    return _strip(r)


def _exact_div(a: IntPoly, d: int) -> IntPoly:
    if d == 1:
        return a
    if d == -1:
        return [-c for c in a]
    return [c // d for c in a]


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


def subresultant_chain(a: Sequence[int], b: Sequence[int]) -> list[IntPoly]:
    """Signed remainder sequence of ``a, b`` up to positive factors.

    Entry ``k+1`` is a positive multiple of ``-rem(entry k-1, entry k)``,
    which is exactly what Sturm's theorem needs.  The last entry is a
    multiple of ``gcd(a, b)``.
    """
    a = _strip(list(a))
    b = _strip(list(b))
    if len(a) < len(b):
        raise ValueError("first polynomial must have degree >= the second")
    chain = [a, b]
    signs = [1, 1]
    big_a, big_b = a, b
    g = h = 1
    while True:
        delta = len(big_a) - len(big_b)
        r = prem(big_a, big_b)
        if not r:
            break
        div = g * h ** delta
        new = _exact_div(r, div)
        lb = big_b[-1]
        # -rem(A, B) = -(div / lb**(delta+1)) * new
        sign = -signs[-2] * _sgn(div) * (_sgn(lb) ** (delta + 1))
        signs.append(sign)
        chain.append(new if sign > 0 else [-c for c in new])
        big_a, big_b = big_b, new
        g = big_a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g ** delta // h ** (delta - 1)
        if len(big_b) == 1:
            break
    return chain


def int_gcd(a: Sequence[int], b: Sequence[int]) -> IntPoly:
    """Primitive gcd with positive leading coefficient."""
    a = _strip(list(a))
    b = _strip(list(b))
    if not a or not b:
        last = primitive_part(a or b)
        return last if last[-1] > 0 else [-c for c in last]
    if len(a) < len(b):
        a, b = b, a
    chain = subresultant_chain(primitive_part(a), primitive_part(b))
    last = chain[-1]
    if len(last) == 1:
        return [1]
    last = primitive_part(last)
    return last if last[-1] > 0 else [-c for c in last]


def int_exact_quotient(a: Sequence[int], d: Sequence[int]) -> IntPoly:
    """Primitive ``a / d`` for integer polynomials where ``d`` divides ``a`` over Q."""
    r = list(a)
    db = len(d) - 1
    lb = d[-1]
    quot = [0] * (len(a) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        quot = [lb * x for x in quot]
        r = [lb * x for x in r[:k]]
        if c:
            quot[k - db] += c
            off = k - db
            for j in range(db):
                r[off + j] -= c * d[j]
    if any(r):
        raise ArithmeticError("division is not exact")
    return primitive_part(quot)


def strip_root(a: Sequence[int], c: Fraction) -> tuple[IntPoly, int]:
    """Divide out ``(den*q - num)`` for the rational root ``c`` as often as it divides."""
    lin = [-c.numerator, c.denominator]
    a = list(a)
    mult = 0
    while len(a) > 1 and _sign_at(a, c) == 0:
        a = int_exact_quotient(a, lin)
        mult += 1
    return a, mult


def int_squarefree(a: Sequence[int]) -> IntPoly:
    """Primitive squarefree part ``a / gcd(a, a')``."""
    a = primitive_part(_strip(list(a)))
    if len(a) <= 2:
        return a
    g = int_gcd(a, _deriv(a))
    if len(g) == 1:
        return a
    return int_exact_quotient(a, g)


def _to_int(p: Polynomial) -> IntPoly:
    """Primitive integer coefficients, a positive multiple of ``p``."""
    return primitive_part([_Z(c) for c in p.numerators])


def _from_int(a: Sequence[int]) -> Polynomial:
    return Polynomial.from_ints([int(c) for c in a])


# ----------------------------------------------------------------------
# public API

@dataclass(frozen=True)
class SturmChain:
    """``p, p'`` and the signed remainders, each up to a positive factor."""

    sequence: tuple[Polynomial, ...]

    @classmethod
    def build(cls, p: Polynomial) -> "SturmChain":
        return cls(tuple(_from_int(s) for s in _sturm_ints(_to_int(p))))

    def variations(self, x: RationalLike) -> int:
        return _variations([s.numerators for s in self.sequence], Fraction(x))

    def count(self, lo: RationalLike, hi: RationalLike) -> int:
        return self.variations(lo) - self.variations(hi)


def _sturm_ints(a: IntPoly) -> list[IntPoly]:
    a = primitive_part(_strip(list(a)))
    if not a:
        raise ValueError("zero polynomial has no Sturm chain")
    if len(a) == 1:
        return [a]
    return subresultant_chain(a, primitive_part(_deriv(a)))


def _sign_at(a: Sequence[int], x: Fraction) -> int:
    return _sgn(homogeneous_eval(a, x.numerator, x.denominator))


def _variations(chain: Sequence[Sequence[int]], x: Fraction) -> int:
    count = 0
    prev = 0
    for s in chain:
        v = _sign_at(s, x)
        if v:
            if prev and v != prev:
                count += 1
            prev = v
    return count


def squarefree_part(p: Polynomial) -> Polynomial:
    """``p / gcd(p, p')`` scaled to a primitive integer polynomial."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial is undefined")
    return _from_int(int_squarefree(_to_int(p)))


def sturm_distinct_roots(p: Polynomial, lo: RationalLike, hi: RationalLike) -> int:
    """Number of distinct real roots of ``p`` in the open interval ``(lo, hi)``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if not lo < hi:
        raise ValueError("need lo < hi")
    a = _to_int(p)
    for x in (lo, hi):
        if _sign_at(a, x) == 0:
            raise EndpointRootError(x)
    chain = _sturm_ints(a)
    return _variations(chain, lo) - _variations(chain, hi)


@dataclass
class InflectionReport:
    """Sign changes of a polynomial on an open interval.

    ``sign_changes`` counts roots of odd multiplicity; ``distinct_roots``
    counts every distinct root, so ``distinct_roots - sign_changes`` are
    touch points where the function vanishes without changing sign.
    ``endpoint_roots`` lists ``(endpoint, multiplicity)`` for factors
    divided out before counting; they never contribute.
    """

    sign_changes: int
    isolating_intervals: list[tuple[Fraction, Fraction]]
    distinct_roots: int = 0
    interval: tuple[Fraction, Fraction] = (Fraction(0), Fraction(1))
    endpoint_roots: list[tuple[Fraction, int]] = field(default_factory=list)
    identically_zero: bool = False

    @property
    def even_multiplicity_roots(self) -> int:
        return self.distinct_roots - self.sign_changes

    def to_json(self) -> dict:
        return {
            "sign_changes": self.sign_changes,
            "distinct_roots": self.distinct_roots,
            "even_multiplicity_roots": self.even_multiplicity_roots,
            "identically_zero": self.identically_zero,
            "interval": [str(self.interval[0]), str(self.interval[1])],
            "isolating_intervals": [[str(a), str(b)] for a, b in self.isolating_intervals],
            "endpoint_roots": [[str(c), k] for c, k in self.endpoint_roots],
        }


def isolate_roots(
    s: IntPoly,
    lo: Fraction,
    hi: Fraction,
    chain: Optional[list[IntPoly]] = None,
    grid: int = 256,
) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the distinct roots of ``s`` in ``(lo, hi)``.

    Endpoints must not be roots.  A cheap scan of ``s`` on a uniform grid
    proposes split points; Sturm counts decide, and any interval holding
    more than one root is bisected further.
    """
    if chain is None:
        chain = _sturm_ints(s)
    var_cache: dict[Fraction, int] = {}

    def var(x: Fraction) -> int:
        v = var_cache.get(x)
        if v is None:
            v = var_cache[x] = _variations(chain, x)
        return v

    total = var(lo) - var(hi)
    if total == 0:
        return []

    pts = [lo + (hi - lo) * Fraction(j, grid) for j in range(grid + 1)]
    signs = [_sign_at(s, x) for x in pts]
    splits = [lo]
    for j in range(grid):
        if signs[j] and signs[j + 1] and signs[j] != signs[j + 1]:
            if splits[-1] != pts[j]:
                splits.append(pts[j])
            splits.append(pts[j + 1])
    if splits[-1] != hi:
        splits.append(hi)

    out: list[tuple[Fraction, Fraction]] = []
    stack = [(splits[k], splits[k + 1]) for k in range(len(splits) - 2, -1, -1)]
    while stack:
        a, b = stack.pop()
        n = var(a) - var(b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        k = 3
        while _sign_at(s, mid) == 0:
            mid = a + (b - a) / k
            k += 1
        stack.append((mid, b))
        stack.append((a, mid))
    out.sort()
    if len(out) != total:
        raise AssertionError("root isolation lost track of a root")
    return out


def count_sign_changes(
    p: Polynomial, lo: RationalLike = 0, hi: RationalLike = 1, grid: int = 256
) -> InflectionReport:
    """Roots of odd multiplicity of ``p`` in ``(lo, hi)``, with isolating intervals.

    Roots sitting exactly on an endpoint are divided out first (recorded
    in ``endpoint_roots``); the quotient has the same roots and the same
    sign pattern inside the open interval.  The zero polynomial yields an
    empty report flagged ``identically_zero``.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if p.is_zero():
        return InflectionReport(0, [], 0, (lo, hi), identically_zero=True)
    a = _to_int(p)
    endpoint_roots = []
    for c in (lo, hi):
        a, mult = strip_root(a, c)
        if mult:
            endpoint_roots.append((c, mult))
    if len(a) <= 1:
        return InflectionReport(0, [], 0, (lo, hi), endpoint_roots)
    chain = _sturm_ints(a)
    if len(chain[-1]) == 1:
        s = a
    else:
        g = primitive_part(chain[-1])
        s = int_exact_quotient(a, g)
        chain = _sturm_ints(s)
    intervals = isolate_roots(s, lo, hi, chain, grid)
    changes = [(x, y) for x, y in intervals if _sign_at(a, x) != _sign_at(a, y)]
    return InflectionReport(len(changes), changes, len(intervals), (lo, hi), endpoint_roots)


def sign_at(p: Polynomial, x: RationalLike) -> int:
    """Exact sign of ``p(x)``."""
    return _sign_at(p.numerators, Fraction(x))
