"""Bounds on ``(r_n^l)''`` away from an interval, and the parameter search.

For ``q`` in [0, 1/8] the second derivative of ``r_n^l`` is bounded by
``f(q) + g(q)`` with

    f(q) = l^2 n^6 (1 - (n-1) q^(n-1))^(l-2) q^(2n-4)
    g(q) = l n^5 (1 - (n-1) q^(n-1))^(l-1) q^(n-3)

and on [1/8, 1] by ``l^2 n^8 (1 - (n-1) 8^-(n-1))^(l-1)``.  The exponents
``l`` reach ``N**i`` for large ``i``; those powers are bounded with
outward-rounded interval arithmetic at escalating precision instead of
being expanded.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Optional

from mpmath import iv, mp

ALPHA = Fraction(1, 8)
#: exponents up to this size are evaluated exactly
EXACT_EXPONENT_LIMIT = 4096
PRECISIONS = (64, 128, 256, 512, 1024, 2048, 4096, 8192)


@contextmanager
def _ivprec(prec: int):
    saved = iv.prec
    iv.prec = prec
    try:
        yield
    finally:
        iv.prec = saved


def fraction_decimal(x: Fraction, digits: int = 20) -> str:
    """``x`` rounded to ``digits`` significant decimal digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def _ivq(x: Fraction):
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def _upper_str(x, digits: int = 20) -> str:
    return mp.nstr(mp.mpf(x._mpi_[1]), digits)


@dataclass
class CertifiedValue:
    """A non-negative real known exactly or through interval enclosures.

    ``enclose(prec)`` returns an outward-rounded mpmath interval at the
    given working precision in bits.
    """

    exact: Optional[Fraction]
    enclose: Callable[[int], object]

    @classmethod
    def of(cls, x: Fraction) -> "CertifiedValue":
        x = Fraction(x)
        return cls(x, lambda prec: _ivq(x))

    def __add__(self, other: "CertifiedValue") -> "CertifiedValue":
        exact = self.exact + other.exact if self.exact is not None and other.exact is not None else None
        return CertifiedValue(exact, lambda prec: self.enclose(prec) + other.enclose(prec))

    def decimal(self, digits: int = 20) -> str:
        """Upper end of a tight enclosure as a decimal string."""
        with _ivprec(256):
            return _upper_str(self.enclose(256), digits)

    def compare(self, bound: Fraction, relation: str) -> Optional[bool]:
        """Decide ``self <= bound`` or ``self >= bound``; ``None`` if still undecided."""
        bound = Fraction(bound)
        if self.exact is not None:
            return self.exact <= bound if relation == "<=" else self.exact >= bound
        for prec in PRECISIONS:
            with _ivprec(prec):
                val = self.enclose(prec)
                b = _ivq(bound)
                if relation == "<=":
                    if val <= b:
                        return True
                    if val > b:
                        return False
                else:
                    if val >= b:
                        return True
                    if val < b:
                        return False
        return None


def _check_base(n: int, q: Fraction) -> Fraction:
    base = 1 - (n - 1) * q ** (n - 1)
    if base <= 0:
        raise ValueError(f"1 - (n-1) q^(n-1) = {base} is not positive for n={n}, q={q}")
    return base


def _power_term(coef: Fraction, base: Fraction, exponent: int) -> CertifiedValue:
    """``coef * base**exponent`` with ``0 < base <= 1`` and ``coef >= 0``."""
    if exponent <= EXACT_EXPONENT_LIMIT:
        return CertifiedValue.of(coef * base ** exponent)

    def enclose(prec: int):
        # log-space keeps astronomically small results representable
        return iv.exp(iv.log(_ivq(coef)) + exponent * iv.log(_ivq(base)))

    return CertifiedValue(None, enclose)


def theorem_f_g(n: int, ell: int, q) -> tuple[CertifiedValue, CertifiedValue]:
    """The two terms ``f(q)``, ``g(q)`` bounding ``|(r_n^l)''(q)|`` on [0, 1/8]."""
    q = Fraction(q)
    if n < 4:
        raise ValueError("n must be at least 4")
    if ell < 1:
        raise ValueError("l must be at least 1")
    if not 0 < q <= ALPHA:
        raise ValueError("q must lie in (0, 1/8]")
    base = _check_base(n, q)
    f = _power_term(Fraction(ell * ell * n ** 6) * q ** (2 * n - 4), base, ell - 2) if ell >= 2 else \
        CertifiedValue.of(Fraction(n ** 6) * q ** (2 * n - 4) / base)
    g = _power_term(Fraction(ell * n ** 5) * q ** (n - 3), base, ell - 1)
    return f, g


def tail_bound(n: int, ell: int) -> CertifiedValue:
    """``l^2 n^8 (1 - (n-1)(1/8)^(n-1))^(l-1)``, the bound on [1/8, 1]."""
    base = _check_base(n, ALPHA)
    return _power_term(Fraction(ell * ell * n ** 8), base, ell - 1)


@dataclass
class ConditionCheck:
    name: str
    holds: bool
    lhs: str
    relation: str
    bound: Fraction
    exact: bool
    decided: bool = True

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "lhs": self.lhs,
            "relation": self.relation,
            "bound": str(self.bound),
            "exact": self.exact,
            "decided": self.decided,
        }


@dataclass
class TheoremConditions:
    n: int
    ell: int
    a: Fraction
    b: Fraction
    eps: Fraction
    checks: list[ConditionCheck] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)

    @property
    def satisfied(self) -> int:
        return sum(c.holds for c in self.checks)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ell": str(self.ell),
            "a": str(self.a),
            "b": str(self.b),
            "eps": str(self.eps),
            "all_hold": self.all_hold,
            "checks": [c.to_json() for c in self.checks],
        }


def _lhs_text(v: CertifiedValue) -> str:
    if v.exact is not None:
        return fraction_decimal(v.exact)
    return v.decimal()


def _check(name: str, value: CertifiedValue, relation: str, bound: Fraction) -> ConditionCheck:
    verdict = value.compare(bound, relation)
    return ConditionCheck(
        name=name,
        holds=bool(verdict),
        lhs=_lhs_text(value),
        relation=relation,
        bound=Fraction(bound),
        exact=value.exact is not None,
        decided=verdict is not None,
    )


def theorem_conditions(n: int, ell: int, a, b, eps) -> TheoremConditions:
    """Evaluate the five sufficient conditions for ``|(r_n^l)''| <= eps`` off ``[a, b]``.

    A condition is reported true only when the enclosure of its left side
    lies entirely on the correct side of the bound.
    """
    a, b, eps = Fraction(a), Fraction(b), Fraction(eps)
    if not 0 < a < b < ALPHA:
        raise ValueError("need 0 < a < b < 1/8")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if n < 4:
        raise ValueError("n must be at least 4")
    if ell < 1:
        raise ValueError("l must be at least 1")
    fa, ga = theorem_f_g(n, ell, a)
    fb, gb = theorem_f_g(n, ell, b)
    checks = [
        _check("l*n*a^(n-1) <= 1/4", CertifiedValue.of(ell * n * a ** (n - 1)), "<=", Fraction(1, 4)),
        _check("l*b^(n-1) >= 1", CertifiedValue.of(ell * b ** (n - 1)), ">=", Fraction(1)),
        _check("f(a)+g(a) <= eps", fa + ga, "<=", eps),
        _check("f(b)+g(b) <= eps", fb + gb, "<=", eps),
        _check("l^2*n^8*(1-(n-1)(1/8)^(n-1))^(l-1) <= eps", tail_bound(n, ell), "<=", eps),
    ]
    return TheoremConditions(n, ell, a, b, eps, checks)


@dataclass
class ParamResult:
    N: int
    k: int
    i: int
    conditions: TheoremConditions
    success: bool
    tried: int

    @property
    def n(self) -> int:
        return self.conditions.n

    @property
    def ell(self) -> int:
        return self.conditions.ell

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "i": self.i,
            "n": self.n,
            "ell": str(self.ell),
            "success": self.success,
            "candidates_tried": self.tried,
            "conditions": self.conditions.to_json(),
        }


def choose_base(a: Fraction, b: Fraction, max_k: int = 64) -> tuple[int, int]:
    """Smallest ``k`` with an integer ``N`` strictly between ``b^-k`` and ``a^-k``."""
    for k in range(1, max_k + 1):
        low, high = b ** -k, a ** -k
        N = low.numerator // low.denominator + 1
        if N < high:
            return N, k
    raise ValueError(f"no integer N found between b^-k and a^-k for k <= {max_k}")


def find_theorem_params(a, b, eps, max_i: int = 400) -> ParamResult:
    """Search ``n = i*k``, ``l = N**i`` for the first ``i`` meeting all five conditions.

    On reaching ``max_i`` the candidate satisfying the most conditions is
    returned with ``success=False``.
    """
    a, b, eps = Fraction(a), Fraction(b), Fraction(eps)
    if not 0 < a < b < ALPHA:
        raise ValueError("need 0 < a < b < 1/8")
    if eps <= 0:
        raise ValueError("eps must be positive")
    N, k = choose_base(a, b)
    if not a ** k < Fraction(1, N) < b ** k:
        raise AssertionError("base selection violated a < N^(-1/k) < b")
    best: Optional[ParamResult] = None
    tried = 0
    i = max(1, -(-4 // k))
    while i <= max_i:
        tried += 1
        cond = theorem_conditions(i * k, N ** i, a, b, eps)
        result = ParamResult(N, k, i, cond, cond.all_hold, tried)
        if cond.all_hold:
            return result
        if best is None or cond.satisfied > best.conditions.satisfied:
            best = result
        i += 1
    assert best is not None
    best.tried = tried
    return best
