"""Dense univariate polynomials over the rationals.

Coefficients are held in *content form*: a tuple of Python integers plus a
single positive common denominator.  All arithmetic stays exact; the
integer representation keeps the hot paths (products, powers, Horner
evaluation) free of per-coefficient ``Fraction`` normalisation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction]

#: default ceiling on ``deg(p) * exponent`` accepted by :func:`poly_pow`
DEFAULT_DEGREE_CEILING = 20_000


class DegreeCeilingError(ValueError):
    """An explicit expansion would exceed the configured degree ceiling."""


def _content(nums: Iterable[int]) -> int:
    g = 0
    for c in nums:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def _trim(nums: list[int]) -> list[int]:
    while nums and nums[-1] == 0:
        nums.pop()
    return nums


class Polynomial:
    """Immutable dense polynomial in ``q``; ``coeffs[i]`` multiplies ``q**i``."""

    __slots__ = ("_nums", "_den", "_hash")

    def __init__(self, coeffs: Sequence[RationalLike] = ()):
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in fr]
        self._set(nums, den)

    def _set(self, nums: list[int], den: int) -> None:
        nums = _trim(nums)
        if not nums:
            den = 1
        elif den != 1:
            g = gcd(_content(nums), den)
            if g != 1:
                nums = [c // g for c in nums]
                den //= g
        self._nums = tuple(nums)
        self._den = den
        self._hash = None

    @classmethod
    def from_ints(cls, nums: Iterable[int], den: int = 1) -> "Polynomial":
        """Build from integer numerators over a common positive denominator."""
        if den <= 0:
            raise ValueError("denominator must be positive")
        p = cls.__new__(cls)
        p._set(list(nums), den)
        return p

    @classmethod
    def constant(cls, c: RationalLike) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: RationalLike = 1) -> "Polynomial":
        c = Fraction(c)
        return cls.from_ints([0] * degree + [c.numerator], c.denominator)

    # -- accessors -----------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(c, d) for c in self._nums)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._nums

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self._nums) - 1

    def is_zero(self) -> bool:
        return not self._nums

    def leading(self) -> Fraction:
        if not self._nums:
            return Fraction(0)
        return Fraction(self._nums[-1], self._den)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._nums):
            return Fraction(self._nums[i], self._den)
        return Fraction(0)

    def __len__(self) -> int:
        return len(self._nums)

    def primitive(self) -> tuple[int, ...]:
        """Integer coefficients of the primitive part (positive leading term)."""
        if not self._nums:
            return ()
        g = _content(self._nums)
        if self._nums[-1] < 0:
            g = -g
        return tuple(c // g for c in self._nums)

    # -- dunder arithmetic --------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._den == other._den and self._nums == other._nums

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nums, self._den))
        return self._hash

    def __neg__(self) -> "Polynomial":
        return Polynomial.from_ints([-c for c in self._nums], self._den)

    def __add__(self, other):
        return poly_arith(self, _coerce(other), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return poly_arith(self, _coerce(other), "sub")

    def __rsub__(self, other):
        return poly_arith(_coerce(other), self, "sub")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return poly_arith(self, _coerce(other), "mul")

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        return poly_pow(self, e)

    def __call__(self, q: RationalLike) -> Fraction:
        return evaluate_exact(self, q)

    def scale(self, c: RationalLike) -> "Polynomial":
        c = Fraction(c)
        return Polynomial.from_ints([x * c.numerator for x in self._nums], self._den * c.denominator)

    def shift_degree(self, k: int) -> "Polynomial":
        """Multiply by ``q**k``."""
        if not self._nums:
            return self
        return Polynomial.from_ints([0] * k + list(self._nums), self._den)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _coerce(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.constant(x)
    raise TypeError(f"cannot treat {type(x).__name__} as a polynomial")


ZERO = Polynomial()
ONE = Polynomial((1,))
#: the variable ``q``
Q = Polynomial((0, 1))


# ----------------------------------------------------------------------
# integer kernels

def _int_add(a: Sequence[int], b: Sequence[int], sb: int = 1) -> list[int]:
    if len(a) < len(b):
        out = [sb * y for y in b]
        for i, x in enumerate(a):
            out[i] += x
    else:
        out = list(a)
        for i, y in enumerate(b):
            out[i] += sb * y
    return out


def _pack(nums: Sequence[int], width: int) -> int:
    nbytes = width // 8
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in nums)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in nums)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, count: int, width: int) -> list[int]:
    nbytes = width // 8
    raw = (value % (1 << (width * count))).to_bytes(nbytes * count, "little")
    full = 1 << width
    half = full >> 1
    out = []
    carry = 0
    for i in range(count):
        v = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if v >= half:
            out.append(v - full)
            carry = 1
        else:
            out.append(v)
            carry = 0
    return out


def int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of integer coefficient lists.

    Small inputs use schoolbook convolution; larger ones pack both operands
    into single big integers (Kronecker substitution) so the work lands in
    the interpreter's bignum multiply.
    """
    if not a or not b:
        return []
    if min(len(a), len(b)) <= 16:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    bound = ma * mb * min(len(a), len(b))
    width = bound.bit_length() + 2
    width = (width + 7) // 8 * 8
    prod = _pack(a, width) * _pack(b, width)
    return _unpack(prod, len(a) + len(b) - 1, width)


# ----------------------------------------------------------------------
# operations

def poly_arith(p: Polynomial, r: Polynomial, op: str) -> Polynomial:
    """Exact ``p op r`` for ``op`` in ``{"add", "sub", "mul"}``."""
    if op == "mul":
        return Polynomial.from_ints(int_mul(p._nums, r._nums), p._den * r._den)
    if op not in ("add", "sub"):
        raise ValueError(f"unknown operation {op!r}")
    sign = 1 if op == "add" else -1
    if p._den == r._den:
        return Polynomial.from_ints(_int_add(p._nums, r._nums, sign), p._den)
    g = gcd(p._den, r._den)
    fp, fr = r._den // g, p._den // g
    return Polynomial.from_ints(
        _int_add([c * fp for c in p._nums], [c * fr for c in r._nums], sign),
        p._den * fp,
    )


def poly_pow(p: Polynomial, exponent: int, ceiling: int = DEFAULT_DEGREE_CEILING) -> Polynomial:
    """``p ** exponent`` by repeated squaring.

    Raises :class:`DegreeCeilingError` when the result degree would exceed
    ``ceiling``; such powers belong on the log-derivative path.
    """
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    if exponent == 0:
        return ONE
    if p.degree > 0 and p.degree * exponent > ceiling:
        raise DegreeCeilingError(
            f"degree {p.degree} * {exponent} exceeds ceiling {ceiling}"
        )
    if p.degree <= 0:
        return Polynomial.constant(p[0] ** exponent)
    result = [1]
    base = list(p._nums)
    e = exponent
    while True:
        if e & 1:
            result = int_mul(result, base)
        e >>= 1
        if not e:
            break
        base = int_mul(base, base)
    return Polynomial.from_ints(result, p._den ** exponent)


def differentiate(p: Polynomial) -> Polynomial:
    return Polynomial.from_ints([i * c for i, c in enumerate(p._nums)][1:], p._den)


def evaluate_exact(p: Polynomial, q: RationalLike) -> Fraction:
    """Exact value ``p(q)`` by a Horner scheme on integers."""
    q = Fraction(q)
    nums = p._nums
    if not nums:
        return Fraction(0)
    a, b = q.numerator, q.denominator
    acc = homogeneous_eval(nums, a, b)
    return Fraction(acc, p._den * b ** (len(nums) - 1))


def homogeneous_eval(nums: Sequence[int], a: int, b: int) -> int:
    """``b**d * p(a/b)`` for integer coefficients; same sign as ``p(a/b)`` when ``b > 0``."""
    if not nums:
        return 0
    if b == 1:
        acc = 0
        for c in reversed(nums):
            acc = acc * a + c
        return acc
    acc = nums[-1]
    bp = 1
    for c in reversed(nums[:-1]):
        bp *= b
        acc = acc * a + c * bp
    return acc


def divmod_poly(p: Polynomial, d: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Euclidean division over the rationals."""
    if d.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    dc = d.coeffs
    dl = dc[-1]
    dd = len(dc) - 1
    if len(rem) - 1 < dd:
        return ZERO, p
    quot = [Fraction(0)] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if c:
            f = c / dl
            quot[k - dd] = f
            for j in range(dd + 1):
                rem[k - dd + j] -= f * dc[j]
    return Polynomial(quot), Polynomial(rem[:dd])


def exact_quotient(p: Polynomial, d: Polynomial) -> Polynomial:
    """``p / d`` when ``d`` divides ``p``; raises otherwise."""
    quo, rem = divmod_poly(p, d)
    if not rem.is_zero():
        raise ArithmeticError("division is not exact")
    return quo


def compose_affine(p: Polynomial, a: RationalLike, b: RationalLike) -> Polynomial:
    """``p(a + b*q)``."""
    out = ZERO
    lin = Polynomial((a, b))
    for c in reversed(p.coeffs):
        out = out * lin + c
    return out


# ----------------------------------------------------------------------
# presentation

def _fmt_num(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Polynomial, var: str = "q") -> str:
    """Render in ascending powers, e.g. ``1 - 3q^2 + 2q^3``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        mag = abs(c)
        if i == 0:
            body = _fmt_num(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{_fmt_num(mag)}{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def poly_to_json(p: Polynomial) -> dict:
    return {"coeffs": [[str(c.numerator), str(c.denominator)] for c in p.coeffs]}


def poly_from_json(obj: dict) -> Polynomial:
    try:
        pairs = obj["coeffs"]
        return Polynomial([Fraction(int(n), int(d)) for n, d in pairs])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed polynomial JSON: {exc}") from exc
