"""Product specifications ``K2^5*K3^4*...``: one-point unions of complete graphs."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


class SpecParseError(ValueError):
    """Malformed product spec; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message: str, text: str, position: int):
        caret = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {caret}")
        self.message = message
        self.position = position


@dataclass(frozen=True)
class ProductSpec:
    """Ordered factors ``(n, l)``: ``l`` copies of ``K_n`` glued at one vertex."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        factors = tuple((int(n), int(l)) for n, l in self.factors)
        if not factors:
            raise ValueError("a product spec needs at least one factor")
        for n, l in factors:
            if n < 2:
                raise ValueError(f"K{n}: n must be at least 2")
            if l < 1:
                raise ValueError(f"K{n}^{l}: exponent must be at least 1")
        object.__setattr__(self, "factors", factors)

    def merged(self) -> "ProductSpec":
        """Combine repeated bases (``K3^2*K3^5`` -> ``K3^7``), first-occurrence order."""
        totals: dict[int, int] = {}
        for n, l in self.factors:
            totals[n] = totals.get(n, 0) + l
        return ProductSpec(tuple(totals.items()))

    @property
    def degree(self) -> int:
        """Degree of the reliability polynomial = edge count of the union."""
        return sum(l * comb(n, 2) for n, l in self.factors)

    @property
    def vertex_count(self) -> int:
        return 1 + sum(l * (n - 1) for n, l in self.factors)

    def has_bridge(self) -> bool:
        return any(n == 2 for n, _ in self.factors)

    def times(self, n: int, l: int) -> "ProductSpec":
        return ProductSpec(self.factors + ((n, l),))

    def __str__(self) -> str:
        return render_spec(self)


def render_spec(spec: ProductSpec) -> str:
    return "*".join(f"K{n}" if l == 1 else f"K{n}^{l}" for n, l in spec.factors)


def parse_spec(text: str) -> ProductSpec:
    """Parse ``term ('*' term)*`` with ``term := 'K' int ('^' int)?``.

    Whitespace is ignored between tokens and commas inside integers are
    dropped, so ``K14^100,000,000`` is accepted.
    """
    pos = 0
    length = len(text)

    def skip() -> None:
        nonlocal pos
        while pos < length and text[pos].isspace():
            pos += 1

    def integer() -> tuple[int, int]:
        nonlocal pos
        skip()
        start = pos
        digits = []
        while pos < length and (text[pos].isdigit() or (text[pos] == "," and digits)):
            if text[pos] != ",":
                digits.append(text[pos])
            pos += 1
        if not digits:
            raise SpecParseError("expected an integer", text, start)
        if text[pos - 1] == ",":
            raise SpecParseError("trailing comma in integer", text, pos - 1)
        return int("".join(digits)), start

    factors = []
    while True:
        skip()
        if pos >= length or text[pos] not in "Kk":
            raise SpecParseError("expected 'K'", text, pos)
        pos += 1
        n, n_at = integer()
        if n < 2:
            raise SpecParseError(f"K{n}: n must be at least 2", text, n_at)
        skip()
        l = 1
        if pos < length and text[pos] == "^":
            pos += 1
            l, l_at = integer()
            if l < 1:
                raise SpecParseError(f"K{n}^{l}: exponent must be at least 1", text, l_at)
        factors.append((n, l))
        skip()
        if pos >= length:
            break
        if text[pos] != "*":
            raise SpecParseError("expected '*' or end of input", text, pos)
        pos += 1
    return ProductSpec(tuple(factors))
