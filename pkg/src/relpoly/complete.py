"""Reliability polynomials of complete graphs.

``r_1 = 1`` and ``r_n = 1 - sum_{k=1}^{n-1} C(n-1, k-1) q^{k(n-k)} r_k``:
the vertex set splits into the component containing a fixed vertex (size
``k``) and the rest, with all ``k(n-k)`` edges between them failed.
"""

from __future__ import annotations

import json
import os
import threading
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Optional, Union

from .polycore import (
    Polynomial,
    SpanningForm,
    differentiate,
    evaluate_exact,
    poly_from_json,
    poly_to_json,
    to_spanning_form,
)

DEFAULT_MAX_N = 64
CACHE_VERSION = 1
CACHE_ENV = "RELPOLY_CACHE"


class CacheValidationError(ValueError):
    def __init__(self, n: int, reason: str):
        super().__init__(f"cache entry n={n}: {reason}")
        self.n = n


class CompleteCache:
    """Memo of ``r_n`` keyed by ``n``, optionally backed by a JSON file.

    Reads are lock-free; a missing entry is computed under the lock so
    concurrent callers never duplicate work.
    """

    def __init__(self, source_path: Optional[Union[str, Path]] = None, max_n: int = DEFAULT_MAX_N):
        self.entries: dict[int, Polynomial] = {1: Polynomial((1,))}
        self.source_path = Path(source_path) if source_path else None
        self.max_n = max_n
        self._lock = threading.RLock()

    def __contains__(self, n: int) -> bool:
        return n in self.entries

    def __len__(self) -> int:
        return len(self.entries)


_default_cache: Optional[CompleteCache] = None


def default_cache() -> CompleteCache:
    """Process-wide cache; loads from ``$RELPOLY_CACHE`` when set."""
    global _default_cache
    if _default_cache is None:
        path = os.environ.get(CACHE_ENV)
        cache = CompleteCache(path)
        if path:
            cache = load_cache(path, max_n=cache.max_n)
        _default_cache = cache
    return _default_cache


def _recurrence_ints(n: int, known: dict[int, list[int]]) -> list[int]:
    out = [1] + [0] * (n * (n - 1) // 2)
    for k in range(1, n):
        c = comb(n - 1, k - 1)
        shift = k * (n - k)
        for i, x in enumerate(known[k]):
            out[shift + i] -= c * x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def reliability_complete(n: int, cache: Optional[CompleteCache] = None) -> Polynomial:
    """Exact all-terminal reliability ``r_n(q)`` of ``K_n``."""
    cache = cache if cache is not None else default_cache()
    if n < 1:
        raise ValueError("n must be positive")
    if n > cache.max_n:
        raise ValueError(f"n = {n} exceeds the configured maximum {cache.max_n}")
    hit = cache.entries.get(n)
    if hit is not None:
        return hit
    with cache._lock:
        if n in cache.entries:
            return cache.entries[n]
        known = {k: list(p.numerators) for k, p in cache.entries.items()}
        for k in range(2, n + 1):
            if k not in known:
                known[k] = _recurrence_ints(k, known)
                cache.entries[k] = Polynomial.from_ints(known[k])
        return cache.entries[n]


def spanning_counts_complete(n: int, cache: Optional[CompleteCache] = None) -> SpanningForm:
    """Connected spanning subgraph counts of ``K_n`` by edge number."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return to_spanning_form(reliability_complete(n, cache), comb(n, 2))


# ----------------------------------------------------------------------
# persistence

def _validate(n: int, p: Polynomial) -> None:
    if n == 1:
        if p != Polynomial((1,)):
            raise CacheValidationError(n, "r_1 must be 1")
        return
    if p.degree != comb(n, 2):
        raise CacheValidationError(n, f"degree {p.degree} != C({n},2) = {comb(n, 2)}")
    if evaluate_exact(p, 0) != 1:
        raise CacheValidationError(n, "r_n(0) != 1")
    if evaluate_exact(p, 1) != 0:
        raise CacheValidationError(n, "r_n(1) != 0")


def save_cache(cache: CompleteCache, path: Optional[Union[str, Path]] = None) -> CompleteCache:
    path = Path(path) if path else cache.source_path
    if path is None:
        raise ValueError("no cache path given")
    doc = {
        "version": CACHE_VERSION,
        "entries": {str(n): poly_to_json(p) for n, p in sorted(cache.entries.items())},
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(doc))
    tmp.replace(path)
    cache.source_path = path
    return cache


def load_cache(path: Union[str, Path], max_n: int = DEFAULT_MAX_N) -> CompleteCache:
    """Read a cache file, re-validating every entry; a missing file gives an empty cache."""
    path = Path(path)
    cache = CompleteCache(path, max_n=max_n)
    if not path.exists():
        return cache
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    if doc.get("version") != CACHE_VERSION:
        raise ValueError(f"{path}: unsupported cache version {doc.get('version')!r}")
    for key, obj in doc.get("entries", {}).items():
        n = int(key)
        try:
            p = poly_from_json(obj)
        except ValueError as exc:
            raise CacheValidationError(n, str(exc)) from exc
        _validate(n, p)
        cache.entries[n] = p
    return cache


def cache_io(cache: CompleteCache, action: str, path: Optional[Union[str, Path]] = None) -> CompleteCache:
    if action == "save":
        return save_cache(cache, path)
    if action == "load":
        return load_cache(path or cache.source_path, cache.max_n)
    raise ValueError(f"unknown cache action {action!r}")


# ----------------------------------------------------------------------
# bound verifiers

ALPHA = Fraction(1, 8)


def sandwich_bound_holds(n: int, q: Fraction, cache: Optional[CompleteCache] = None) -> bool:
    """``1 - (n+1) q^(n-1) <= r_n(q) <= 1 - (n-1) q^(n-1)``."""
    r = evaluate_exact(reliability_complete(n, cache), q)
    t = q ** (n - 1)
    return 1 - (n + 1) * t <= r <= 1 - (n - 1) * t


def ratio_bound_polynomial(n: int, cache: Optional[CompleteCache] = None) -> Polynomial:
    """``C(n,2)^2 (1-q)^2 / 2 - r_n(q)``; non-negative on [0, 1] for n >= 3."""
    m = comb(n, 2)
    half = Fraction(m * m, 2)
    return Polynomial((half, -2 * half, half)) - reliability_complete(n, cache)


def derivative_bound_holds(f: Polynomial, m: int, q: Fraction) -> bool:
    """``q (1-q) |f'(q)| <= m |f(q)|``."""
    fp = evaluate_exact(differentiate(f), q)
    return q * (1 - q) * abs(fp) <= m * abs(evaluate_exact(f, q))
