"""Small simple graphs and brute-force reliability oracles."""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .polycore import SpanningForm

#: largest edge count accepted by the exhaustive oracles
MAX_BRUTE_EDGES = 24
#: trials per Monte Carlo chunk; each chunk owns one Philox counter block
MC_CHUNK = 1 << 16
MC_ALGORITHM = "numpy Philox4x64-10, key=seed, counter block per 65536-trial chunk"


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("a graph needs at least one vertex")
        seen = set()
        norm = []
        for u, w in self.edges:
            u, w = int(u), int(w)
            if u == w:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= w < self.vertex_count):
                raise ValueError(f"edge ({u}, {w}) has an endpoint outside [0, {self.vertex_count})")
            e = (min(u, w), max(u, w))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple(combinations(range(n), 2)))


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _connected_edges(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    parent = list(range(n))
    comps = n
    for u, w in edges:
        ru, rw = _find(parent, u), _find(parent, w)
        if ru != rw:
            parent[ru] = rw
            comps -= 1
    return comps == 1


def is_connected(g: SimpleGraph) -> bool:
    return _connected_edges(g.vertex_count, g.edges)


def bridges(g: SimpleGraph) -> list[tuple[int, int]]:
    """Edges whose removal disconnects ``g`` (iterative low-link search)."""
    if not is_connected(g):
        raise ValueError("bridges() needs a connected graph")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.vertex_count)]
    for idx, (u, w) in enumerate(g.edges):
        adj[u].append((w, idx))
        adj[w].append((u, idx))
    disc = [-1] * g.vertex_count
    low = [0] * g.vertex_count
    out = []
    timer = 0
    disc[0] = low[0] = timer
    stack = [(0, -1, iter(adj[0]))]
    while stack:
        v, via, it = stack[-1]
        for w, idx in it:
            if idx == via:
                continue
            if disc[w] == -1:
                timer += 1
                disc[w] = low[w] = timer
                stack.append((w, idx, iter(adj[w])))
                break
            low[v] = min(low[v], disc[w])
        else:
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    out.append(g.edges[via])
    return sorted(out)


def one_point_union(gs: Sequence[SimpleGraph], attach: Sequence[int]) -> SimpleGraph:
    """Glue the graphs at one chosen vertex each.

    The merged vertex becomes 0; the other vertices follow block by block
    in input order, each block in increasing original label.
    """
    if len(gs) != len(attach):
        raise ValueError("need one attach vertex per graph")
    if not gs:
        raise ValueError("need at least one graph")
    edges = []
    nxt = 1
    for g, a in zip(gs, attach):
        if not 0 <= a < g.vertex_count:
            raise ValueError(f"attach vertex {a} not in a graph with {g.vertex_count} vertices")
        label = {a: 0}
        for v in range(g.vertex_count):
            if v != a:
                label[v] = nxt
                nxt += 1
        edges.extend((label[u], label[w]) for u, w in g.edges)
    return SimpleGraph(nxt, tuple(edges))


# ----------------------------------------------------------------------
# exhaustive oracles

def _check_size(g: SimpleGraph) -> None:
    if g.m > MAX_BRUTE_EDGES:
        raise ValueError(f"{g.m} edges exceeds the brute-force limit of {MAX_BRUTE_EDGES}")


def _masks_connected(g: SimpleGraph, masks: np.ndarray) -> np.ndarray:
    """Vectorised connectivity of the spanning subgraphs selected by each edge mask."""
    n = g.vertex_count
    if n == 1:
        return np.ones(len(masks), dtype=bool)
    labels = np.tile(np.arange(n, dtype=np.int8 if n < 128 else np.int32), (len(masks), 1))
    present = [((masks >> e) & 1).astype(bool) for e in range(g.m)]
    for _ in range(n - 1):
        changed = False
        for e, (u, w) in enumerate(g.edges):
            sel = present[e]
            lu, lw = labels[:, u], labels[:, w]
            low = np.minimum(lu, lw)
            upd = sel & (low != np.maximum(lu, lw))
            if upd.any():
                changed = True
                labels[upd, u] = low[upd]
                labels[upd, w] = low[upd]
        if not changed:
            break
    return (labels == 0).all(axis=1)


def connectivity_table(g: SimpleGraph) -> np.ndarray:
    """``table[mask]`` is True when the edges in ``mask`` connect every vertex."""
    _check_size(g)
    total = 1 << g.m
    out = np.empty(total, dtype=bool)
    step = 1 << 16
    for start in range(0, total, step):
        masks = np.arange(start, min(start + step, total), dtype=np.int64)
        out[start:start + len(masks)] = _masks_connected(g, masks)
    return out


def _popcounts(m: int) -> np.ndarray:
    pc = np.zeros(1 << m, dtype=np.int64)
    for e in range(m):
        pc += (np.arange(1 << m, dtype=np.int64) >> e) & 1
    return pc


def brute_force_spanning_counts(g: SimpleGraph) -> SpanningForm:
    """``N_i`` = number of ``i``-edge subsets forming a connected spanning subgraph."""
    table = connectivity_table(g)
    sizes = _popcounts(g.m)[table]
    counts = np.bincount(sizes, minlength=g.m + 1)
    return SpanningForm(g.m, tuple(int(c) for c in counts))


def bridge_pair_counts(g: SimpleGraph) -> list[int]:
    """Entry ``i``: pairs (connected spanning subgraph with ``i+1`` edges, bridge of it)."""
    if g.m == 0:
        return []
    table = connectivity_table(g)
    pc = _popcounts(g.m)
    masks = np.arange(1 << g.m, dtype=np.int64)
    out = np.zeros(g.m + 1, dtype=np.int64)
    for e in range(g.m):
        bit = 1 << e
        hit = table & ((masks & bit) != 0) & ~table[masks ^ bit]
        out += np.bincount(pc[hit], minlength=g.m + 1)
    return [int(c) for c in out[1:]]


def connected_graphs(max_vertices: int, max_edges: int | None = None) -> Iterator[SimpleGraph]:
    """Every connected labelled simple graph on 1..max_vertices vertices."""
    for n in range(1, max_vertices + 1):
        all_edges = list(combinations(range(n), 2))
        for mask in range(1 << len(all_edges)):
            edges = tuple(e for i, e in enumerate(all_edges) if mask >> i & 1)
            if max_edges is not None and len(edges) > max_edges:
                continue
            if _connected_edges(n, edges):
                yield SimpleGraph(n, edges)


# ----------------------------------------------------------------------
# Monte Carlo

@dataclass(frozen=True)
class MCEstimate:
    q: Fraction
    trials: int
    successes: int
    seed: int
    algorithm: str = MC_ALGORITHM

    @property
    def estimate(self) -> Fraction:
        return Fraction(self.successes, self.trials)

    @property
    def std_error(self) -> Decimal:
        p = self.estimate
        with localcontext() as ctx:
            ctx.prec = 40
            return (Decimal(p.numerator) * Decimal(p.denominator - p.numerator)
                    / (Decimal(p.denominator) ** 2 * self.trials)).sqrt()

    def to_json(self) -> dict:
        return {
            "q": str(self.q),
            "trials": self.trials,
            "successes": self.successes,
            "estimate": str(self.estimate),
            "estimate_decimal": f"{self.successes / self.trials:.12f}",
            "std_error": str(self.std_error),
            "seed": self.seed,
            "algorithm": self.algorithm,
        }


def monte_carlo_reliability(g: SimpleGraph, q: Union[Fraction, int], trials: int, seed: int) -> MCEstimate:
    """Estimate all-terminal reliability when each edge fails with probability ``q``.

    An edge fails when a uniform integer in ``[0, den)`` falls below
    ``num`` (``q = num/den``), so rational ``q`` is honoured exactly.  Chunk
    ``j`` draws from Philox with counter block ``j``; the result depends
    only on ``(seed, trials)``.
    """
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise ValueError("q must lie in [0, 1]")
    if trials < 1:
        raise ValueError("trials must be positive")
    if q.denominator >= 1 << 62:
        raise ValueError("q denominator must be below 2**62")
    seed &= (1 << 64) - 1
    successes = 0
    for j, start in enumerate(range(0, trials, MC_CHUNK)):
        size = min(MC_CHUNK, trials - start)
        bitgen = np.random.Philox(key=seed, counter=[0, 0, 0, j])
        rng = np.random.Generator(bitgen)
        if g.m:
            draws = rng.integers(0, q.denominator, size=(size, g.m), dtype=np.int64)
            alive = draws >= q.numerator
            weights = np.int64(1) << np.arange(g.m, dtype=np.int64)
            masks = (alive.astype(np.int64) * weights).sum(axis=1)
        else:
            masks = np.zeros(size, dtype=np.int64)
        successes += int(_masks_connected(g, masks).sum())
    return MCEstimate(q, trials, successes, seed)


# ----------------------------------------------------------------------
# file formats

def load_graph(path: Union[str, Path]) -> SimpleGraph:
    """Read ``{"vertices": v, "edges": [[u, w], ...]}`` or a ``u w`` per line edge list."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        return SimpleGraph(int(doc["vertices"]), tuple(tuple(e) for e in doc["edges"]))
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'u w', got {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if not edges:
        raise ValueError(f"{path}: no edges")
    n = max(max(e) for e in edges) + 1
    return SimpleGraph(n, tuple(edges))
