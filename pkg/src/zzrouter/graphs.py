"""Graph primitives: problem graphs, hardware graphs, distances, generators, I/O.

Vertices are integers ``0..n-1``.  Edges are canonical unordered pairs
``(u, v)`` with ``u < v`` throughout the package.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .rng import SplitMix64

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class EdgeListParseError(ValueError):
    """Malformed edge-list text; carries the 1-based offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DisconnectedGraphError(ValueError):
    """Raised when an operation requires a connected hardware graph."""


def _validate_edges(n: int, edges: Iterable[Edge], what: str) -> tuple[Edge, ...]:
    seen: set[Edge] = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"{what}: self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"{what}: edge ({u}, {v}) out of range [0, {n})")
        e = canonical_edge(u, v)
        if e in seen:
            raise ValueError(f"{what}: duplicate edge {e}")
        seen.add(e)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class ProblemGraph:
    """Simple undirected graph of virtual qubits; edges are pending interaction gates.

    Per-edge weights are carried for completeness but never influence routing.
    """

    n: int
    edges: tuple[Edge, ...]
    weights: Mapping[Edge, float] = field(default_factory=dict)

    def __init__(self, n: int, edges: Iterable[Edge], weights: Mapping[Edge, float] | None = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", _validate_edges(n, edges, "problem graph"))
        object.__setattr__(self, "weights", dict(weights or {}))

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def max_degree(self) -> int:
        counts = [0] * self.n
        for u, v in self.edges:
            counts[u] += 1
            counts[v] += 1
        return max(counts, default=0)

    def weight(self, u: int, v: int) -> float:
        return self.weights.get(canonical_edge(u, v), 1.0)


@dataclass(frozen=True)
class HardwareGraph:
    """Coupler topology of the target processor.

    ``path`` optionally declares a Hamiltonian path (every vertex once,
    consecutive vertices coupled).  ``grid_shape`` is set for square grids
    built by :func:`square_grid` and recovered by structural detection for
    graphs loaded from files; row/column geometry enables grid-only router
    passes.  Connectivity is enforced by :func:`all_pairs_distances`.
    """

    m: int
    couplers: tuple[Edge, ...]
    path: tuple[int, ...] | None = None
    grid_shape: tuple[int, int] | None = None

    def __init__(
        self,
        m: int,
        couplers: Iterable[Edge],
        path: Sequence[int] | None = None,
        grid_shape: tuple[int, int] | None = None,
    ):
        if m < 1:
            raise ValueError("hardware graph needs at least one qubit")
        edges = _validate_edges(m, couplers, "hardware graph")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "couplers", edges)
        if path is not None:
            path = tuple(path)
            if sorted(path) != list(range(m)):
                raise ValueError("declared path must visit every vertex exactly once")
            coupler_set = set(edges)
            for a, b in zip(path, path[1:]):
                if canonical_edge(a, b) not in coupler_set:
                    raise ValueError(f"declared path step ({a}, {b}) is not a coupler")
        object.__setattr__(self, "path", path)
        if grid_shape is None:
            grid_shape = _detect_grid_shape(m, edges)
        object.__setattr__(self, "grid_shape", grid_shape)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.m)]
        for u, v in self.couplers:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        return adj

    @cached_property
    def coupler_set(self) -> frozenset[Edge]:
        return frozenset(self.couplers)


def _detect_grid_shape(m: int, couplers: tuple[Edge, ...]) -> tuple[int, int] | None:
    # Recognizes the canonical row-major labeling only (vertex = r*L + c).
    side = round(m ** 0.5)
    if side * side != m or side < 2:
        return None
    expected = set()
    for r in range(side):
        for c in range(side):
            v = r * side + c
            if c + 1 < side:
                expected.add((v, v + 1))
            if r + 1 < side:
                expected.add((v, v + side))
    return (side, side) if expected == set(couplers) else None


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop counts over the hardware couplers."""

    dist: tuple[tuple[int, ...], ...]

    def __getitem__(self, a: int) -> tuple[int, ...]:
        return self.dist[a]

    @property
    def size(self) -> int:
        return len(self.dist)


def all_pairs_distances(hw: HardwareGraph) -> DistanceMatrix:
    """BFS from every vertex; raises :class:`DisconnectedGraphError` if unreachable pairs exist."""
    adj = hw.adjacency()
    rows: list[tuple[int, ...]] = []
    for src in range(hw.m):
        dist = [-1] * hw.m
        dist[src] = 0
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if any(d < 0 for d in dist):
            raise DisconnectedGraphError("hardware graph is disconnected")
        rows.append(tuple(dist))
    return DistanceMatrix(tuple(rows))


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def gen_k_regular(n: int, k: int, seed: int) -> ProblemGraph:
    """Random k-regular simple graph via the pairing model.

    Stubs are shuffled and paired; draws with self-loops or duplicate edges
    are rejected and retried, falling back to local edge switching if the
    retry budget runs out.  Deterministic for a fixed ``(n, k, seed)``.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    if k < 0 or k >= n:
        raise ValueError(f"degree k={k} must satisfy 0 <= k < n={n}")
    if (n * k) % 2 != 0:
        raise ValueError(f"n*k must be even (got n={n}, k={k})")
    if k == 0:
        return ProblemGraph(n, [])

    rng = SplitMix64(seed)
    pairs: list[Edge] = []
    for _ in range(200):
        stubs = [v for v in range(n) for _ in range(k)]
        rng.shuffle(stubs)
        pairs = [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]
        edges = {canonical_edge(u, v) for u, v in pairs if u != v}
        if len(edges) == n * k // 2:
            return ProblemGraph(n, sorted(edges))

    # Edge-switching repair of the last draw: trade a violating pair plus a
    # good edge for two fresh edges, preserving all degrees.
    good: set[Edge] = set()
    bad: list[Edge] = []
    for u, v in pairs:
        e = canonical_edge(u, v)
        if u != v and e not in good:
            good.add(e)
        else:
            bad.append((u, v))
    budget = 1000 * max(1, len(bad))
    while bad and budget > 0:
        budget -= 1
        u, v = bad[-1]
        x, y = rng.choice(sorted(good))
        for a, b in ((x, y), (y, x)):
            e1, e2 = canonical_edge(u, a), canonical_edge(v, b)
            if u == a or v == b or e1 == e2 or e1 in good or e2 in good:
                continue
            good.discard(canonical_edge(x, y))
            good.add(e1)
            good.add(e2)
            bad.pop()
            break
    if bad:
        raise RuntimeError(f"could not realize a {k}-regular graph on {n} vertices")
    return ProblemGraph(n, sorted(good))


def gen_erdos_renyi(n: int, p: float, seed: int) -> ProblemGraph:
    """G(n, p): each of the C(n,2) pairs is included independently with probability p."""
    if n <= 0:
        raise ValueError("n must be positive")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p={p} must lie in [0, 1]")
    rng = SplitMix64(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return ProblemGraph(n, edges)


def square_grid(L: int) -> HardwareGraph:
    """L x L square-grid hardware with the snake Hamiltonian path attached.

    Vertex ``r*L + c`` sits at row r (row 0 = bottom), column c.  The path
    starts at the bottom-left corner and alternates sweep direction row by
    row (boustrophedon order).
    """
    if L < 2:
        raise ValueError("grid side must be at least 2")
    couplers: list[Edge] = []
    for r in range(L):
        for c in range(L):
            v = r * L + c
            if c + 1 < L:
                couplers.append((v, v + 1))
            if r + 1 < L:
                couplers.append((v, v + L))
    path: list[int] = []
    for r in range(L):
        cols = range(L) if r % 2 == 0 else range(L - 1, -1, -1)
        path.extend(r * L + c for c in cols)
    return HardwareGraph(L * L, couplers, path=path, grid_shape=(L, L))


# ---------------------------------------------------------------------------
# Edge-list text format
# ---------------------------------------------------------------------------
#
#   # comment
#   <n> <m>
#   <u> <v> [weight]     (m lines)
#   path: v0 v1 ... v(n-1)   (hardware files only, optional)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_edge_list(text: str) -> tuple[int, list[tuple[int, int, float | None]], list[int] | None]:
    n = m = -1
    edges: list[tuple[int, int, float | None]] = []
    path: list[int] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if n < 0:
            parts = line.split()
            if len(parts) != 2:
                raise EdgeListParseError("expected header '<n> <m>'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListParseError("header counts must be integers", lineno) from None
            if n < 0 or m < 0:
                raise EdgeListParseError("header counts must be nonnegative", lineno)
            continue
        if line.startswith("path:"):
            try:
                path = [int(tok) for tok in line[len("path:"):].split()]
            except ValueError:
                raise EdgeListParseError("path vertices must be integers", lineno) from None
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListParseError("expected '<u> <v> [weight]'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else None
        except ValueError:
            raise EdgeListParseError("malformed edge line", lineno) from None
        if len(edges) >= m:
            raise EdgeListParseError(f"more than the declared {m} edges", lineno)
        edges.append((u, v, w))
    if n < 0:
        raise EdgeListParseError("missing header '<n> <m>'", 1)
    if len(edges) != m:
        raise EdgeListParseError(f"declared {m} edges but found {len(edges)}", len(text.splitlines()) or 1)
    return n, edges, path


def parse_problem_graph(text: str) -> ProblemGraph:
    n, rows, path = _parse_edge_list(text)
    if path is not None:
        raise EdgeListParseError("problem graphs do not declare a path", 1)
    weights = {canonical_edge(u, v): w for u, v, w in rows if w is not None}
    return ProblemGraph(n, [(u, v) for u, v, _ in rows], weights)


def parse_hardware_graph(text: str) -> HardwareGraph:
    n, rows, path = _parse_edge_list(text)
    if any(w is not None for _, _, w in rows):
        raise EdgeListParseError("hardware couplers are unweighted", 1)
    return HardwareGraph(n, [(u, v) for u, v, _ in rows], path=path)


def format_problem_graph(pg: ProblemGraph) -> str:
    lines = [f"{pg.n} {len(pg.edges)}"]
    for u, v in pg.edges:
        w = pg.weights.get((u, v))
        lines.append(f"{u} {v}" if w is None else f"{u} {v} {w}")
    return "\n".join(lines) + "\n"


def format_hardware_graph(hw: HardwareGraph) -> str:
    lines = [f"{hw.m} {len(hw.couplers)}"]
    lines.extend(f"{u} {v}" for u, v in hw.couplers)
    if hw.path is not None:
        lines.append("path: " + " ".join(str(v) for v in hw.path))
    return "\n".join(lines) + "\n"
