"""Initial placement of virtual qubits.

The placement strategy: edge-color the problem graph, take the two largest
color classes, linearize their union into a single chain over all virtual
qubits, and lay that chain along a Hamiltonian path of the hardware.  Every
chain gate then sits on hardware-adjacent qubits, so the two seeded gate
classes can run up front without any swapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coloring import EdgeColoring
from .graphs import Edge, HardwareGraph, ProblemGraph, canonical_edge


class NoHamiltonianPathError(RuntimeError):
    """The hardware declares no Hamiltonian path and the heuristic found none."""


class MappingError(ValueError):
    """Inconsistent mapper inputs (length mismatches, non-matching classes)."""


@dataclass(frozen=True)
class Chain:
    """A single path over all virtual qubits built from two color classes.

    ``links[i]`` describes the pair ``(vertices[i], vertices[i+1])``: 0 or 1
    for a gate from the first or second chosen class, ``None`` for a free
    junction between concatenated components (not a gate).  ``leftover``
    holds class edges dropped while breaking cycles; they go back to the
    pending pool.
    """

    vertices: tuple[int, ...]
    links: tuple[int | None, ...]
    leftover: tuple[Edge, ...]

    def gates(self, slot: int) -> list[Edge]:
        return [
            canonical_edge(self.vertices[i], self.vertices[i + 1])
            for i, s in enumerate(self.links)
            if s == slot
        ]


class Mapping:
    """Mutable bijection between virtual and physical qubits."""

    __slots__ = ("v2p", "p2v")

    def __init__(self, v2p: Sequence[int]):
        n = len(v2p)
        if sorted(v2p) != list(range(n)):
            raise MappingError("mapping must be a bijection over 0..n-1")
        self.v2p = list(v2p)
        self.p2v = [0] * n
        for v, p in enumerate(self.v2p):
            self.p2v[p] = v

    def physical(self, v: int) -> int:
        return self.v2p[v]

    def virtual(self, p: int) -> int:
        return self.p2v[p]

    def swap_physical(self, a: int, b: int) -> None:
        """Exchange the occupants of physical sites a and b."""
        va, vb = self.p2v[a], self.p2v[b]
        self.p2v[a], self.p2v[b] = vb, va
        self.v2p[va], self.v2p[vb] = b, a

    def copy(self) -> "Mapping":
        return Mapping(self.v2p)


def select_color_pair(col: EdgeColoring) -> tuple[int | None, int | None]:
    """Indices of the two largest color classes (ties -> lower index).

    With fewer than two classes the missing slots are ``None`` (paired with
    the empty class).
    """
    sizes = [0] * col.num_colors
    for c in col.colors.values():
        sizes[c] += 1
    order = sorted(range(col.num_colors), key=lambda c: (-sizes[c], c))
    first = order[0] if len(order) > 0 else None
    second = order[1] if len(order) > 1 else None
    return first, second


def _check_matching(edges: Sequence[Edge], what: str) -> None:
    seen: set[int] = set()
    for u, v in edges:
        if u in seen or v in seen:
            raise MappingError(f"{what} is not a matching")
        seen.add(u)
        seen.add(v)


def build_chain(n: int, class0: Sequence[Edge], class1: Sequence[Edge]) -> Chain:
    """Linearize two matchings into one simple path over all ``n`` vertices.

    The union of two matchings has max degree 2, so its components are paths
    and even cycles.  Each cycle is broken at one edge (preferring to keep
    the first class intact; ties by lowest endpoints); components are then
    concatenated by descending length, then lowest vertex id, with free
    junctions in between.  Broken edges are returned in ``leftover``.
    """
    _check_matching(class0, "first color class")
    _check_matching(class1, "second color class")
    slot_of: dict[Edge, int] = {}
    for e in class0:
        slot_of[canonical_edge(*e)] = 0
    for e in class1:
        ce = canonical_edge(*e)
        if ce in slot_of:
            raise MappingError(f"edge {ce} appears in both classes")
        slot_of[ce] = 1

    adj: dict[int, list[int]] = {v: [] for v in range(n)}
    for u, v in slot_of:
        if not (0 <= u < n and 0 <= v < n):
            raise MappingError(f"edge ({u}, {v}) out of range [0, {n})")
        adj[u].append(v)
        adj[v].append(u)

    class_sizes = (len(class0), len(class1))
    leftover: list[Edge] = []
    components: list[list[int]] = []
    visited = [False] * n

    def walk_path(start: int) -> list[int]:
        order = [start]
        visited[start] = True
        prev, cur = -1, start
        while True:
            nxt = [w for w in adj[cur] if w != prev and not visited[w]]
            if not nxt:
                return order
            prev, cur = cur, min(nxt)
            order.append(cur)
            visited[cur] = True

    for v in range(n):
        if visited[v]:
            continue
        if len(adj[v]) <= 1:
            components.append(walk_path(v))

    for v in range(n):
        if visited[v]:
            continue
        # Remaining vertices all have degree 2: a cycle.  Collect it, pick
        # the edge to drop, and walk the resulting open path.
        cycle = [v]
        probe, prev = v, -1
        while True:
            nxt = next(w for w in adj[probe] if w != prev)
            if nxt == v:
                break
            cycle.append(nxt)
            prev, probe = probe, nxt
        cycle_edges = [canonical_edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
        drop_slot = 1 if class_sizes[0] >= class_sizes[1] else 0
        candidates = [e for e in cycle_edges if slot_of[e] == drop_slot] or cycle_edges
        drop = min(candidates)
        leftover.append(drop)
        adj[drop[0]].remove(drop[1])
        adj[drop[1]].remove(drop[0])
        start = min(drop)
        components.append(walk_path(start))

    components.sort(key=lambda comp: (-len(comp), min(comp)))
    vertices: list[int] = []
    links: list[int | None] = []
    for comp in components:
        if vertices:
            links.append(None)
        for i in range(len(comp) - 1):
            links.append(slot_of[canonical_edge(comp[i], comp[i + 1])])
        vertices.extend(comp)
    return Chain(tuple(vertices), tuple(links), tuple(sorted(leftover)))


def hamiltonian_path(hw: HardwareGraph) -> tuple[int, ...]:
    """A Hamiltonian path of the hardware graph.

    Prefers the declared path (square grids always carry their snake
    ordering); otherwise runs a budgeted backtracking search with a
    fewest-remaining-neighbors heuristic.  Hardware without any Hamiltonian
    path (e.g. trees with three leaves) is rejected.
    """
    if hw.path is not None:
        return hw.path
    adj = hw.adjacency()
    m = hw.m
    if m == 1:
        return (0,)
    budget = [200_000]

    def search(order: list[int], used: list[bool]) -> list[int] | None:
        if len(order) == m:
            return order
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        cur = order[-1]
        nxt = [w for w in adj[cur] if not used[w]]
        nxt.sort(key=lambda w: (sum(1 for x in adj[w] if not used[x]), w))
        for w in nxt:
            used[w] = True
            order.append(w)
            found = search(order, used)
            if found is not None:
                return found
            order.pop()
            used[w] = False
        return None

    starts = sorted(range(m), key=lambda v: (len(adj[v]), v))
    for s in starts:
        used = [False] * m
        used[s] = True
        found = search([s], used)
        if found is not None:
            return tuple(found)
        if budget[0] <= 0:
            break
    raise NoHamiltonianPathError("no Hamiltonian path found")


def embed_chain(chain: Chain, path: Sequence[int]) -> Mapping:
    """Place the i-th chain vertex on the i-th path vertex."""
    if len(chain.vertices) != len(path):
        raise MappingError(
            f"chain covers {len(chain.vertices)} qubits but path has {len(path)}"
        )
    v2p = [0] * len(path)
    for i, v in enumerate(chain.vertices):
        v2p[v] = path[i]
    return Mapping(v2p)


def init_sets(pg: ProblemGraph, chain: Chain) -> tuple[set[Edge], set[Edge]]:
    """Split the problem edges into the seeded buffer and the pending pool.

    The buffer starts with the chain gates of the first (larger) class: they
    are qubit-disjoint and hardware-adjacent after embedding, so they form
    the whole first circuit layer.  Everything else, including the second
    class and cycle leftovers, waits in the pending pool.
    """
    buffer_seed = set(chain.gates(0))
    pending = set(pg.edges) - buffer_seed
    if buffer_seed | pending != set(pg.edges) or buffer_seed & pending:
        raise MappingError("chain gates are inconsistent with the problem graph")
    return buffer_seed, pending


@dataclass(frozen=True)
class PlacementResult:
    coloring: EdgeColoring
    chain: Chain
    mapping: Mapping
    buffer_seed: frozenset[Edge]
    pending: frozenset[Edge]


def place(pg: ProblemGraph, hw: HardwareGraph) -> PlacementResult:
    """Full mapper pipeline: color, chain, embed, split."""
    from .coloring import edge_coloring  # local import keeps module load light

    if pg.n != hw.m:
        raise MappingError(
            f"qubit count mismatch: problem has {pg.n} vertices, hardware has {hw.m}"
        )
    col = edge_coloring(pg)
    c0, c1 = select_color_pair(col)
    e0 = col.class_edges(c0) if c0 is not None else []
    e1 = col.class_edges(c1) if c1 is not None else []
    chain = build_chain(pg.n, e0, e1)
    path = hamiltonian_path(hw)
    mapping = embed_chain(chain, path)
    buffer_seed, pending = init_sets(pg, chain)
    return PlacementResult(col, chain, mapping, frozenset(buffer_seed), frozenset(pending))
