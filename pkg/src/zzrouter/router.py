"""Greedy swap router for commuting two-qubit interaction layers.

The router keeps two containers: a qubit-disjoint *buffer* of gates it is
actively trying to execute and a *pending* pool holding everything else.
Each iteration executes every buffer gate whose qubits are hardware
adjacent, refreshes the buffer, and then applies swaps chosen by their net
effect on the total buffer distance: a maximal matching of strictly
improving swaps, an optional grid-only pass that pairs two individually
neutral swaps into a joint improvement, and finally a random-but-seeded
neutral swap so the search can never wedge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .circuit import RZZ, SWAP, Gate, RoutedCircuit
from .coloring import maximal_matching
from .graphs import (
    DistanceMatrix,
    Edge,
    HardwareGraph,
    ProblemGraph,
    all_pairs_distances,
    canonical_edge,
)
from .mapper import Mapping, place
from .rng import SplitMix64


class RoutingError(RuntimeError):
    """Routing cannot proceed (size mismatch, unreachable configuration)."""


@dataclass
class RouterConfig:
    enable_paired_zero_swaps: bool = True
    fallback_stall_limit: int | None = None  # defaults to 3 * qubit count
    seed: int = 0


class GateBuffer:
    """Qubit-disjoint set of pending gates with cached hardware distances."""

    def __init__(self):
        self.gates: dict[Edge, int] = {}
        self.gate_of: dict[int, Edge] = {}

    def __len__(self) -> int:
        return len(self.gates)

    def __contains__(self, edge: Edge) -> bool:
        return edge in self.gates

    def add(self, edge: Edge, distance: int) -> None:
        u, v = edge
        if u in self.gate_of or v in self.gate_of:
            raise ValueError(f"buffer already holds a gate on {edge}")
        self.gates[edge] = distance
        self.gate_of[u] = edge
        self.gate_of[v] = edge

    def remove(self, edge: Edge) -> None:
        del self.gates[edge]
        del self.gate_of[edge[0]]
        del self.gate_of[edge[1]]

    def partner(self, q: int) -> int | None:
        edge = self.gate_of.get(q)
        if edge is None:
            return None
        return edge[1] if edge[0] == q else edge[0]

    def total_distance(self) -> int:
        return sum(self.gates.values())

    def refresh(self, virtuals: tuple[int, ...], mapping: Mapping, dm: DistanceMatrix) -> None:
        """Recompute cached distances of gates touching the given virtual qubits."""
        for q in virtuals:
            edge = self.gate_of.get(q)
            if edge is not None:
                u, v = edge
                self.gates[edge] = dm[mapping.physical(u)][mapping.physical(v)]


@dataclass
class RouterState:
    pg: ProblemGraph
    hw: HardwareGraph
    dm: DistanceMatrix
    mapping: Mapping
    buffer: GateBuffer
    pending: set[Edge]
    circuit: RoutedCircuit
    rng: SplitMix64
    config: RouterConfig
    adj: list[list[int]] = field(default_factory=list)
    executed: set[Edge] = field(default_factory=set)
    used_this_layer: set[int] = field(default_factory=set)
    trace: list[dict[str, Any]] | None = None

    def distance(self, u: int, v: int) -> int:
        return self.dm[self.mapping.physical(u)][self.mapping.physical(v)]

    def total_distance(self) -> int:
        return self.buffer.total_distance()

    def _emit(self, event: str, **info: Any) -> None:
        if self.trace is not None:
            self.trace.append({"event": event, **info})


@dataclass(frozen=True)
class SwapGraph:
    """Couplers that are strictly improving swaps, annotated with their score."""

    edges: dict[Edge, int]

    def ordered(self) -> list[Edge]:
        # Biggest improvements first, then coupler id: the matching traversal order.
        return sorted(self.edges, key=lambda e: (-self.edges[e], e))


# ---------------------------------------------------------------------------
# Scores
# ---------------------------------------------------------------------------


def _deltas(state: RouterState, a: int, b: int) -> tuple[int | None, int | None]:
    """Per-occupant distance changes for hypothetically swapping sites a and b.

    Positive means that occupant's buffer gate gets shorter.  ``None`` means
    the occupant is not in any buffer gate.
    """
    mapping, dm = state.mapping, state.dm
    va, vb = mapping.virtual(a), mapping.virtual(b)

    def delta(v: int, here: int, there: int) -> int | None:
        partner = state.buffer.partner(v)
        if partner is None:
            return None
        pp = mapping.physical(partner)
        if partner == mapping.virtual(there):
            pp = here  # partner is the other swapped occupant
        return dm[here][pp] - dm[there][pp]

    return delta(va, a, b), delta(vb, b, a)


def swap_score(state: RouterState, a: int, b: int) -> int | None:
    """Net decrease of the total buffer distance for swapping sites a and b.

    ``None`` marks a non-candidate (neither occupant is in the buffer),
    which is distinct from a genuine score of 0.  Raises for non-couplers.
    """
    if canonical_edge(a, b) not in state.hw.coupler_set:
        raise ValueError(f"({a}, {b}) is not a hardware coupler")
    da, db = _deltas(state, a, b)
    if da is None and db is None:
        return None
    return (da or 0) + (db or 0)


# ---------------------------------------------------------------------------
# Phases
# ---------------------------------------------------------------------------


def execute_ready_gates(state: RouterState) -> list[Edge]:
    """Execute every gate whose qubits are currently adjacent, with refills.

    Buffer gates at distance 1 are executed and each removal immediately
    refills from the pending pool, so newly admitted adjacent gates run in
    the same pass.  Adjacent *pending* gates execute too, straight from the
    pool: all gates commute, so a gate sitting on a coupler is always safe
    to fire even while its qubits belong to other buffer gates (which is
    exactly how such gates get stranded otherwise, letting later swaps
    push back into the idle opening layers).
    """
    executed: list[Edge] = []

    def fire(edge: Edge) -> None:
        u, v = edge
        pu, pv = state.mapping.physical(u), state.mapping.physical(v)
        state.executed.add(edge)
        state.circuit.append_gate(Gate(RZZ, (pu, pv), origin=edge))
        executed.append(edge)
        refill_on_removal(state, (u, v))

    progress = True
    while progress:
        progress = False
        for edge in sorted(state.buffer.gates):
            if state.buffer.gates.get(edge) != 1:
                continue
            state.buffer.remove(edge)
            fire(edge)
            progress = True
        for edge in sorted(state.pending):
            if edge in state.pending and state.distance(*edge) == 1:
                state.pending.remove(edge)
                fire(edge)
                progress = True
    return executed


def refill_on_removal(state: RouterState, freed: tuple[int, ...]) -> list[Edge]:
    """Pull the closest eligible pending gate for each freed qubit.

    A pending gate is eligible for qubit q if it touches q and its other
    qubit is not already in the buffer; the minimum current-distance one
    wins (ties by lower partner id).
    """
    added: list[Edge] = []
    for q in sorted(freed):
        if q in state.buffer.gate_of:
            continue  # already refilled through the other freed qubit
        best: tuple[int, int, Edge] | None = None
        for w in state.adj[q]:
            edge = canonical_edge(q, w)
            if edge not in state.pending or w in state.buffer.gate_of:
                continue
            d = state.distance(q, w)
            if best is None or (d, w) < best[:2]:
                best = (d, w, edge)
        if best is not None:
            state.pending.remove(best[2])
            state.buffer.add(best[2], best[0])
            added.append(best[2])
    return added


def replenish_buffer(state: RouterState) -> list[Edge]:
    """Refill an empty buffer straight from the pending pool.

    Removal-triggered refills only reach gates that share a qubit with an
    executed gate, which can strand e.g. an isolated component whose qubits
    never appear elsewhere.  Greedily admitting the closest qubit-disjoint
    pending gates guarantees the main loop always makes progress.
    """
    added: list[Edge] = []
    for edge in sorted(state.pending, key=lambda e: (state.distance(*e), e)):
        u, v = edge
        if u in state.buffer.gate_of or v in state.buffer.gate_of:
            continue
        state.buffer.add(edge, state.distance(u, v))
        added.append(edge)
    for edge in added:
        state.pending.remove(edge)
    return added


def update_buffer(state: RouterState) -> list[tuple[Edge, Edge]]:
    """Swap far-apart buffer gates for strictly closer pending alternatives.

    For each buffered qubit u with partner v: among u's problem-graph
    neighbors whose gate is still pending and whose own qubit is free of the
    buffer, the nearest one (ties by lower id) replaces v if strictly
    closer.  Each gate is replaced at most once per router iteration.
    """
    replaced: list[tuple[Edge, Edge]] = []
    fresh: set[Edge] = set()
    for q in sorted(state.buffer.gate_of):
        edge = state.buffer.gate_of.get(q)
        if edge is None or edge in fresh:
            continue
        current = state.buffer.gates[edge]
        best: tuple[int, int] | None = None
        for w in state.adj[q]:
            cand = canonical_edge(q, w)
            if cand not in state.pending or w in state.buffer.gate_of:
                continue
            d = state.distance(q, w)
            if best is None or (d, w) < best:
                best = (d, w)
        if best is not None and best[0] < current:
            new_edge = canonical_edge(q, best[1])
            state.buffer.remove(edge)
            state.pending.add(edge)
            state.pending.remove(new_edge)
            state.buffer.add(new_edge, best[0])
            fresh.add(new_edge)
            replaced.append((edge, new_edge))
    return replaced


def build_swap_graph(state: RouterState) -> SwapGraph:
    """All couplers whose swap strictly decreases the total buffer distance."""
    edges: dict[Edge, int] = {}
    for a, b in state.hw.couplers:
        s = swap_score(state, a, b)
        if s is not None and s >= 1:
            edges[(a, b)] = s
    return SwapGraph(edges)


def _apply_swap(state: RouterState, a: int, b: int) -> None:
    state.circuit.append_gate(Gate(SWAP, (a, b)))
    va, vb = state.mapping.virtual(a), state.mapping.virtual(b)
    state.mapping.swap_physical(a, b)
    state.buffer.refresh((va, vb), state.mapping, state.dm)
    state.used_this_layer.update((a, b))


def apply_matched_swaps(state: RouterState, matching: list[Edge]) -> list[Edge]:
    """Apply matched swaps one by one, re-validating each score first.

    Matched swaps are site-disjoint but can still interact through a shared
    buffer pair (two endpoints of one gate moving through each other), so a
    swap is skipped unless it is still strictly improving when its turn
    comes.  Every applied swap strictly decreases the total distance.
    """
    applied: list[Edge] = []
    for a, b in matching:
        s = swap_score(state, a, b)
        if s is None or s < 1:
            continue
        before = state.total_distance()
        _apply_swap(state, a, b)
        state._emit("matched_swap", swap=(a, b), score=s, d_before=before, d_after=state.total_distance())
        applied.append((a, b))
    return applied


def paired_zero_swaps(state: RouterState) -> list[tuple[Edge, Edge]]:
    """Grid-only pass: move both qubits of an aligned buffer pair sideways.

    When a buffer pair shares a grid row (or column), shifting both of its
    qubits one step in the same perpendicular direction leaves their mutual
    distance unchanged, so the two swaps' negative contributions cancel;
    whatever the two displaced occupants gain becomes the joint score.
    Individually the swaps score (0, 0) or (-1, 0) and would never be
    applied alone.  A pair is applied only when all four sites are untouched
    by swaps in the current layer and the joint score is at least +1.
    """
    if not state.config.enable_paired_zero_swaps or state.hw.grid_shape is None:
        return []
    rows, cols = state.hw.grid_shape
    applied: list[tuple[Edge, Edge]] = []
    for edge in sorted(state.buffer.gates):
        u, v = edge
        pu, pv = state.mapping.physical(u), state.mapping.physical(v)
        ru, cu, rv, cv = pu // cols, pu % cols, pv // cols, pv % cols
        steps: list[int]
        if ru == rv:
            steps = [-cols, cols]  # shift the pair one row down/up
        elif cu == cv:
            steps = [-1, 1]  # shift the pair one column left/right
        else:
            continue
        for step in steps:
            a1, a2 = pu + step, pv + step
            if not _on_grid(pu, a1, rows, cols, step) or not _on_grid(pv, a2, rows, cols, step):
                continue
            sites = (pu, pv, a1, a2)
            if any(q in state.used_this_layer for q in sites):
                continue
            s1 = swap_score(state, pu, a1)
            s2 = swap_score(state, pv, a2)
            if sorted((s1 or 0, s2 or 0)) not in ([-1, 0], [0, 0]):
                continue
            joint = _joint_score(state, (pu, a1), (pv, a2))
            if joint < 1:
                continue
            before = state.total_distance()
            _apply_swap(state, pu, a1)
            _apply_swap(state, pv, a2)
            state._emit(
                "paired_zero_swap",
                swaps=((pu, a1), (pv, a2)),
                individual=(s1, s2),
                joint=joint,
                d_before=before,
                d_after=state.total_distance(),
            )
            applied.append((canonical_edge(pu, a1), canonical_edge(pv, a2)))
            break
    return applied


def _on_grid(p: int, q: int, rows: int, cols: int, step: int) -> bool:
    if not (0 <= q < rows * cols):
        return False
    if abs(step) == 1 and p // cols != q // cols:
        return False  # horizontal step wrapped around a row boundary
    return True


def _joint_score(state: RouterState, s1: tuple[int, int], s2: tuple[int, int]) -> int:
    """Exact distance change of applying two site-disjoint swaps together."""
    mapping, dm, buffer = state.mapping, state.dm, state.buffer
    moved: dict[int, int] = {}
    for a, b in (s1, s2):
        moved[mapping.virtual(a)] = b
        moved[mapping.virtual(b)] = a

    def pos(q: int) -> int:
        return moved.get(q, mapping.physical(q))

    gates = {buffer.gate_of[q] for q in moved if q in buffer.gate_of}
    before = sum(buffer.gates[g] for g in gates)
    after = sum(dm[pos(g[0])][pos(g[1])] for g in gates)
    return before - after


def fallback_swap(state: RouterState) -> Edge | None:
    """Seeded random neutral swap that still moves one buffer qubit closer.

    Runs only when no improving (or paired) swap exists but gates remain.
    Candidates are couplers with net score 0 where at least one occupant
    strictly shrinks its own gate; on connected hardware with a nonempty
    buffer at distance >= 2 such a coupler always exists.
    """
    candidates: list[Edge] = []
    for a, b in state.hw.couplers:
        da, db = _deltas(state, a, b)
        if da is None and db is None:
            continue
        if (da or 0) + (db or 0) == 0 and max(da or 0, db or 0) > 0:
            candidates.append((a, b))
    if not candidates:
        raise RoutingError("no neutral fallback swap available; buffer is wedged")
    a, b = state.rng.choice(candidates)
    before = state.total_distance()
    _apply_swap(state, a, b)
    state._emit("fallback_swap", swap=(a, b), d_before=before, d_after=state.total_distance())
    return (a, b)


def _escalate_stall(state: RouterState) -> None:
    """Force progress: walk the closest buffer gate together along a shortest path.

    Deterministic: the minimum-distance gate (ties by edge id) has one
    endpoint swapped hop by hop along a lexicographic BFS shortest path
    until the pair is adjacent.
    """
    edge = min(state.buffer.gates, key=lambda e: (state.buffer.gates[e], e))
    u, v = edge
    target = state.mapping.physical(v)
    hw_adj = state.hw.adjacency()
    while state.buffer.gates[edge] > 1:
        here = state.mapping.physical(u)
        nxt = min(w for w in hw_adj[here] if state.dm[w][target] == state.dm[here][target] - 1)
        _apply_swap(state, here, nxt)
        state._emit("stall_escalation", swap=(here, nxt))


# ---------------------------------------------------------------------------
# Main loop
# ---------------------------------------------------------------------------


def route(
    pg: ProblemGraph,
    hw: HardwareGraph,
    config: RouterConfig | None = None,
    trace: list[dict[str, Any]] | None = None,
) -> RoutedCircuit:
    """Route the problem graph onto the hardware; returns a layered circuit.

    The circuit contains every problem edge exactly once as an interaction
    gate on hardware-adjacent sites under the evolving mapping, plus the
    inserted SWAP gates, and records the initial and final mappings.
    Identical inputs (including the config seed) give identical circuits.
    """
    config = config or RouterConfig()
    if pg.n != hw.m:
        raise RoutingError(
            f"qubit count mismatch: problem has {pg.n} vertices, hardware has {hw.m}"
        )
    dm = all_pairs_distances(hw)
    placement = place(pg, hw)
    mapping = placement.mapping
    circuit = RoutedCircuit(hw.m, mapping.v2p)

    state = RouterState(
        pg=pg,
        hw=hw,
        dm=dm,
        mapping=mapping,
        buffer=GateBuffer(),
        pending=set(placement.pending),
        circuit=circuit,
        rng=SplitMix64(config.seed),
        config=config,
        adj=pg.adjacency(),
        trace=trace,
    )
    for edge in sorted(placement.buffer_seed):
        state.buffer.add(edge, state.distance(*edge))

    stall_limit = config.fallback_stall_limit if config.fallback_stall_limit is not None else 3 * hw.m
    if stall_limit < 1:
        raise ValueError("fallback_stall_limit must be at least 1")
    stall = 0

    while state.buffer.gates or state.pending:
        executed = execute_ready_gates(state)
        while not state.buffer.gates and state.pending:
            replenish_buffer(state)
            executed.extend(execute_ready_gates(state))
        if not state.buffer.gates:
            break
        update_buffer(state)

        state.used_this_layer = set()
        swap_graph = build_swap_graph(state)
        matching = maximal_matching(swap_graph.ordered())
        applied = apply_matched_swaps(state, matching)
        paired = paired_zero_swaps(state)

        if applied or paired or executed:
            stall = 0
            continue
        fallback_swap(state)
        stall += 1
        if stall >= stall_limit:
            _escalate_stall(state)
            stall = 0

    circuit.finalize(state.mapping.v2p)
    return circuit
