"""Swap-network baselines.

One network is implemented gate-level: the linear odd-even transposition
network along a Hamiltonian path, which (run unconditionally) brings every
pair of qubits adjacent at least once within n rounds.  The k-regular and
grid networks are represented by their closed-form depth/SWAP bounds only;
all three bound calculators use exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .circuit import RZZ, SWAP, Gate, RoutedCircuit
from .graphs import Edge, HardwareGraph, ProblemGraph, canonical_edge
from .mapper import hamiltonian_path
from .router import RoutingError


@dataclass(frozen=True)
class BoundEstimate:
    network: str
    depth: Fraction
    swaps: Fraction

    def depth_value(self) -> int | float:
        return _as_number(self.depth)

    def swaps_value(self) -> int | float:
        return _as_number(self.swaps)


def _as_number(x: Fraction) -> int | float:
    return int(x) if x.denominator == 1 else float(x)


def _isqrt_exact(n: int, what: str) -> int:
    r = math.isqrt(n)
    if r * r != n:
        raise ValueError(f"{what} requires a perfect-square qubit count, got {n}")
    return r


def linear_sn_bounds(n: int) -> BoundEstimate:
    """Closed form for the linear odd-even network: depth 2N-2, swaps N^2/2 - 3N/2 + 1."""
    if n < 2:
        raise ValueError("linear network bounds need N >= 2")
    N = Fraction(n)
    return BoundEstimate("linear", 2 * N - 2, N * N / 2 - 3 * N / 2 + 1)


def kreg_sn_bounds(n: int, k: int) -> BoundEstimate:
    """Closed form for the k-regular grid network.

    depth 3(k-1)*sqrt(N) - 2k + 4, swaps 3(k-1)*(N^{3/2}/2 - 3N/2 + sqrt(N)).
    Defined on square grids, so N must be a perfect square for exactness.
    """
    if n < 4:
        raise ValueError("k-regular network bounds need N >= 4")
    if k < 1:
        raise ValueError("k must be at least 1")
    root = Fraction(_isqrt_exact(n, "k-regular network bound"))
    N = Fraction(n)
    depth = 3 * (k - 1) * root - 2 * k + 4
    swaps = 3 * (k - 1) * (N * root / 2 - 3 * N / 2 + root)
    return BoundEstimate("kreg", Fraction(depth), swaps)


def grid_sn_bounds(n: int) -> BoundEstimate:
    """Closed form for the square-grid network.

    depth 3N/2 + 3*sqrt(N) + 3/2, swaps (N/2 + sqrt(N) + 1/2)(N/2 - sqrt(N)).
    """
    if n < 4:
        raise ValueError("grid network bounds need N >= 4")
    root = Fraction(_isqrt_exact(n, "grid network bound"))
    N = Fraction(n)
    depth = 3 * N / 2 + 3 * root + Fraction(3, 2)
    swaps = (N / 2 + root + Fraction(1, 2)) * (N / 2 - root)
    return BoundEstimate("grid", depth, swaps)


def linear_sn_route(pg: ProblemGraph, hw: HardwareGraph) -> RoutedCircuit:
    """Route with the odd-even transposition network along a Hamiltonian path.

    Virtual qubit i starts at the i-th path vertex.  Rounds alternate between
    even and odd adjacent-position transpositions; before every swap layer
    (and once at the end) all pending gates on currently adjacent positions
    execute.  Once nothing is pending the remaining rounds are skipped, so
    swaps with no routing benefit are never emitted.
    """
    if pg.n != hw.m:
        raise RoutingError(
            f"qubit count mismatch: problem has {pg.n} vertices, hardware has {hw.m}"
        )
    path = hamiltonian_path(hw)
    n = pg.n
    occupant = list(range(n))  # position along the path -> virtual qubit
    circuit = RoutedCircuit(hw.m, [path[i] for i in range(n)])
    pending: set[Edge] = set(pg.edges)

    def execute_due() -> None:
        for i in range(n - 1):
            edge = canonical_edge(occupant[i], occupant[i + 1])
            if edge in pending:
                pending.remove(edge)
                circuit.append_gate(Gate(RZZ, canonical_edge(path[i], path[i + 1]), origin=edge))

    for rnd in range(n):
        execute_due()
        if not pending:
            break
        start = 0 if rnd % 2 == 0 else 1
        for i in range(start, n - 1, 2):
            circuit.append_gate(Gate(SWAP, canonical_edge(path[i], path[i + 1])))
            occupant[i], occupant[i + 1] = occupant[i + 1], occupant[i]
    execute_due()
    if pending:  # pragma: no cover - excluded by the full-reversal property
        raise RoutingError(f"network finished with {len(pending)} gates unexecuted")

    final_v2p = [0] * n
    for i, v in enumerate(occupant):
        final_v2p[v] = path[i]
    circuit.finalize(final_v2p)
    return circuit
