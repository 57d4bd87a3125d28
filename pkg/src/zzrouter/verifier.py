"""Independent circuit checker: the acceptance oracle for every router.

Works purely on the circuit's JSON form plus the two graphs and the initial
mapping, replaying layers while tracking the physical-to-virtual map.  It
never inspects router internals, so it can arbitrate between routers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any

from .circuit import RoutedCircuit
from .graphs import Edge, HardwareGraph, ProblemGraph, canonical_edge


@dataclass
class VerifyReport:
    ok: bool = True
    executed_edges: set[Edge] = field(default_factory=set)
    missing: set[Edge] = field(default_factory=set)
    duplicated: set[Edge] = field(default_factory=set)
    unexpected: set[Edge] = field(default_factory=set)
    adjacency_violations: list[tuple[int, dict]] = field(default_factory=list)
    layer_violations: list[tuple[int, str]] = field(default_factory=list)
    mapping_mismatch: bool = False

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "executed": len(self.executed_edges),
            "missing": sorted(list(e) for e in self.missing),
            "duplicated": sorted(list(e) for e in self.duplicated),
            "unexpected": sorted(list(e) for e in self.unexpected),
            "adjacency_violations": [[i, g] for i, g in self.adjacency_violations],
            "layer_violations": [[i, msg] for i, msg in self.layer_violations],
            "mapping_mismatch": self.mapping_mismatch,
        }


def verify(
    circuit: RoutedCircuit | dict[str, Any],
    pg: ProblemGraph,
    hw: HardwareGraph,
    initial_mapping: list[int] | None = None,
) -> VerifyReport:
    """Check that a routed circuit faithfully implements the problem graph.

    Violations are collected, never raised: every gate must sit on a
    coupler, layers must be qubit-disjoint, every problem edge must appear
    exactly once as an interaction gate under the evolving mapping, and the
    recorded final mapping must match the replayed one.
    """
    doc = circuit.to_json_dict() if isinstance(circuit, RoutedCircuit) else circuit
    report = VerifyReport()
    m = hw.m
    v2p = list(initial_mapping if initial_mapping is not None else doc["initial_mapping"])
    if sorted(v2p) != list(range(m)):
        report.layer_violations.append((-1, "initial mapping is not a bijection"))
        report.ok = False
        return report
    p2v = [0] * m
    for v, p in enumerate(v2p):
        p2v[p] = v

    couplers = hw.coupler_set
    counts: Counter[Edge] = Counter()
    for li, layer in enumerate(doc["layers"]):
        seen: set[int] = set()
        for gate in layer:
            qubits = gate.get("qubits", [])
            if len(qubits) != 2 or qubits[0] == qubits[1] or not all(
                isinstance(q, int) and 0 <= q < m for q in qubits
            ):
                report.layer_violations.append((li, f"malformed gate {gate!r}"))
                continue
            a, b = qubits
            overlap = {a, b} & seen
            if overlap:
                report.layer_violations.append(
                    (li, f"qubits {sorted(overlap)} used twice in one layer")
                )
            seen.update((a, b))
            if canonical_edge(a, b) not in couplers:
                report.adjacency_violations.append((li, dict(gate)))
            kind = gate.get("kind")
            if kind == "rzz":
                counts[canonical_edge(p2v[a], p2v[b])] += 1
            elif kind == "swap":
                va, vb = p2v[a], p2v[b]
                p2v[a], p2v[b] = vb, va
                v2p[va], v2p[vb] = b, a
            else:
                report.layer_violations.append((li, f"unknown gate kind {kind!r}"))

    report.executed_edges = set(counts)
    problem_edges = set(pg.edges)
    report.missing = problem_edges - report.executed_edges
    report.duplicated = {e for e, c in counts.items() if c > 1}
    report.unexpected = report.executed_edges - problem_edges

    recorded = doc.get("final_mapping")
    report.mapping_mismatch = recorded is None or list(recorded) != v2p

    report.ok = not (
        report.missing
        or report.duplicated
        or report.unexpected
        or report.adjacency_violations
        or report.layer_violations
        or report.mapping_mismatch
    )
    return report
