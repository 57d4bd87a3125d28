"""Layered two-qubit circuit with push-back compaction and swap cancellation.

Single-qubit gates are a free resource in this cost model and are not
represented.  Depth is the number of nonempty layers; any two gates share a
layer only if they act on distinct qubits.

Mapping conventions: ``initial_mapping[virtual] = physical`` and likewise
for ``final_mapping``.  Replaying the circuit's SWAP gates from the initial
mapping must reproduce the final one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

RZZ = "rzz"
SWAP = "swap"


@dataclass
class Gate:
    kind: str
    qubits: tuple[int, int]
    angle: float | None = None
    origin: tuple[int, int] | None = None  # problem edge, not serialized

    def __post_init__(self):
        a, b = self.qubits
        if a == b:
            raise ValueError("two-qubit gate needs distinct qubits")
        if a > b:
            self.qubits = (b, a)
        if self.kind not in (RZZ, SWAP):
            raise ValueError(f"unknown gate kind {self.kind!r}")

    def to_json_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"kind": self.kind, "qubits": list(self.qubits)}
        if self.angle is not None:
            doc["angle"] = self.angle
        return doc


@dataclass
class Layer:
    gates: list[Gate] = field(default_factory=list)
    occupied: set[int] = field(default_factory=set)
    blocked: set[int] = field(default_factory=set)

    def is_free(self, q: int) -> bool:
        return q not in self.occupied and q not in self.blocked


@dataclass
class CircuitMetrics:
    depth: int
    swap_count: int
    rzz_count: int
    layers: int

    def as_dict(self) -> dict[str, int]:
        return {
            "depth": self.depth,
            "swap_count": self.swap_count,
            "rzz_count": self.rzz_count,
            "layers": self.layers,
        }


class RoutedCircuit:
    """Circuit under construction: gates are appended, never reordered.

    Appending pushes each gate back to the earliest layer where both its
    qubits are free, stopping at layers where either qubit is occupied or
    blocked.  Every placed gate blocks its qubits in its landing layer, so
    later gates can never tunnel past it and per-qubit gate order equals
    append order.
    """

    def __init__(self, num_qubits: int, initial_mapping: Sequence[int]):
        self.num_qubits = num_qubits
        self.initial_mapping = list(initial_mapping)
        self.final_mapping: list[int] | None = None
        self.layers: list[Layer] = []
        # Per-qubit stack of (layer index, gate), in time order.
        self._history: dict[int, list[tuple[int, Gate]]] = {}

    # -- construction -------------------------------------------------

    def append_gate(self, gate: Gate) -> int:
        """Place ``gate`` with push-back; returns the landing layer index.

        A SWAP immediately following a SWAP on the same pair (no intervening
        gate on either qubit) cancels it instead of being placed.
        """
        a, b = gate.qubits
        if gate.kind == SWAP and self._cancel_online(a, b):
            return -1
        idx = len(self.layers)
        while idx > 0 and self.layers[idx - 1].is_free(a) and self.layers[idx - 1].is_free(b):
            idx -= 1
        if idx == len(self.layers):
            self.layers.append(Layer())
        layer = self.layers[idx]
        layer.gates.append(gate)
        layer.occupied.update((a, b))
        layer.blocked.update((a, b))
        self._history.setdefault(a, []).append((idx, gate))
        self._history.setdefault(b, []).append((idx, gate))
        return idx

    def _cancel_online(self, a: int, b: int) -> bool:
        ha = self._history.get(a)
        hb = self._history.get(b)
        if not ha or not hb:
            return False
        idx_a, last_a = ha[-1]
        _, last_b = hb[-1]
        if last_a is not last_b or last_a.kind != SWAP:
            return False
        # Remove the earlier SWAP; keep its block flags so push-back order
        # around the hole stays intact.
        self.layers[idx_a].gates.remove(last_a)
        self.layers[idx_a].occupied.difference_update((a, b))
        ha.pop()
        hb.pop()
        return True

    def cancel_adjacent_swaps(self) -> int:
        """Remove SWAP pairs on the same qubit pair with nothing in between.

        Returns the number of gates removed.  The net permutation of each
        cancelled pair is the identity, so mapping semantics are unchanged.
        """
        stacks: dict[int, list[Gate]] = {}
        doomed: set[int] = set()
        for layer in self.layers:
            for gate in layer.gates:
                a, b = gate.qubits
                sa = stacks.setdefault(a, [])
                sb = stacks.setdefault(b, [])
                if (
                    gate.kind == SWAP
                    and sa
                    and sb
                    and sa[-1] is sb[-1]
                    and sa[-1].kind == SWAP
                ):
                    doomed.add(id(sa[-1]))
                    doomed.add(id(gate))
                    sa.pop()
                    sb.pop()
                else:
                    sa.append(gate)
                    sb.append(gate)
        if not doomed:
            return 0
        removed = 0
        for layer in self.layers:
            keep: list[Gate] = []
            for gate in layer.gates:
                if id(gate) in doomed:
                    removed += 1
                    layer.occupied.difference_update(gate.qubits)
                else:
                    keep.append(gate)
            layer.gates = keep
        return removed

    def finalize(self, final_mapping: Sequence[int]) -> None:
        """Run the closing cancellation pass, drop empty layers, record the mapping."""
        self.cancel_adjacent_swaps()
        self.layers = [layer for layer in self.layers if layer.gates]
        self.final_mapping = list(final_mapping)

    # -- inspection ---------------------------------------------------

    def gates_in_time_order(self) -> Iterable[Gate]:
        for layer in self.layers:
            yield from layer.gates

    def metrics(self) -> CircuitMetrics:
        swaps = sum(1 for g in self.gates_in_time_order() if g.kind == SWAP)
        rzz = sum(1 for g in self.gates_in_time_order() if g.kind == RZZ)
        depth = sum(1 for layer in self.layers if layer.gates)
        return CircuitMetrics(depth, swaps, rzz, len(self.layers))

    # -- serialization ------------------------------------------------

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "n": self.num_qubits,
            "initial_mapping": list(self.initial_mapping),
            "layers": [[g.to_json_dict() for g in layer.gates] for layer in self.layers],
            "final_mapping": list(self.final_mapping) if self.final_mapping is not None else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @classmethod
    def from_json_dict(cls, doc: dict[str, Any]) -> "RoutedCircuit":
        circ = cls(doc["n"], doc["initial_mapping"])
        for layer_doc in doc["layers"]:
            layer = Layer()
            for gd in layer_doc:
                gate = Gate(gd["kind"], tuple(gd["qubits"]), gd.get("angle"))
                layer.gates.append(gate)
                layer.occupied.update(gate.qubits)
                layer.blocked.update(gate.qubits)
            circ.layers.append(layer)
        circ.final_mapping = list(doc["final_mapping"]) if doc.get("final_mapping") is not None else None
        return circ


def replay_final_mapping(initial_mapping: Sequence[int], layers: Iterable[Iterable[dict]]) -> list[int]:
    """Apply the SWAP gates of a JSON-level circuit to the initial mapping."""
    v2p = list(initial_mapping)
    p2v = [0] * len(v2p)
    for v, p in enumerate(v2p):
        p2v[p] = v
    for layer in layers:
        for gate in layer:
            if gate["kind"] == SWAP:
                a, b = gate["qubits"]
                va, vb = p2v[a], p2v[b]
                p2v[a], p2v[b] = vb, va
                v2p[va], v2p[vb] = b, a
    return v2p
