"""Edge coloring and matchings.

The coloring routine is the constructive fan/alternating-path procedure of
Misra and Gries, which always succeeds with at most ``max_degree + 1``
colors on a simple graph.  A greedy coloring cannot give that guarantee,
and the guarantee is what makes the two largest color classes a useful
seed for the initial qubit placement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import Edge, ProblemGraph, canonical_edge


@dataclass(frozen=True)
class EdgeColoring:
    """Proper edge coloring: no two edges sharing a vertex share a color."""

    colors: dict[Edge, int]
    num_colors: int

    def classes(self) -> list[list[Edge]]:
        out: list[list[Edge]] = [[] for _ in range(self.num_colors)]
        for e in sorted(self.colors):
            out[self.colors[e]].append(e)
        return out

    def class_edges(self, color: int) -> list[Edge]:
        return [e for e in sorted(self.colors) if self.colors[e] == color]


def edge_coloring(pg: ProblemGraph) -> EdgeColoring:
    """Color the edges of ``pg`` properly with at most ``max_degree + 1`` colors.

    Deterministic: edges are processed in canonical order, colors are always
    the smallest free index, and the final palette is compacted to 0..c-1.
    """
    n = pg.n
    adj = pg.adjacency()
    colors: dict[Edge, int] = {}
    # incident[v] maps color -> neighbor across the edge of that color at v
    incident: list[dict[int, int]] = [{} for _ in range(n)]

    def color_of(u: int, v: int) -> int | None:
        return colors.get(canonical_edge(u, v))

    def uncolor(u: int, v: int) -> None:
        c = colors.pop(canonical_edge(u, v), None)
        if c is not None:
            del incident[u][c]
            del incident[v][c]

    def set_color(u: int, v: int, c: int) -> None:
        uncolor(u, v)
        colors[canonical_edge(u, v)] = c
        incident[u][c] = v
        incident[v][c] = u

    def free_color(v: int) -> int:
        c = 0
        while c in incident[v]:
            c += 1
        return c

    for u, v0 in pg.edges:
        # Maximal fan at u: each next edge's color must be free at the
        # previous fan vertex.
        fan = [v0]
        in_fan = {v0}
        grown = True
        while grown:
            grown = False
            for w in adj[u]:
                if w in in_fan:
                    continue
                cw = color_of(u, w)
                if cw is not None and cw not in incident[fan[-1]]:
                    fan.append(w)
                    in_fan.add(w)
                    grown = True
                    break

        c = free_color(u)
        d = free_color(fan[-1])
        if c != d:
            # Invert the unique path through u whose edges alternate d, c.
            # Collect first; flipping while walking would corrupt the walk.
            path: list[tuple[int, int, int]] = []
            x, want = u, d
            while True:
                y = incident[x].get(want)
                if y is None:
                    break
                path.append((x, y, want))
                x, want = y, (c if want == d else d)
            for (x, y, _) in path:
                uncolor(x, y)
            for (x, y, col) in path:
                set_color(x, y, c if col == d else d)

        # First fan prefix that is still a fan and whose tip has d free.
        # Misra-Gries guarantees one exists after the inversion.
        pivot = -1
        for i, w in enumerate(fan):
            if i > 0:
                cw = color_of(u, fan[i])
                if cw is None or cw in incident[fan[i - 1]]:
                    break
            if d not in incident[w]:
                pivot = i
                break
        if pivot < 0:  # pragma: no cover - excluded by the coloring theorem
            raise AssertionError("no rotatable fan prefix found")

        # Rotate the prefix: every edge takes its successor's color, the tip
        # takes d.  Uncolor first so the per-vertex maps never collide.
        shifted = [color_of(u, fan[i + 1]) for i in range(pivot)]
        for i in range(pivot):
            uncolor(u, fan[i + 1])
        for i in range(pivot):
            set_color(u, fan[i], shifted[i])
        set_color(u, fan[pivot], d)

    used = sorted(set(colors.values()))
    remap = {c: i for i, c in enumerate(used)}
    return EdgeColoring({e: remap[c] for e, c in colors.items()}, len(used))


def maximal_matching(edges: Iterable[Edge]) -> list[Edge]:
    """Greedy maximal matching over ``edges`` in the given traversal order.

    An edge is accepted iff neither endpoint is already matched; the result
    is maximal with respect to the input edge set and deterministic for a
    fixed order.
    """
    matched: set[int] = set()
    out: list[Edge] = []
    for u, v in edges:
        if u not in matched and v not in matched:
            out.append(canonical_edge(u, v))
            matched.add(u)
            matched.add(v)
    return out


def is_proper_coloring(edges: Sequence[Edge], colors: dict[Edge, int]) -> bool:
    """Independent properness check used by callers and tests."""
    by_vertex: dict[int, set[int]] = {}
    for u, v in edges:
        c = colors.get(canonical_edge(u, v))
        if c is None:
            return False
        for x in (u, v):
            seen = by_vertex.setdefault(x, set())
            if c in seen:
                return False
            seen.add(c)
    return True
