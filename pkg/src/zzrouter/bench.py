"""Benchmark sweeps over seeded random problem graphs on square grids.

One row per (grid side, instance).  The instance seed is ``base_seed +
instance_index`` and depends on nothing else, so distinct routers see
byte-identical problem graphs; rows carry a hash of the edge set to make
that checkable after the fact.
"""

from __future__ import annotations

import concurrent.futures
import csv
import hashlib
import io
import json
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .baselines import grid_sn_bounds, kreg_sn_bounds, linear_sn_route
from .graphs import ProblemGraph, gen_erdos_renyi, gen_k_regular, square_grid
from .router import RouterConfig, route
from .verifier import verify

WORKERS_ENV = "ZZROUTER_WORKERS"

CSV_COLUMNS = [
    "family",
    "param",
    "N",
    "seed",
    "router",
    "depth",
    "swaps",
    "rzz",
    "verify_ok",
    "runtime_ms",
    "edge_hash",
    "error",
]

FAMILIES = ("k-regular", "erdos-renyi")
ROUTERS = ("greedy", "linear-sn", "bounds-only")


@dataclass(frozen=True)
class SweepConfig:
    family: str
    param: float
    grid_sides: tuple[int, ...]
    instances: int = 20
    seed: int = 0
    router: str = "greedy"
    verify: bool = True
    paired_zero_swaps: bool = True
    timing: bool = True

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown graph family {self.family!r}")
        if self.router not in ROUTERS:
            raise ValueError(f"unknown router {self.router!r}")
        if self.instances < 1:
            raise ValueError("instances must be at least 1")
        if any(side < 2 for side in self.grid_sides) or not self.grid_sides:
            raise ValueError("grid sides must all be at least 2")


def _instance_graph(cfg: SweepConfig, n: int, seed: int) -> ProblemGraph:
    if cfg.family == "k-regular":
        return gen_k_regular(n, int(cfg.param), seed)
    return gen_erdos_renyi(n, float(cfg.param), seed)


def _edge_hash(pg: ProblemGraph) -> str:
    payload = f"{pg.n};{len(pg.edges)};" + ",".join(f"{u}-{v}" for u, v in pg.edges)
    return hashlib.sha256(payload.encode()).hexdigest()[:12]


def _fmt_number(x: Any) -> Any:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    return x


def _run_instance(cfg: SweepConfig, side: int, instance: int) -> dict[str, Any]:
    n = side * side
    seed = cfg.seed + instance
    row: dict[str, Any] = {
        "family": cfg.family,
        "param": _fmt_number(Fraction(cfg.param).limit_denominator(10**6)),
        "N": n,
        "seed": seed,
        "router": cfg.router,
        "depth": "",
        "swaps": "",
        "rzz": "",
        "verify_ok": "",
        "runtime_ms": "",
        "error": "",
    }
    try:
        pg = _instance_graph(cfg, n, seed)
    except Exception as exc:
        row["edge_hash"] = ""
        row["error"] = str(exc)
        return row
    row["edge_hash"] = _edge_hash(pg)
    row["rzz"] = len(pg.edges)

    if cfg.router == "bounds-only":
        # k-regular problems get the k-regular network bound; Erdos-Renyi
        # problems the grid network bound (no meaningful k to hand over).
        bound = (
            kreg_sn_bounds(n, int(cfg.param))
            if cfg.family == "k-regular"
            else grid_sn_bounds(n)
        )
        row["depth"] = _fmt_number(bound.depth)
        row["swaps"] = _fmt_number(bound.swaps)
        row["runtime_ms"] = 0 if cfg.timing else ""
        return row

    hw = square_grid(side)
    start = time.perf_counter()
    try:
        if cfg.router == "greedy":
            rc = RouterConfig(enable_paired_zero_swaps=cfg.paired_zero_swaps, seed=seed)
            circuit = route(pg, hw, rc)
        else:
            circuit = linear_sn_route(pg, hw)
    except Exception as exc:
        row["error"] = str(exc)
        return row
    elapsed_ms = int(round((time.perf_counter() - start) * 1000))

    metrics = circuit.metrics()
    row["depth"] = metrics.depth
    row["swaps"] = metrics.swap_count
    row["rzz"] = metrics.rzz_count
    if cfg.timing:
        row["runtime_ms"] = elapsed_ms
    if cfg.verify:
        row["verify_ok"] = verify(circuit, pg, hw).ok
    return row


def _worker(args: tuple[SweepConfig, int, int]) -> dict[str, Any]:
    return _run_instance(*args)


def run_sweep(cfg: SweepConfig) -> list[dict[str, Any]]:
    """All sweep rows, ordered by (grid side, instance).

    Honors ``ZZROUTER_WORKERS`` for process-level parallelism over
    instances; ordering (and hence output bytes) is independent of the
    worker count.
    """
    tasks = [
        (cfg, side, instance)
        for side in sorted(cfg.grid_sides)
        for instance in range(cfg.instances)
    ]
    workers = int(os.environ.get(WORKERS_ENV, "1") or "1")
    if workers > 1 and len(tasks) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_worker, tasks))
    else:
        rows = [_run_instance(*task) for task in tasks]
    rows.sort(key=lambda r: (r["N"], r["seed"], r["router"]))
    return rows


@dataclass
class SweepOutcome:
    rows: list[dict[str, Any]] = field(default_factory=list)

    @property
    def any_error(self) -> bool:
        return any(r["error"] for r in self.rows)

    @property
    def any_verify_failure(self) -> bool:
        return any(r["verify_ok"] is False for r in self.rows)

    def exit_code(self) -> int:
        if self.any_error:
            return 3
        if self.any_verify_failure:
            return 2
        return 0


def rows_to_csv(rows: list[dict[str, Any]]) -> str:
    """Canonical CSV rendering: fixed column order, LF line endings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_cell(row.get(col, "")) for col in CSV_COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: list[dict[str, Any]]) -> str:
    return json.dumps(rows, indent=2) + "\n"


def _cell(value: Any) -> str:
    if value is True:
        return "true"
    if value is False:
        return "false"
    return str(value)
