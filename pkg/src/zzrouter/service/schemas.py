"""Request/response models for the HTTP API."""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field


class RouteRequest(BaseModel):
    problem: str = Field(description="Problem graph in edge-list text format")
    hardware: str = Field(description="Hardware graph in edge-list text format")
    router: Literal["greedy", "linear-sn"] = "greedy"
    seed: int = 0
    paired_zero_swaps: bool = True
    verify: bool = True


class Metrics(BaseModel):
    depth: int
    swap_count: int
    rzz_count: int
    layers: int


class VerifyResult(BaseModel):
    ok: bool
    executed: int
    missing: list[list[int]]
    duplicated: list[list[int]]
    unexpected: list[list[int]]
    adjacency_violations: list[Any]
    layer_violations: list[Any]
    mapping_mismatch: bool


class RouteResponse(BaseModel):
    circuit: dict[str, Any]
    metrics: Metrics
    verify: VerifyResult | None = None


class VerifyRequest(BaseModel):
    circuit: dict[str, Any]
    problem: str
    hardware: str


class BoundsRequest(BaseModel):
    network: Literal["linear", "kreg", "grid"]
    n: int
    k: int | None = None


class BoundsResponse(BaseModel):
    network: str
    n: int
    k: int | None = None
    depth: float
    swaps: float


class SweepRequest(BaseModel):
    family: Literal["k-regular", "erdos-renyi"]
    k: int | None = None
    p: float | None = None
    grid_sides: list[int]
    instances: int = 20
    seed: int = 0
    router: Literal["greedy", "linear-sn", "bounds-only"] = "greedy"
    verify: bool = True
    paired_zero_swaps: bool = True
    timing: bool = True


class SweepResponse(BaseModel):
    rows: list[dict[str, Any]]
    exit_code: int


class HealthResponse(BaseModel):
    status: str
    version: str
    prng: str
