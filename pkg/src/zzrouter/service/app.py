"""HTTP API wrapping the routing engine.

Domain failures map to structured 400 responses whose ``detail.code``
distinguishes malformed input (``parse_error``) from infeasible routing
requests (``routing_error``); the CLI turns those into its exit codes.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..baselines import grid_sn_bounds, kreg_sn_bounds, linear_sn_bounds, linear_sn_route
from ..bench import SweepConfig, SweepOutcome, run_sweep
from ..graphs import (
    DisconnectedGraphError,
    EdgeListParseError,
    parse_hardware_graph,
    parse_problem_graph,
)
from ..mapper import MappingError, NoHamiltonianPathError
from ..router import RouterConfig, RoutingError, route
from ..verifier import verify
from .schemas import (
    BoundsRequest,
    BoundsResponse,
    HealthResponse,
    Metrics,
    RouteRequest,
    RouteResponse,
    SweepRequest,
    SweepResponse,
    VerifyRequest,
    VerifyResult,
)


def _parse_error(exc: EdgeListParseError, which: str) -> HTTPException:
    return HTTPException(
        status_code=400,
        detail={"code": "parse_error", "message": f"{which}: {exc}", "line": exc.line},
    )


def _routing_error(exc: Exception) -> HTTPException:
    return HTTPException(
        status_code=400, detail={"code": "routing_error", "message": str(exc)}
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="zzrouter",
        version=__version__,
        description="Routing of commuting two-qubit interaction layers onto "
        "connectivity-constrained processors.",
    )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        from ..rng import PRNG_NAME, PRNG_VERSION

        return HealthResponse(status="ok", version=__version__, prng=f"{PRNG_NAME} v{PRNG_VERSION}")

    @app.post("/route", response_model=RouteResponse)
    def route_endpoint(req: RouteRequest) -> RouteResponse:
        try:
            pg = parse_problem_graph(req.problem)
        except EdgeListParseError as exc:
            raise _parse_error(exc, "problem graph") from exc
        try:
            hw = parse_hardware_graph(req.hardware)
        except EdgeListParseError as exc:
            raise _parse_error(exc, "hardware graph") from exc
        try:
            if req.router == "greedy":
                cfg = RouterConfig(enable_paired_zero_swaps=req.paired_zero_swaps, seed=req.seed)
                circuit = route(pg, hw, cfg)
            else:
                circuit = linear_sn_route(pg, hw)
        except (RoutingError, MappingError, NoHamiltonianPathError, DisconnectedGraphError) as exc:
            raise _routing_error(exc) from exc
        report = verify(circuit, pg, hw) if req.verify else None
        return RouteResponse(
            circuit=circuit.to_json_dict(),
            metrics=Metrics(**circuit.metrics().as_dict()),
            verify=VerifyResult(**report.to_json_dict()) if report is not None else None,
        )

    @app.post("/verify", response_model=VerifyResult)
    def verify_endpoint(req: VerifyRequest) -> VerifyResult:
        try:
            pg = parse_problem_graph(req.problem)
            hw = parse_hardware_graph(req.hardware)
        except EdgeListParseError as exc:
            raise _parse_error(exc, "graph") from exc
        try:
            report = verify(req.circuit, pg, hw)
        except (KeyError, TypeError, ValueError) as exc:
            raise HTTPException(
                status_code=400,
                detail={"code": "parse_error", "message": f"malformed circuit: {exc}"},
            ) from exc
        return VerifyResult(**report.to_json_dict())

    @app.post("/bounds", response_model=BoundsResponse)
    def bounds_endpoint(req: BoundsRequest) -> BoundsResponse:
        try:
            if req.network == "linear":
                est = linear_sn_bounds(req.n)
            elif req.network == "kreg":
                if req.k is None:
                    raise ValueError("the k-regular network bound needs k")
                est = kreg_sn_bounds(req.n, req.k)
            else:
                est = grid_sn_bounds(req.n)
        except ValueError as exc:
            raise _routing_error(exc) from exc
        return BoundsResponse(
            network=req.network,
            n=req.n,
            k=req.k if req.network == "kreg" else None,
            depth=est.depth_value(),
            swaps=est.swaps_value(),
        )

    @app.post("/sweep", response_model=SweepResponse)
    def sweep_endpoint(req: SweepRequest) -> SweepResponse:
        if req.family == "k-regular":
            if req.k is None:
                raise _routing_error(ValueError("k-regular sweeps need k"))
            param: float = req.k
        else:
            if req.p is None:
                raise _routing_error(ValueError("erdos-renyi sweeps need p"))
            param = req.p
        try:
            cfg = SweepConfig(
                family=req.family,
                param=param,
                grid_sides=tuple(req.grid_sides),
                instances=req.instances,
                seed=req.seed,
                router=req.router,
                verify=req.verify,
                paired_zero_swaps=req.paired_zero_swaps,
                timing=req.timing,
            )
        except ValueError as exc:
            raise _routing_error(exc) from exc
        outcome = SweepOutcome(rows=run_sweep(cfg))
        return SweepResponse(rows=outcome.rows, exit_code=outcome.exit_code())

    return app


app = create_app()
