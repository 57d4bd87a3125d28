"""Command-line front end.

The CLI is a thin client of the HTTP API: every subcommand issues requests
against either an in-process application instance (the default) or a
running server given via ``--server``.  Exit codes: 0 success, 1 usage or
malformed input, 2 verification failure, 3 routing error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any

import click

from .bench import rows_to_csv, rows_to_json

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_ROUTING = 3


class ApiClient:
    """Minimal JSON-over-HTTP client; in-process unless a server URL is given."""

    def __init__(self, server: str | None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server, timeout=3600.0)
        else:
            from fastapi.testclient import TestClient

            from .service.app import app

            self._client = TestClient(app)

    def post(self, path: str, payload: dict[str, Any]) -> tuple[int, Any]:
        resp = self._client.post(path, json=payload)
        try:
            body = resp.json()
        except ValueError:
            body = {"detail": {"code": "routing_error", "message": resp.text}}
        return resp.status_code, body


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _fail_from_response(status: int, body: Any) -> None:
    detail = body.get("detail") if isinstance(body, dict) else None
    if isinstance(detail, dict):
        code = EXIT_USAGE if detail.get("code") == "parse_error" else EXIT_ROUTING
        _fail(detail.get("message", "request failed"), code)
    if status == 422:  # request-shape validation
        _fail(json.dumps(detail) if detail is not None else "invalid request", EXIT_USAGE)
    _fail(f"request failed with status {status}: {body}", EXIT_ROUTING)


def _read_text(path: str, what: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        _fail(f"cannot read {what} {path!r}: {exc}", EXIT_USAGE)
        raise  # unreachable


server_option = click.option(
    "--server", default=None, metavar="URL", help="Target a running service instead of in-process."
)


@click.group()
def cli() -> None:
    """Route commuting two-qubit gate layers onto constrained hardware."""


@cli.command()
@click.argument("problem", type=click.Path())
@click.argument("hardware", type=click.Path())
@click.option("--router", type=click.Choice(["greedy", "linear-sn"]), default="greedy")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default="circuit.json", show_default=True)
@click.option("--no-paired-zero-swaps", is_flag=True, help="Disable the grid-only paired swap pass.")
@click.option("--no-verify", is_flag=True, help="Skip verification of the routed circuit.")
@server_option
def route(problem, hardware, router, seed, out, no_paired_zero_swaps, no_verify, server):
    """Route PROBLEM onto HARDWARE and write the circuit JSON."""
    client = ApiClient(server)
    status, body = client.post(
        "/route",
        {
            "problem": _read_text(problem, "problem graph"),
            "hardware": _read_text(hardware, "hardware graph"),
            "router": router,
            "seed": seed,
            "paired_zero_swaps": not no_paired_zero_swaps,
            "verify": not no_verify,
        },
    )
    if status != 200:
        _fail_from_response(status, body)
    Path(out).write_text(json.dumps(body["circuit"], indent=2) + "\n")
    m = body["metrics"]
    click.echo(
        f"router={router} depth={m['depth']} swaps={m['swap_count']} "
        f"rzz={m['rzz_count']} out={out}"
    )
    report = body.get("verify")
    if report is not None:
        click.echo(f"verified={'ok' if report['ok'] else 'FAILED'}")
        if not report["ok"]:
            click.echo(json.dumps(report, indent=2), err=True)
            sys.exit(EXIT_VERIFY)


@cli.command()
@click.argument("circuit", type=click.Path())
@click.argument("problem", type=click.Path())
@click.argument("hardware", type=click.Path())
@server_option
def verify(circuit, problem, hardware, server):
    """Check a circuit JSON against its problem and hardware graphs."""
    raw = _read_text(circuit, "circuit")
    try:
        circuit_doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        _fail(f"circuit {circuit!r} is not valid JSON: {exc}", EXIT_USAGE)
    client = ApiClient(server)
    status, body = client.post(
        "/verify",
        {
            "circuit": circuit_doc,
            "problem": _read_text(problem, "problem graph"),
            "hardware": _read_text(hardware, "hardware graph"),
        },
    )
    if status != 200:
        _fail_from_response(status, body)
    click.echo(json.dumps(body, indent=2))
    if not body["ok"]:
        sys.exit(EXIT_VERIFY)


@cli.command()
@click.option("--network", type=click.Choice(["linear", "kreg", "grid"]), required=True)
@click.option("--n", "n", type=int, required=True, help="Total qubit count N.")
@click.option("--k", type=int, default=None, help="Regularity (kreg network only).")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
@server_option
def bounds(network, n, k, fmt, server):
    """Closed-form depth/SWAP bounds for the swap networks."""
    client = ApiClient(server)
    status, body = client.post("/bounds", {"network": network, "n": n, "k": k})
    if status != 200:
        _fail_from_response(status, body)
    if fmt == "json":
        click.echo(json.dumps(body, indent=2))
    elif fmt == "csv":
        click.echo("network,n,k,depth,swaps")
        click.echo(
            f"{body['network']},{body['n']},{body['k'] if body['k'] is not None else ''},"
            f"{_plain(body['depth'])},{_plain(body['swaps'])}"
        )
    else:
        k_part = f" k={body['k']}" if body["k"] is not None else ""
        click.echo(
            f"network={body['network']} n={body['n']}{k_part} "
            f"depth={_plain(body['depth'])} swaps={_plain(body['swaps'])}"
        )


def _plain(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else str(x)


@cli.command()
@click.option("--family", type=click.Choice(["k-regular", "erdos-renyi"]), required=True)
@click.option("--k", type=int, default=None, help="Regularity (k-regular family).")
@click.option("--p", type=float, default=None, help="Edge probability (erdos-renyi family).")
@click.option("--grid-sides", default="5", show_default=True, help="Comma-separated grid sides L.")
@click.option("--instances", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--router", type=click.Choice(["greedy", "linear-sn", "bounds-only"]), default="greedy")
@click.option("--out", type=click.Path(), default=None, help="Output file (default: stdout).")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--no-verify", is_flag=True, help="Skip circuit verification.")
@click.option("--no-paired-zero-swaps", is_flag=True)
@click.option("--no-timing", is_flag=True, help="Leave runtime_ms empty for byte-stable output.")
@server_option
def sweep(family, k, p, grid_sides, instances, seed, router, out, fmt, no_verify,
          no_paired_zero_swaps, no_timing, server):
    """Run the seeded benchmark sweep and emit one row per instance."""
    try:
        sides = [int(tok) for tok in grid_sides.split(",") if tok.strip()]
    except ValueError:
        _fail(f"--grid-sides must be comma-separated integers, got {grid_sides!r}", EXIT_USAGE)
    if family == "k-regular" and k is None:
        _fail("--family k-regular requires --k", EXIT_USAGE)
    if family == "erdos-renyi" and p is None:
        _fail("--family erdos-renyi requires --p", EXIT_USAGE)
    client = ApiClient(server)
    status, body = client.post(
        "/sweep",
        {
            "family": family,
            "k": k,
            "p": p,
            "grid_sides": sides,
            "instances": instances,
            "seed": seed,
            "router": router,
            "verify": not no_verify,
            "paired_zero_swaps": not no_paired_zero_swaps,
            "timing": not no_timing,
        },
    )
    if status != 200:
        _fail_from_response(status, body)
    rows = body["rows"]
    text = rows_to_csv(rows) if fmt == "csv" else rows_to_json(rows)
    if out:
        Path(out).write_text(text)
        click.echo(f"wrote {len(rows)} rows to {out}", err=True)
    else:
        click.echo(text, nl=False)
    exit_code = body["exit_code"]
    if exit_code == EXIT_VERIFY:
        click.echo("error: some circuits failed verification", err=True)
    elif exit_code == EXIT_ROUTING:
        bad = next(r for r in rows if r["error"])
        click.echo(f"error: some instances failed, e.g. {bad['error']}", err=True)
    if exit_code:
        sys.exit(exit_code)


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("zzrouter.service.app:app", host=host, port=port)


def main(argv: list[str] | None = None) -> None:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)


if __name__ == "__main__":
    main()
