"""Operator CLI: a thin client over the HTTP service.

Commands talk to the same endpoints the dashboard uses. By default they run
against an in-process instance of the service (mock provider, store from
--store/STORE_PATH); point CASELENS_URL at a running server to go over the
network instead. Output is plain text; --json prints the raw API payload.
"""

from __future__ import annotations

import asyncio
import json
import os
import sys
from importlib import resources

import click
import httpx

from .service.app import create_app

FIXTURES = {"elias": ("fixtures", "elias.json")}


class ApiClient:
    """Sync facade over httpx for either in-process ASGI or a remote server."""

    def __init__(self, store_path: str):
        self.base_url = os.environ.get("CASELENS_URL")
        self.store_path = store_path
        token = os.environ.get("AUTH_TOKEN")
        self.headers = {"Authorization": f"Bearer {token}"} if token else {}

    def request(self, method: str, url: str, **kwargs) -> httpx.Response:
        if self.base_url:
            return httpx.request(
                method, self.base_url.rstrip("/") + url, headers=self.headers, **kwargs
            )
        return asyncio.run(self._asgi_request(method, url, **kwargs))

    async def _asgi_request(self, method: str, url: str, **kwargs) -> httpx.Response:
        app = create_app(store_path=self.store_path)
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://caselens.local", headers=self.headers
        ) as client:
            return await client.request(method, url, **kwargs)


def _fail(response: httpx.Response) -> None:
    try:
        payload = response.json()
    except ValueError:
        payload = {"code": "HTTPError", "message": response.text}
    click.echo(json.dumps(payload, indent=2), err=True)
    sys.exit(1)


def _ok(response: httpx.Response) -> dict:
    if response.status_code >= 400:
        _fail(response)
    return response.json()


@click.group()
@click.option(
    "--store",
    "store_path",
    default=lambda: os.environ.get("STORE_PATH", "caselens.db"),
    show_default="STORE_PATH or caselens.db",
    help="Path to the embedded store file.",
)
@click.option("--json", "as_json", is_flag=True, help="Print raw API payloads.")
@click.pass_context
def main(ctx, store_path: str, as_json: bool):
    """Therapist homework sense-making service: operator tooling."""
    ctx.obj = {"client": ApiClient(store_path), "json": as_json}


def _print(ctx, payload, text: str) -> None:
    click.echo(json.dumps(payload, indent=2) if ctx.obj["json"] else text)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def validate(ctx, file: str):
    """Validate a canonical record document without persisting it."""
    raw = open(file, encoding="utf-8").read()
    payload = _ok(ctx.obj["client"].request("POST", "/clients/validate", content=raw))
    counts = payload["counts"]
    lines = [f"record {payload['record_id']} ({payload['client_label']}): valid"]
    lines += [f"  {name}: {n}" for name, n in counts.items() if n]
    _print(ctx, payload, "\n".join(lines))


@main.command()
@click.option("--fixture", default="elias", show_default=True)
@click.pass_context
def seed(ctx, fixture: str):
    """Load a packaged simulated-client fixture into the store."""
    if fixture not in FIXTURES:
        click.echo(f"unknown fixture {fixture!r}; available: {', '.join(FIXTURES)}", err=True)
        sys.exit(1)
    package_dir, name = FIXTURES[fixture]
    raw = resources.files("caselens").joinpath(package_dir, name).read_text("utf-8")
    payload = _ok(ctx.obj["client"].request("POST", "/clients", content=raw))
    _print(
        ctx,
        payload,
        f"seeded record {payload['record_id']} "
        f"({payload['counts']['submissions']} submissions, "
        f"{payload['counts']['thought_records']} thought records)",
    )


@main.command()
@click.argument("client_id")
@click.option(
    "--level",
    type=click.Choice(["basic", "detailed", "none"]),
    default=None,
    help="Override the configured summary level before generating.",
)
@click.option("--as-of", default=None, help="UTC timestamp for the retrieval window.")
@click.pass_context
def summarize(ctx, client_id: str, level: str | None, as_of: str | None):
    """Generate the AI summary for a client (anchor tokens visible)."""
    api = ctx.obj["client"]
    if level is not None:
        level_value = {
            "basic": "Basic Overview",
            "detailed": "Detailed Analysis",
            "none": "No AI Summary",
        }[level]
        config = _ok(api.request("GET", "/therapist/config"))["config"]
        config["summary_level"] = level_value
        _ok(api.request("PUT", "/therapist/config", json=config))
    body = {"activate": True}
    if as_of:
        body["as_of"] = as_of
    payload = _ok(api.request("POST", f"/clients/{client_id}/summary", json=body))
    _print(ctx, payload, payload["body_with_anchors"])


@main.command()
@click.argument("client_id")
@click.argument("question")
@click.option("--as-of", default=None, help="UTC timestamp for the retrieval window.")
@click.pass_context
def chat(ctx, client_id: str, question: str, as_of: str | None):
    """Ask the chat assistant a question about a client."""
    body = {"question": question}
    if as_of:
        body["as_of"] = as_of
    payload = _ok(ctx.obj["client"].request("POST", f"/clients/{client_id}/chat", json=body))
    routing = payload["routing"]
    text = (
        f"[routing: {routing['category']}/{routing['scope']}]\n"
        + payload["body_with_anchors"]
    )
    _print(ctx, payload, text)


@main.command()
@click.argument("client_id")
@click.option("--as-of", default=None, help="UTC timestamp for the retrieval window.")
@click.pass_context
def audit(ctx, client_id: str, as_of: str | None):
    """Generate a summary and audit every anchor against the live record."""
    api = ctx.obj["client"]
    body = {"activate": True}
    if as_of:
        body["as_of"] = as_of
    summary = _ok(api.request("POST", f"/clients/{client_id}/summary", json=body))
    payload = _ok(
        api.request(
            "POST",
            "/audit",
            json={
                "record_id": client_id,
                "body": summary["body_with_anchors"],
                "anchors": summary["anchors"],
            },
        )
    )
    _print(
        ctx,
        payload,
        f"anchors: {len(summary['anchors'])}, resolved: {payload['resolved_count']}, "
        f"dangling: {len(payload['dangling'])}, stale: {len(payload['stale'])}",
    )


@main.command()
@click.option("--host", default=None, help="Bind host (default from BIND_ADDR).")
@click.option("--port", default=None, type=int, help="Bind port (default from BIND_ADDR).")
@click.pass_context
def serve(ctx, host: str | None, port: int | None):
    """Run the HTTP service."""
    import uvicorn

    bind = os.environ.get("BIND_ADDR", "127.0.0.1:8000")
    default_host, _, default_port = bind.partition(":")
    app = create_app(store_path=ctx.obj["client"].store_path)
    uvicorn.run(app, host=host or default_host, port=port or int(default_port or 8000))


if __name__ == "__main__":
    main()
