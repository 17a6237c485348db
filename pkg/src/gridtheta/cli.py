"""Command-line client for the gridtheta service.

The CLI is a thin HTTP client: every subcommand builds one request and
renders one response. Without ``--server`` it talks to an in-process
instance of the same app, so no running server is needed for local use.

Exit codes: 0 success, 1 malformed input, 2 refused by resource caps,
3 internal invariant violation.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

from .config import RunConfig, config_from_env, config_from_file

EXIT_BY_STATUS = {400: 1, 404: 1, 422: 1, 413: 2, 500: 3}


class Session:
    def __init__(self, server: str | None, config: RunConfig, fmt: str):
        self.config = config
        self.format = fmt
        if server:
            self.client = httpx.Client(base_url=server, timeout=3600.0)
        else:
            from starlette.testclient import TestClient

            from .service.app import create_app

            self.client = TestClient(create_app(config), raise_server_exceptions=False)

    def call(self, method: str, path: str, payload: dict | None = None) -> dict:
        response = self.client.request(method, path, json=payload)
        body = response.json()
        if response.status_code != 200:
            message = body.get("message") or body.get("detail") or str(body)
            click.echo(f"error: {message}", err=True)
            sys.exit(EXIT_BY_STATUS.get(response.status_code, 3))
        return body

    def emit(self, body: dict, table_renderer=None) -> None:
        if self.format == "table" and table_renderer is not None:
            click.echo(table_renderer(body))
        else:
            click.echo(json.dumps(body, indent=2))


pass_session = click.make_pass_decorator(Session)


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="base URL of a running service; default runs in process")
@click.option("--config", "config_file", default=None, type=click.Path(exists=True),
              help="key=value config file")
@click.option("--max-k", default=None, type=int, help="full-complex size cap")
@click.option("--max-k-bucket", default=None, type=int, help="single-bucket size cap")
@click.option("--workers", default=None, type=int)
@click.option("--format", "fmt", default=None, type=click.Choice(["json", "table"]))
@click.pass_context
def main(ctx, server, config_file, max_k, max_k_bucket, workers, fmt):
    """Grid-diagram link Floer homology and the transverse theta invariant."""
    cfg = config_from_env()
    if config_file:
        cfg = config_from_file(config_file, cfg)
    cfg = cfg.with_overrides(max_k_full=max_k, max_k_bucket=max_k_bucket,
                             workers=workers, output_format=fmt)
    ctx.obj = Session(server, cfg, cfg.output_format)


def _word_payload(word: str | None, example: str | None, session: Session) -> dict:
    payload: dict = {"max_k": session.config.max_k_full,
                     "max_k_bucket": session.config.max_k_bucket}
    if word is not None:
        payload["word"] = word
    if example is not None:
        payload["example"] = example
    return payload


def _read_grid_arg(grid: str) -> str:
    if grid == "-":
        return sys.stdin.read()
    return grid


@main.command()
@click.argument("grid")
@pass_session
def validate(session: Session, grid: str):
    """Validate grid text ('-' reads stdin)."""
    body = session.call("POST", "/grid/validate", {"grid": _read_grid_arg(grid)})
    session.emit(body)


@main.command()
@click.argument("word", required=False)
@click.option("--example", default=None)
@pass_session
def braid2grid(session: Session, word, example):
    """Canonical grid diagram of a braid word."""
    body = session.call("POST", "/convert/braid-to-grid",
                        _word_payload(word, example, session))
    session.emit(body, lambda b: b["grid"])


@main.command()
@click.argument("grid")
@pass_session
def grid2braid(session: Session, grid):
    """Braid word read off a grid diagram ('-' reads stdin)."""
    body = session.call("POST", "/convert/grid-to-braid",
                        {"grid": _read_grid_arg(grid)})
    session.emit(body, lambda b: b["word"])


@main.command()
@click.argument("word", required=False)
@click.option("--example", default=None)
@pass_session
def sl(session: Session, word, example):
    """Self-linking number of the closure."""
    body = session.call("POST", "/braid/sl", _word_payload(word, example, session))
    session.emit(body, lambda b: str(b["sl"]))


@main.command()
@click.argument("word", required=False)
@click.option("--example", default=None)
@pass_session
def sldata(session: Session, word, example):
    """Self-linking data of every sublink."""
    body = session.call("POST", "/braid/sldata", _word_payload(word, example, session))

    def table(b):
        lines = [f"components: {b['components']}"]
        lines += [f"  {{{key}}}: {val}" for key, val in b["entries"].items()]
        return "\n".join(lines)

    session.emit(body, table)


@main.command()
@click.argument("word", required=False)
@click.option("--example", default=None)
@click.option("--grid", default=None, help="grid text instead of a word")
@pass_session
def rank(session: Session, word, example, grid):
    """Tilde homology ranks per bigrading, plus the hat-normalized total."""
    payload: dict = {"max_k": session.config.max_k_full}
    if word is not None:
        payload["word"] = word
    if example is not None:
        payload["example"] = example
    if grid is not None:
        payload["grid"] = _read_grid_arg(grid)
    body = session.call("POST", "/homology/rank", payload)

    def table(b):
        lines = [f"k={b['k']} components={b['components']} "
                 f"total={b['total']} hat_total={b['hat_total']}"]
        for bucket in b["buckets"]:
            alex = ",".join(bucket["alexander"])
            lines.append(f"  M={bucket['maslov']:>3} A=({alex}): {bucket['rank']}")
        return "\n".join(lines)

    session.emit(body, table)


@main.command()
@click.argument("word", required=False)
@click.option("--example", default=None)
@click.option("--check-negstab", is_flag=True,
              help="also certify that the negative stabilization vanishes")
@click.option("--propagation", nargs=2, default=None, metavar="G H",
              help="check nonzero propagation for the pair of words")
@pass_session
def theta(session: Session, word, example, check_negstab, propagation):
    """Certificate for the transverse invariant of a braid closure."""
    if propagation:
        g, h = propagation
        body = session.call("POST", "/theta/propagation",
                            {"g": g, "h": h,
                             "max_k": session.config.max_k_full,
                             "max_k_bucket": session.config.max_k_bucket})
        session.emit(body)
        return
    path = "/theta/negative-stabilization" if check_negstab else "/theta"
    body = session.call("POST", path, _word_payload(word, example, session))

    def table(b):
        if check_negstab:
            return (f"original vanishes: {b['original']['vanishes']}\n"
                    f"stabilized vanishes: {b['stabilized_vanishes']}")
        grading = b["gradings"]
        return (f"word {b['word']} (k={b['grid']['k']}): "
                f"vanishes={b['vanishes']} "
                f"M={grading['maslov']} A=({','.join(grading['alexander'])})")

    session.emit(body, table)


@main.command()
@click.option("--word", required=True)
@click.option("--resolve-last", is_flag=True, default=True)
@click.option("--positions", default=None,
              help="comma-separated 1-based letter positions to resolve in order")
@pass_session
def pentagon(session: Session, word, resolve_last, positions):
    """Resolve positive crossings and verify the pentagon chain map."""
    payload = {"word": word, "resolve_last": resolve_last,
               "max_k": session.config.max_k_full}
    if positions:
        payload["positions"] = [int(tok) for tok in positions.split(",")]
    body = session.call("POST", "/pentagon", payload)
    session.emit(body)


@main.command(name="flype-search")
@click.option("-n", "--strands", required=True, type=int)
@click.option("--max-fragment-length", required=True, type=int)
@click.option("-m", required=True, type=int)
@click.option("--limit", default=None, type=int)
@pass_session
def flype_search_cmd(session: Session, strands, max_fragment_length, m, limit):
    """Search flype families for theta-distinguished pairs."""
    body = session.call("POST", "/flype/search",
                        {"strands": strands,
                         "max_fragment_length": max_fragment_length,
                         "m": m, "limit": limit,
                         "max_k": session.config.max_k_full,
                         "workers": session.config.workers})

    def table(b):
        lines = [f"examined {b['candidates_examined']} candidates, "
                 f"skipped {b['candidates_skipped']}, "
                 f"split pairs: {len(b['split_pairs'])}"]
        for row in b["split_pairs"]:
            lines.append(f"  w1={row['w1']} (vanishes={row['theta_w1_vanishes']})  "
                         f"w2={row['w2']} (vanishes={row['theta_w2_vanishes']})  "
                         f"SL equal={row['sl_data_equal']}")
        return "\n".join(lines)

    session.emit(body, table)


@main.command()
@click.argument("name", required=False)
@pass_session
def examples(session: Session, name):
    """List the registry, or print one named example."""
    if name is None:
        body = session.call("GET", "/examples")
        session.emit(body, lambda b: "\n".join(b["names"]))
    else:
        body = session.call("GET", f"/examples/{name}")
        session.emit(body, lambda b: b.get("word") or b.get("grid"))


@main.command()
@click.option("--ids", default=None, help="comma-separated criterion ids")
@pass_session
def report(session: Session, ids):
    """Run the acceptance suite and print one line per criterion."""
    payload: dict = {"max_k": session.config.max_k_full}
    if ids:
        payload["ids"] = [int(tok) for tok in ids.split(",")]
    body = session.call("POST", "/report", payload)
    for item in body["items"]:
        status = "SKIP" if item["skipped"] else ("PASS" if item["passed"] else "FAIL")
        click.echo(f"[{status}] {item['id']:2d} {item['name']}: "
                   f"{item['detail']} ({item['seconds']:.1f}s)")
    if not body["all_passed"]:
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
@pass_session
def serve(session: Session, host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(session.config), host=host, port=port)


if __name__ == "__main__":
    main()
