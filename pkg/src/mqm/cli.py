"""Command line front end.

Each subcommand builds one report (locally, or via --server against a running
service), writes it as JSON, and exits 0 when every verdict holds, 2 when a
verdict fails, 1 on errors.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__, reports
from .complexes import ModelError
from .graphs import GraphError
from .traces import WordError


def _model_option(fn):
    return click.option(
        "--model",
        "model_spec",
        required=True,
        help="model spec: path to a JSON file, or inline JSON",
    )(fn)


def _common_options(fn):
    fn = click.option("--out", type=click.Path(dir_okay=False), default=None, help="write the report JSON here (default: stdout)")(fn)
    fn = click.option("--workers", type=int, default=1, show_default=True)(fn)
    fn = click.option("--server", default=None, help="POST to a running service instead of computing locally")(fn)
    return fn


@click.group()
@click.version_option(__version__)
def cli() -> None:
    """Exact scans and witnesses for counting quasimorphisms."""


def _finish(command: str, report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if out:
        Path(out).write_text(text + "\n")
    else:
        click.echo(text)
    code = 0
    for v in report.get("verdicts", []):
        status = "PASS" if v["ok"] else "FAIL"
        click.echo(f"{status} {command}:{v['name']} {v['detail']}", err=True)
        if not v["ok"]:
            code = 2
    if report.get("incomplete"):
        click.echo(f"note: {command} report is marked incomplete", err=True)
    sys.exit(code)


def _remote(server: str, command: str, payload: dict) -> dict:
    import httpx

    resp = httpx.post(f"{server.rstrip('/')}/v1/{command}", json=payload, timeout=None)
    if resp.status_code != 200:
        raise ModelError(f"server returned {resp.status_code}: {resp.text}")
    return resp.json()


@cli.command()
@_model_option
@click.option("--segment", required=True, help="reduced word, e.g. 'a,b'")
@click.option("--radius", type=int, default=4, show_default=True)
@_common_options
def brooks(model_spec, segment, radius, out, workers, server):
    """Defect scan of the subword-counting quasimorphisms of a word."""
    if server:
        rep = _remote(server, "brooks", {"model": _spec_payload(model_spec), "segment": segment, "radius": radius, "workers": workers})
    else:
        rep = reports.run_brooks(model_spec, segment, radius=radius, workers=workers)
    _finish("brooks", rep, out)


@cli.command()
@_model_option
@click.option("--segment", required=True, help="word (group models) or halfspace chain")
@click.option("--radius", type=int, default=2, show_default=True)
@_common_options
def defect(model_spec, segment, radius, out, workers, server):
    """Exhaustive |delta f_s| scan over ball triples."""
    if server:
        rep = _remote(server, "defect", {"model": _spec_payload(model_spec), "segment": segment, "radius": radius, "workers": workers})
    else:
        rep = reports.run_defect(model_spec, segment, radius=radius, workers=workers)
    _finish("defect", rep, out)


@cli.command()
@_model_option
@click.option("--segment", required=True, help="the segment s")
@click.option("--segment2", required=True, help="the segment r with kappa = delta f_r")
@click.option("--radius", type=int, default=1, show_default=True)
@click.option("--window", type=int, default=4, show_default=True)
@_common_options
def cup(model_spec, segment, segment2, radius, window, out, workers, server):
    """Check the explicit primitive for delta f_s cup delta f_r."""
    if server:
        rep = _remote(
            server,
            "cup",
            {"model": _spec_payload(model_spec), "segment": segment, "segment2": segment2, "radius": radius, "window": window, "workers": workers},
        )
    else:
        rep = reports.run_cup(model_spec, segment, segment2, radius=radius, window=window, workers=workers)
    _finish("cup", rep, out)


@cli.command()
@_model_option
@click.option("--segment", required=True, help="the word w")
@click.option("--segment2", default=None, help="second word (distance witness on free models)")
@click.option("--gamma", default=None, help="group element (gamma-nested witness)")
@click.option("--f-names", default=None, help="generators spanning F (separation witness)")
@click.option("--powers", type=int, default=10, show_default=True, help="verify up to this power")
@_common_options
def witness(model_spec, segment, segment2, gamma, f_names, powers, out, workers, server):
    """Constructive witnesses: gamma-nested growth, separation, distance."""
    if server:
        rep = _remote(
            server,
            "witness",
            {"model": _spec_payload(model_spec), "segment": segment, "segment2": segment2, "gamma": gamma, "f_names": f_names, "powers": powers},
        )
    else:
        rep = reports.run_witness(model_spec, segment, segment2=segment2, gamma=gamma, f_names=f_names, powers=powers)
    _finish("witness", rep, out)


@cli.command()
@_model_option
@click.option("--radius", type=int, default=2, show_default=True)
@click.option("--cap", type=int, default=8, show_default=True, help="abort chains longer than this")
@_common_options
def staircase(model_spec, radius, cap, out, workers, server):
    """Longest staircase found in a ball (certified lower bound)."""
    if server:
        rep = _remote(server, "staircase", {"model": _spec_payload(model_spec), "radius": radius, "cap": cap})
    else:
        rep = reports.run_staircase(model_spec, radius=radius, cap=cap)
    _finish("staircase", rep, out)


def _spec_payload(model_spec: str):
    """Resolve the --model value to something serialisable for the service."""
    p = Path(model_spec)
    if p.suffix == ".json" or p.exists():
        return json.loads(p.read_text())
    return json.loads(model_spec)


def main() -> None:
    try:
        cli(standalone_mode=False)
    except click.ClickException as e:
        e.show()
        sys.exit(1)
    except click.Abort:
        sys.exit(1)
    except (ModelError, GraphError, WordError, ValueError, KeyError, OSError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
