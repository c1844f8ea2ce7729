"""Command-line front end: ``cvssagg score|validate|aggregate|simulate``.

Exit codes: 0 success, 1 domain or validation error, 2 usage error.
"""

from __future__ import annotations

import sys

import click

from . import __version__
from .cvss import parse_vector, base_score, render_vector
from .errors import CvssAggError, ValidationErrors
from .factors import AverageKind
from .pipeline import analyze
from .report import load_context, load_graph, render_report
from .simlab import Shape, SimConfig, run_experiment, to_csv, to_json

SIGMA_CHOICES = click.Choice([k.value for k in AverageKind])


def _fail(exc: CvssAggError) -> None:
    if isinstance(exc, ValidationErrors):
        for err in exc.errors:
            click.echo(f"{type(err).__name__}: {err}", err=True)
    else:
        click.echo(f"{type(exc).__name__}: {exc}", err=True)
    sys.exit(1)


@click.group()
@click.version_option(__version__, prog_name="cvssagg")
def cli() -> None:
    """Aggregate the CVSS scores of a composite system into one value."""


@cli.command()
@click.argument("vector")
def score(vector: str) -> None:
    """Print the v3.1 base score and canonical form of VECTOR."""
    try:
        v = parse_vector(vector)
    except CvssAggError as exc:
        _fail(exc)
    click.echo(f"{base_score(v):.1f}")
    click.echo(render_vector(v))


@cli.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(dir_okay=False))
def validate(graph_path: str) -> None:
    """Check a graph file and list every violation."""
    try:
        load_graph(graph_path)
    except CvssAggError as exc:
        _fail(exc)
    click.echo("ok")


@cli.command("aggregate")
@click.option("--graph", "graph_path", required=True, type=click.Path(dir_okay=False))
@click.option("--context", "context_path", required=True, type=click.Path(dir_okay=False))
@click.option("--sigma", default="arithmetic", show_default=True, type=SIGMA_CHOICES)
@click.option("--format", "fmt", default="text", show_default=True, type=click.Choice(["json", "text"]))
@click.option("--explain", is_flag=True, help="Add the step list, contribution ranking and branch scores.")
def aggregate_cmd(graph_path: str, context_path: str, sigma: str, fmt: str, explain: bool) -> None:
    """Run the full pipeline on a graph and a deployment context."""
    try:
        graph = load_graph(graph_path)
        ctx = load_context(context_path)
        report = analyze(graph, ctx, AverageKind(sigma))
    except CvssAggError as exc:
        _fail(exc)
    click.echo(render_report(report, fmt, explain).decode("utf-8"), nl=False)


@cli.command()
@click.option("--size", default=64, show_default=True, type=click.IntRange(min=1))
@click.option(
    "--shape",
    default="all",
    show_default=True,
    type=click.Choice([s.value for s in Shape] + ["all"]),
)
@click.option("--seed", default=0, show_default=True, type=click.IntRange(min=0))
@click.option(
    "--sigma",
    default="arithmetic",
    show_default=True,
    type=SIGMA_CHOICES,
    help="Kept in the run config; both averages are always reported.",
)
@click.option("--format", "fmt", default="csv", show_default=True, type=click.Choice(["csv", "json"]))
def simulate(size: int, shape: str, seed: int, sigma: str, fmt: str) -> None:
    """Aggregate random datasets with random correction factors."""
    shapes = list(Shape) if shape == "all" else [Shape(shape)]
    results = [
        run_experiment(SimConfig(size, s, seed, AverageKind(sigma)))
        for s in shapes
    ]
    click.echo(to_csv(results) if fmt == "csv" else to_json(results), nl=False)


def main() -> None:
    cli(prog_name="cvssagg")


if __name__ == "__main__":
    main()
