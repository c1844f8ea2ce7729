"""Graph + deployment context -> factors -> corrected scores -> aggregate."""

from __future__ import annotations

from .aggregate import AggregationEntry, AggregationInput, aggregate
from .factors import (
    AverageKind,
    DeploymentContext,
    Interpolation,
    average_factor,
    corrected_score,
    graph_factors,
    linear,
)
from .graph import Edg
from .report import Report, ReportRow


def aggregation_input(
    graph: Edg,
    ctx: DeploymentContext,
    kind: AverageKind = AverageKind.ARITHMETIC,
    interpolation: Interpolation = linear,
) -> tuple[AggregationInput, list[ReportRow]]:
    rows: list[ReportRow] = []
    entries: list[AggregationEntry] = []
    for vuln, fac in graph_factors(graph, ctx, interpolation):
        cs = corrected_score(vuln.base_score, fac.lam)
        entries.append(AggregationEntry(vuln.cve, vuln.asset, cs.raw, cs.lam, cs.corrected, cs.clamped))
        rows.append(
            ReportRow(
                cve=vuln.cve,
                asset=vuln.asset,
                base_score=vuln.base_score,
                attack_vector=vuln.vector.attack_vector.value,
                rho=fac.rho,
                beta=fac.beta,
                gamma=fac.gamma,
                mu=fac.mu,
                lam=cs.lam,
                corrected=cs.corrected,
                clamped=cs.clamped,
            )
        )
    # sigma always averages every initial score, zero-lambda ones included
    sigma = average_factor([v.base_score for v in graph.vulnerabilities], kind) if entries else None
    return AggregationInput(tuple(entries), sigma), rows


def analyze(
    graph: Edg,
    ctx: DeploymentContext,
    kind: AverageKind = AverageKind.ARITHMETIC,
    interpolation: Interpolation = linear,
) -> Report:
    inp, rows = aggregation_input(graph, ctx, kind, interpolation)
    return Report(rows=tuple(rows), result=aggregate(inp, graph), sigma_kind=kind)
