"""Bayesian combination of corrected scores and the final damped aggregate."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence

from .factors import MAX_SCORE, AverageFactor, AverageKind
from .graph import Edg, branch_of


@dataclass(frozen=True)
class AggregationEntry:
    cve: str
    asset: str
    raw: float
    lam: float
    corrected: float
    clamped: bool = False


@dataclass(frozen=True)
class AggregationInput:
    entries: tuple[AggregationEntry, ...]
    sigma: AverageFactor | None = None

    def without(self, predicate) -> "AggregationInput":
        return AggregationInput(tuple(e for e in self.entries if not predicate(e)), self.sigma)


@dataclass(frozen=True)
class Contribution:
    cve: str
    asset: str
    corrected: float
    share: float


@dataclass(frozen=True)
class AggregationResult:
    f_value: float
    gamma_score: float
    gamma_display: str
    sigma: float | None
    sigma_kind: AverageKind | None
    contributions: tuple[Contribution, ...] = ()
    dominant_branch: str | None = None
    degenerate: bool = False
    clamped_entries: tuple[str, ...] = ()
    # Unclamped value of 10 - f/sigma, kept for transparency; None without sigma.
    gamma_literal: float | None = None
    gamma_clamped: bool = False
    branch_scores: dict[str, float] = field(default_factory=dict, compare=True)


def combine(a: float, b: float) -> float:
    """Add two scores the way independent probabilities of compromise add.

    Same value as ``10 * (1 - (1 - a/10) * (1 - b/10))``, arranged so that
    adding 0 is exact and 10 absorbs exactly.
    """
    if a >= MAX_SCORE or b >= MAX_SCORE:
        return MAX_SCORE
    return min(a + b * (1.0 - a / 10.0), MAX_SCORE)


def bayesian_sum(values: Iterable[float]) -> float:
    """Fold ``combine`` over ``values`` left to right; 0 for no values.

    The first value is the base case, each later one is added to the running
    total. Zeros are identities and 10 absorbs everything.
    """
    it = iter(values)
    try:
        acc = float(next(it))
    except StopIteration:
        return 0.0
    for v in it:
        acc = combine(acc, v)
    return acc


def display_one_decimal(value: float) -> str:
    return str(Decimal(repr(value)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def rank_contributions(entries: Sequence[AggregationEntry]) -> tuple[Contribution, ...]:
    live = [e for e in entries if e.corrected > 0]
    total = sum(e.corrected for e in live)
    ranked = sorted(live, key=lambda e: (-e.corrected, e.cve, e.asset))
    return tuple(Contribution(e.cve, e.asset, e.corrected, e.corrected / total) for e in ranked)


def branch_scores(inp: AggregationInput, graph: Edg) -> dict[str, float]:
    """Bayesian sum per child of the entry point over its shortest-path subtree."""
    branches = branch_of(graph)
    per_branch: dict[str, list[float]] = {c: [] for c in graph.children(graph.entry_point)}
    for e in inp.entries:
        b = branches.get(e.asset)
        if b is not None:
            per_branch.setdefault(b, []).append(e.corrected)
    return {b: bayesian_sum(vals) for b, vals in sorted(per_branch.items())}


def contributions(inp: AggregationInput, graph: Edg | None = None) -> tuple[tuple[Contribution, ...], str | None]:
    ranked = rank_contributions(inp.entries)
    if graph is None or not ranked:
        return ranked, None
    scores = branch_scores(inp, graph)
    best = max(scores.values(), default=0.0)
    if best <= 0:
        return ranked, None
    dominant = min(b for b, s in scores.items() if s == best)
    return ranked, dominant


def aggregate(inp: AggregationInput, graph: Edg | None = None) -> AggregationResult:
    """Combine corrected scores and damp the total by the average factor.

    The result is ``10 - f / sigma`` clamped to [0, 10], where ``f`` is the
    Bayesian sum of the corrected scores. When nothing contributes (no
    entries, or every corrected score is zero) the score is 0 and the result
    is flagged degenerate.
    """
    corrected = [e.corrected for e in inp.entries]
    f = bayesian_sum(corrected)
    sigma = inp.sigma.sigma if inp.sigma else None
    kind = inp.sigma.kind if inp.sigma else None
    clamped_entries = tuple(e.cve for e in inp.entries if e.clamped)
    degenerate = not any(c > 0 for c in corrected)

    literal = None
    if sigma:
        literal = 10.0 - f / sigma
    elif not degenerate:
        raise ValueError("a positive average factor is required to aggregate nonzero scores")

    ranked, dominant = contributions(inp, graph)
    scores = branch_scores(inp, graph) if graph is not None else {}

    if degenerate:
        gamma, gamma_clamped = 0.0, False
    else:
        gamma = min(max(literal, 0.0), MAX_SCORE)
        gamma_clamped = gamma != literal

    return AggregationResult(
        f_value=f,
        gamma_score=gamma,
        gamma_display=display_one_decimal(gamma),
        sigma=sigma,
        sigma_kind=kind,
        contributions=ranked,
        dominant_branch=dominant,
        degenerate=degenerate,
        clamped_entries=clamped_entries,
        gamma_literal=literal,
        gamma_clamped=gamma_clamped,
        branch_scores=scores,
    )
