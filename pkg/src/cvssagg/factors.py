"""Per-vulnerability correction factors and the dataset-level average factor.

Every vulnerability gets four factors:

* functionality (rho): 1 if the flaw touches a function the system uses, else 0
* deepness (beta): weight of the asset's layer, 1 at the entry point
* context (gamma): 1 if the attack vector is reachable where the system runs
* exploit (mu): multiplier for public exploit maturity

Their product is the summarized factor (lambda) that scales the raw score.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .cvss import AttackVector
from .errors import DepthOutOfRange, EmptyDataset, UndefinedAverage
from .graph import DepthMap, Edg, ExploitMaturity, Vulnerability, depth_map

MAX_SCORE = 10.0

EXPLOIT_WEIGHTS = {
    ExploitMaturity.NO_EXPLOIT: 0.0,
    ExploitMaturity.NOT_DEFINED: 0.5,
    ExploitMaturity.THEORETICAL: 1.25,
    ExploitMaturity.PROOF_OF_CONCEPT: 1.5,
    ExploitMaturity.FUNCTIONAL: 1.75,
    ExploitMaturity.AUTOMATED: 2.0,
}

Interpolation = Callable[[int, int], float]


class AverageKind(enum.Enum):
    ARITHMETIC = "arithmetic"
    HARMONIC = "harmonic"


@dataclass(frozen=True)
class DeploymentContext:
    reachable_vectors: frozenset[AttackVector] = frozenset()
    description: str = ""


@dataclass(frozen=True)
class CorrectionFactors:
    rho: int
    beta: float
    gamma: int
    mu: float

    @property
    def lam(self) -> float:
        return summarized_factor(self.rho, self.beta, self.gamma, self.mu)


@dataclass(frozen=True)
class CorrectedScore:
    raw: float
    lam: float
    corrected: float
    clamped: bool


@dataclass(frozen=True)
class AverageFactor:
    kind: AverageKind
    sigma: float


def functionality_factor(v: Vulnerability) -> int:
    return 1 if v.affects_functionality else 0


def linear(depth: int, max_depth: int) -> float:
    return (max_depth - depth + 1) / max_depth


def deepness_factor(depth: int, max_depth: int, interpolation: Interpolation = linear) -> float:
    """Layer weight of an asset at ``depth`` in a graph ``max_depth`` layers deep.

    With the default linear interpolation a four-layer graph gives
    1, 0.75, 0.5 and 0.25 for layers 1 to 4.
    """
    if max_depth < 1 or not 1 <= depth <= max_depth:
        raise DepthOutOfRange(depth, max_depth)
    return interpolation(depth, max_depth)


def context_factor(av: AttackVector, ctx: DeploymentContext) -> int:
    return 1 if av in ctx.reachable_vectors else 0


def exploit_factor(m: ExploitMaturity) -> float:
    return EXPLOIT_WEIGHTS[m]


def summarized_factor(rho: float, beta: float, gamma: float, mu: float) -> float:
    return rho * beta * gamma * mu


def corrected_score(score: float, lam: float) -> CorrectedScore:
    product = lam * score
    clamped = product > MAX_SCORE
    return CorrectedScore(
        raw=score, lam=lam, corrected=MAX_SCORE if clamped else product, clamped=clamped
    )


def average_factor(initial_scores: Sequence[float], kind: AverageKind = AverageKind.ARITHMETIC) -> AverageFactor:
    """Mean of the *uncorrected* scores, used to damp the final value."""
    scores = list(initial_scores)
    if not scores:
        raise EmptyDataset()
    if kind is AverageKind.ARITHMETIC:
        sigma = math.fsum(scores) / len(scores)
    else:
        if any(s <= 0 for s in scores):
            raise UndefinedAverage("harmonic mean needs strictly positive scores")
        sigma = len(scores) / math.fsum(1.0 / s for s in scores)
    return AverageFactor(kind, sigma)


def factors_for(
    v: Vulnerability,
    depths: DepthMap,
    ctx: DeploymentContext,
    interpolation: Interpolation = linear,
) -> CorrectionFactors:
    return CorrectionFactors(
        rho=functionality_factor(v),
        beta=deepness_factor(depths[v.asset], depths.max_depth, interpolation),
        gamma=context_factor(v.vector.attack_vector, ctx),
        mu=exploit_factor(v.exploit_maturity),
    )


def graph_factors(
    g: Edg, ctx: DeploymentContext, interpolation: Interpolation = linear
) -> list[tuple[Vulnerability, CorrectionFactors]]:
    depths = depth_map(g)
    return [(v, factors_for(v, depths, ctx, interpolation)) for v in g.vulnerabilities]


def context_from_codes(codes: Iterable[str]) -> DeploymentContext:
    return DeploymentContext(frozenset(AttackVector(c) for c in codes))
