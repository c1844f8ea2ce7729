"""Synthetic datasets with random correction factors.

Each dataset holds ``dataset_size`` scores drawn from one of five shapes.
Factors are drawn in this order:

1. graph depth L, uniform integer in [2, 20], once per dataset
2. per score, a layer uniform in [1, L]
3. deepness by linear interpolation over the layers
4. functionality flag, fair coin
5. context flag, fair coin
6. exploit factor, uniform over {0, 1.25, 1.5, 1.75, 2}
7. lambda as the product

Scores come from a numpy ``PCG64`` generator seeded with ``seed`` alone, so
a config always yields the same dataset.

Shape parameters (samples are clipped to [0.1, 10] and rounded to one decimal):

* centered:   normal(5, 1.5)
* high_heavy: 10 * beta(5, 2)
* low_heavy:  10 * beta(2, 5)
* bimodal:    equal mix of normal(1.5, 1) and normal(8.5, 1)
* uniform:    uniform(0, 10)
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .aggregate import AggregationEntry, AggregationInput, aggregate, bayesian_sum
from .factors import AverageKind, CorrectionFactors, average_factor, corrected_score, linear

MIN_DEPTH, MAX_DEPTH = 2, 20
MU_CHOICES = (0.0, 1.25, 1.5, 1.75, 2.0)
LOWEST_SCORE = 0.1

CSV_COLUMNS = ("distribution", "mean_arith", "mean_harm", "magerit", "bayes_arith", "bayes_harm")


class Shape(enum.Enum):
    CENTERED = "centered"
    HIGH_HEAVY = "high_heavy"
    LOW_HEAVY = "low_heavy"
    BIMODAL = "bimodal"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class SimConfig:
    dataset_size: int = 64
    distribution_shape: Shape = Shape.UNIFORM
    seed: int = 0
    sigma_kind: AverageKind = AverageKind.ARITHMETIC

    def __post_init__(self):
        if self.dataset_size < 1:
            raise ValueError("dataset_size must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be unsigned")


@dataclass(frozen=True)
class SimResult:
    distribution: str
    mean_arith: float
    mean_harm: float
    magerit: float
    bayes_arith: float
    bayes_harm: float
    degenerate: bool = False

    def bayes(self, kind: AverageKind) -> float:
        return self.bayes_arith if kind is AverageKind.ARITHMETIC else self.bayes_harm


def sample_scores(rng: np.random.Generator, shape: Shape, n: int) -> np.ndarray:
    if shape is Shape.CENTERED:
        x = rng.normal(5.0, 1.5, n)
    elif shape is Shape.HIGH_HEAVY:
        x = 10.0 * rng.beta(5.0, 2.0, n)
    elif shape is Shape.LOW_HEAVY:
        x = 10.0 * rng.beta(2.0, 5.0, n)
    elif shape is Shape.BIMODAL:
        high = rng.random(n) < 0.5
        x = np.where(high, rng.normal(8.5, 1.0, n), rng.normal(1.5, 1.0, n))
    else:
        x = rng.uniform(0.0, 10.0, n)
    return np.round(np.clip(x, LOWEST_SCORE, 10.0), 1)


def generate_dataset(cfg: SimConfig) -> list[tuple[float, CorrectionFactors]]:
    rng = np.random.default_rng(cfg.seed)
    n = cfg.dataset_size
    scores = sample_scores(rng, cfg.distribution_shape, n)
    max_depth = int(rng.integers(MIN_DEPTH, MAX_DEPTH, endpoint=True))
    layers = rng.integers(1, max_depth, size=n, endpoint=True)
    rho = rng.integers(0, 1, size=n, endpoint=True)
    gamma = rng.integers(0, 1, size=n, endpoint=True)
    mu = rng.choice(np.array(MU_CHOICES), size=n)
    return [
        (
            float(scores[i]),
            CorrectionFactors(
                rho=int(rho[i]),
                beta=linear(int(layers[i]), max_depth),
                gamma=int(gamma[i]),
                mu=float(mu[i]),
            ),
        )
        for i in range(n)
    ]


def summarize(dataset: Sequence[tuple[float, CorrectionFactors]], label: str = "") -> SimResult:
    """Means, uncorrected Bayesian sum and corrected aggregate under both means."""
    raw = [s for s, _ in dataset]
    entries = []
    for i, (score, fac) in enumerate(dataset):
        cs = corrected_score(score, fac.lam)
        entries.append(AggregationEntry(f"#{i}", "", cs.raw, cs.lam, cs.corrected, cs.clamped))
    arith = average_factor(raw, AverageKind.ARITHMETIC)
    harm = average_factor(raw, AverageKind.HARMONIC)
    res_a = aggregate(AggregationInput(tuple(entries), arith))
    res_h = aggregate(AggregationInput(tuple(entries), harm))
    return SimResult(
        distribution=label,
        mean_arith=arith.sigma,
        mean_harm=harm.sigma,
        magerit=bayesian_sum(raw),
        bayes_arith=res_a.gamma_score,
        bayes_harm=res_h.gamma_score,
        degenerate=res_a.degenerate,
    )


def run_experiment(cfg: SimConfig) -> SimResult:
    return summarize(generate_dataset(cfg), cfg.distribution_shape.value)


def to_csv(results: Sequence[SimResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in results:
        writer.writerow([r.distribution] + [f"{getattr(r, c):.4f}" for c in CSV_COLUMNS[1:]])
    return buf.getvalue()


def to_json(results: Sequence[SimResult]) -> str:
    return json.dumps([asdict(r) for r in results], indent=2, sort_keys=True) + "\n"
