"""CVSS v3.1 base vectors: parsing, canonical rendering and base scores."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .errors import (
    DuplicateMetric,
    MalformedVector,
    MissingMetric,
    UnsupportedMetricGroup,
)

PREFIX = "CVSS:3.1/"
ACCEPTED_PREFIXES = ("CVSS:3.1/", "CVSS:3.0/")

METRIC_ORDER = ("AV", "AC", "PR", "UI", "S", "C", "I", "A")

# Temporal and environmental metric names (rejected, see UnsupportedMetricGroup).
NON_BASE_METRICS = frozenset(
    {"E", "RL", "RC", "CR", "IR", "AR", "MAV", "MAC", "MPR", "MUI", "MS", "MC", "MI", "MA"}
)


class AttackVector(enum.Enum):
    NETWORK = "N"
    ADJACENT = "A"
    LOCAL = "L"
    PHYSICAL = "P"


class AttackComplexity(enum.Enum):
    LOW = "L"
    HIGH = "H"


class PrivilegesRequired(enum.Enum):
    NONE = "N"
    LOW = "L"
    HIGH = "H"


class UserInteraction(enum.Enum):
    NONE = "N"
    REQUIRED = "R"


class Scope(enum.Enum):
    UNCHANGED = "U"
    CHANGED = "C"


class Impact(enum.Enum):
    HIGH = "H"
    LOW = "L"
    NONE = "N"


_METRIC_TYPES: dict[str, type[enum.Enum]] = {
    "AV": AttackVector,
    "AC": AttackComplexity,
    "PR": PrivilegesRequired,
    "UI": UserInteraction,
    "S": Scope,
    "C": Impact,
    "I": Impact,
    "A": Impact,
}

_FIELDS = {
    "AV": "attack_vector",
    "AC": "attack_complexity",
    "PR": "privileges_required",
    "UI": "user_interaction",
    "S": "scope",
    "C": "confidentiality",
    "I": "integrity",
    "A": "availability",
}

# Weights published with the v3.1 standard.
_AV_W = {AttackVector.NETWORK: 0.85, AttackVector.ADJACENT: 0.62,
         AttackVector.LOCAL: 0.55, AttackVector.PHYSICAL: 0.2}
_AC_W = {AttackComplexity.LOW: 0.77, AttackComplexity.HIGH: 0.44}
_PR_W_UNCHANGED = {PrivilegesRequired.NONE: 0.85, PrivilegesRequired.LOW: 0.62,
                   PrivilegesRequired.HIGH: 0.27}
_PR_W_CHANGED = {PrivilegesRequired.NONE: 0.85, PrivilegesRequired.LOW: 0.68,
                 PrivilegesRequired.HIGH: 0.5}
_UI_W = {UserInteraction.NONE: 0.85, UserInteraction.REQUIRED: 0.62}
_CIA_W = {Impact.HIGH: 0.56, Impact.LOW: 0.22, Impact.NONE: 0.0}


@dataclass(frozen=True)
class CvssVector:
    attack_vector: AttackVector
    attack_complexity: AttackComplexity
    privileges_required: PrivilegesRequired
    user_interaction: UserInteraction
    scope: Scope
    confidentiality: Impact
    integrity: Impact
    availability: Impact

    def __str__(self) -> str:
        return render_vector(self)

    @property
    def score(self) -> float:
        return base_score(self)


def parse_vector(text: str) -> CvssVector:
    """Decode a v3.1 base vector such as ``AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H``.

    The ``CVSS:3.1/`` (or ``CVSS:3.0/``) prefix is optional. Metric codes are
    case-sensitive. Errors report the character offset of the bad token.
    """
    if not isinstance(text, str):
        raise MalformedVector(0, repr(text))
    body, offset = text, 0
    if text.startswith("CVSS:"):
        for prefix in ACCEPTED_PREFIXES:
            if text.startswith(prefix):
                body, offset = text[len(prefix):], len(prefix)
                break
        else:
            raise MalformedVector(0, text.split("/", 1)[0])

    values: dict[str, enum.Enum] = {}
    pos = offset
    for token in body.split("/"):
        name, sep, code = token.partition(":")
        if name in NON_BASE_METRICS and sep:
            raise UnsupportedMetricGroup(name)
        kind = _METRIC_TYPES.get(name)
        if not sep or kind is None:
            raise MalformedVector(pos, token)
        if name in values:
            raise DuplicateMetric(name)
        try:
            values[name] = kind(code)
        except ValueError:
            raise MalformedVector(pos, token) from None
        pos += len(token) + 1

    for name in METRIC_ORDER:
        if name not in values:
            raise MissingMetric(name)
    return CvssVector(**{_FIELDS[k]: v for k, v in values.items()})


def render_vector(v: CvssVector) -> str:
    parts = [f"{m}:{getattr(v, _FIELDS[m]).value}" for m in METRIC_ORDER]
    return PREFIX + "/".join(parts)


def roundup(value: float) -> float:
    """Smallest one-decimal number >= value, robust to float noise.

    Works on an integer scaled by 1e5 so that e.g. 4.000000000000001 maps to
    4.0 rather than 4.1.
    """
    scaled = round(value * 100_000)
    if scaled % 10_000 == 0:
        return scaled / 100_000.0
    return (math.floor(scaled / 10_000) + 1) / 10.0


def base_score(v: CvssVector) -> float:
    iss = 1 - (
        (1 - _CIA_W[v.confidentiality])
        * (1 - _CIA_W[v.integrity])
        * (1 - _CIA_W[v.availability])
    )
    changed = v.scope is Scope.CHANGED
    if changed:
        impact = 7.52 * (iss - 0.029) - 3.25 * (iss - 0.02) ** 15
        pr = _PR_W_CHANGED[v.privileges_required]
    else:
        impact = 6.42 * iss
        pr = _PR_W_UNCHANGED[v.privileges_required]
    exploitability = (
        8.22 * _AV_W[v.attack_vector] * _AC_W[v.attack_complexity] * pr
        * _UI_W[v.user_interaction]
    )
    if impact <= 0:
        return 0.0
    if changed:
        return roundup(min(1.08 * (impact + exploitability), 10.0))
    return roundup(min(impact + exploitability, 10.0))


def score_vector(text: str) -> float:
    return base_score(parse_vector(text))


def all_vectors() -> Iterator[CvssVector]:
    """Every one of the 2592 syntactically valid base vectors."""
    kinds = [_METRIC_TYPES[m] for m in METRIC_ORDER]
    fields = [_FIELDS[m] for m in METRIC_ORDER]
    for combo in itertools.product(*(list(k) for k in kinds)):
        yield CvssVector(**dict(zip(fields, combo)))
