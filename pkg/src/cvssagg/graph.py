"""Extended dependency graphs: assets, dependency edges, one entry point and
the vulnerabilities attached to each asset."""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .cvss import CvssVector, base_score
from .errors import (
    CvssAggError,
    DuplicateAsset,
    DuplicateVulnerability,
    InvalidField,
    NoEntryPoint,
    ScoreMismatch,
    SelfLoop,
    UnknownAsset,
    Unreachable,
    ValidationErrors,
)

CVE_RE = re.compile(r"^CVE-\d{4}-\d{4,}$")


class ExploitMaturity(enum.Enum):
    NO_EXPLOIT = "none"
    NOT_DEFINED = "not_defined"
    THEORETICAL = "theoretical"
    PROOF_OF_CONCEPT = "poc"
    FUNCTIONAL = "functional"
    AUTOMATED = "automated"


@dataclass(frozen=True)
class Asset:
    id: str
    name: str = ""

    @property
    def label(self) -> str:
        return self.name or self.id


@dataclass(frozen=True)
class Vulnerability:
    cve: str
    vector: CvssVector
    base_score: float
    exploit_maturity: ExploitMaturity
    affects_functionality: bool
    asset: str

    @property
    def key(self) -> tuple[str, str]:
        return (self.cve, self.asset)


@dataclass(frozen=True)
class DepthMap:
    depths: Mapping[str, int]
    max_depth: int

    def __getitem__(self, asset: str) -> int:
        return self.depths[asset]


@dataclass(frozen=True)
class Edg:
    entry_point: str
    assets: Mapping[str, Asset]
    edges: frozenset[tuple[str, str]]
    vulnerabilities: tuple[Vulnerability, ...]
    _children: Mapping[str, tuple[str, ...]] = field(repr=False, compare=False, default_factory=dict)

    def children(self, asset: str) -> tuple[str, ...]:
        return self._children.get(asset, ())

    def vulnerabilities_of(self, asset: str) -> list[Vulnerability]:
        return [v for v in self.vulnerabilities if v.asset == asset]


def _as_asset(item: Asset | str) -> Asset:
    return item if isinstance(item, Asset) else Asset(str(item))


def _bfs(entry: str, children: Mapping[str, Iterable[str]]) -> dict[str, int]:
    depths = {entry: 1}
    queue = deque([entry])
    while queue:
        node = queue.popleft()
        for nxt in children.get(node, ()):
            if nxt not in depths:
                depths[nxt] = depths[node] + 1
                queue.append(nxt)
    return depths


def build_graph(
    entry: str,
    assets: Iterable[Asset | str],
    edges: Iterable[tuple[str, str]],
    vulns: Iterable[Vulnerability] = (),
) -> Edg:
    """Validate the parts of a dependency graph and assemble an :class:`Edg`.

    All violations are collected and raised together as
    :class:`ValidationErrors`. Duplicate edges collapse to one; cycles are
    allowed.
    """
    errors: list[CvssAggError] = []

    declared: dict[str, Asset] = {}
    for item in assets:
        asset = _as_asset(item)
        if not asset.id:
            errors.append(InvalidField("assets", "asset id must be a nonempty string"))
        elif asset.id in declared:
            errors.append(DuplicateAsset(asset.id))
        else:
            declared[asset.id] = asset

    if not entry or entry not in declared:
        errors.append(NoEntryPoint(entry or None))

    edge_set: set[tuple[str, str]] = set()
    for src, dst in edges:
        bad = False
        for end in (src, dst):
            if end not in declared:
                errors.append(UnknownAsset(end, f"edge {src} -> {dst}"))
                bad = True
        if src == dst:
            errors.append(SelfLoop(src))
            bad = True
        if not bad:
            edge_set.add((src, dst))

    seen: set[tuple[str, str]] = set()
    vuln_list: list[Vulnerability] = []
    for v in vulns:
        if not CVE_RE.match(v.cve):
            errors.append(InvalidField(f"vulnerability {v.cve!r}", "CVE id must look like CVE-YYYY-NNNN"))
        if v.asset not in declared:
            errors.append(UnknownAsset(v.asset, v.cve))
        if v.key in seen:
            errors.append(DuplicateVulnerability(v.cve, v.asset))
        seen.add(v.key)
        computed = base_score(v.vector)
        if v.base_score != computed:
            errors.append(ScoreMismatch(v.cve, v.base_score, computed))
        vuln_list.append(v)

    children: dict[str, list[str]] = {}
    for src, dst in sorted(edge_set):
        children.setdefault(src, []).append(dst)

    if entry in declared:
        reached = _bfs(entry, children)
        for asset_id in declared:
            if asset_id not in reached:
                errors.append(Unreachable(asset_id))

    if errors:
        raise ValidationErrors(errors)

    return Edg(
        entry_point=entry,
        assets=dict(declared),
        edges=frozenset(edge_set),
        vulnerabilities=tuple(vuln_list),
        _children={k: tuple(v) for k, v in children.items()},
    )


def depth_map(g: Edg) -> DepthMap:
    """Shortest-path depth of every asset, counted in nodes (entry point = 1)."""
    depths = _bfs(g.entry_point, g._children)
    return DepthMap(depths=depths, max_depth=max(depths.values()))


def branch_of(g: Edg) -> dict[str, str | None]:
    """Map each asset to the entry-point child whose shortest-path subtree holds it.

    When an asset has several parents at the previous depth, the one with the
    smallest id wins, so the tree is independent of input order.
    """
    depths = depth_map(g).depths
    parent: dict[str, str] = {}
    for src, dst in sorted(g.edges):
        if depths.get(dst) == depths.get(src, -1) + 1 and dst not in parent:
            parent[dst] = src
    branches: dict[str, str | None] = {g.entry_point: None}
    for asset in sorted(depths, key=lambda a: depths[a]):
        if asset == g.entry_point:
            continue
        p = parent[asset]
        branches[asset] = asset if p == g.entry_point else branches[p]
    return branches
