"""Reading graph/context files and writing aggregation reports.

Graph file (UTF-8 JSON)::

    {
      "entry_point": "webserver.py",
      "assets": [{"id": "webserver.py", "name": "OpenPLC web server"}, ...],
      "edges": [["webserver.py", "openplc"], ...],
      "vulnerabilities": [
        {"cve": "CVE-2017-18269", "asset": "libc",
         "vector": "CVSS:3.1/AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H",
         "base_score": 9.8, "affects_functionality": true,
         "exploit_maturity": "theoretical"}
      ]
    }

``base_score`` is optional; when present it must match the vector.
``exploit_maturity`` is one of none, not_defined, theoretical, poc,
functional, automated.

Context file::

    {"reachable_vectors": ["network", "adjacent"], "description": "..."}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Any

from .aggregate import AggregationResult, Contribution
from .cvss import AttackVector, base_score, parse_vector
from .errors import (
    CvssAggError,
    InvalidField,
    ParseError,
    UnknownVector,
    ValidationErrors,
)
from .factors import AverageKind, DeploymentContext
from .graph import CVE_RE, Asset, Edg, ExploitMaturity, Vulnerability, build_graph

VECTOR_NAMES = {
    "network": AttackVector.NETWORK,
    "adjacent": AttackVector.ADJACENT,
    "local": AttackVector.LOCAL,
    "physical": AttackVector.PHYSICAL,
}

REPORT_KEYS = (
    "vulnerabilities", "sigma", "sigma_kind", "f", "gamma", "gamma_display",
    "degenerate", "clamped_entries", "contributions", "dominant_branch",
)


def _read_json(path: str | Path) -> Any:
    path = str(path)
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(path, f"cannot read file: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.msg, exc.lineno) from None


def _is_str(x: Any) -> bool:
    return isinstance(x, str) and x != ""


def graph_from_dict(doc: Any) -> Edg:
    """Validate a decoded graph document; every problem is reported at once."""
    if not isinstance(doc, dict):
        raise ValidationErrors([InvalidField("document", "top level must be an object")])
    problems: list[CvssAggError] = []

    entry = doc.get("entry_point")
    if not _is_str(entry):
        problems.append(InvalidField("entry_point", "must be a nonempty string"))
        entry = ""

    assets: list[Asset] = []
    raw_assets = doc.get("assets", [])
    if not isinstance(raw_assets, list):
        problems.append(InvalidField("assets", "must be a list"))
        raw_assets = []
    for i, item in enumerate(raw_assets):
        if _is_str(item):
            assets.append(Asset(item))
        elif isinstance(item, dict) and _is_str(item.get("id")):
            name = item.get("name", "")
            if not isinstance(name, str):
                problems.append(InvalidField(f"assets[{i}].name", "must be a string"))
                name = ""
            assets.append(Asset(item["id"], name))
        else:
            problems.append(InvalidField(f"assets[{i}]", "expected {\"id\": <nonempty string>}"))

    edges: list[tuple[str, str]] = []
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        problems.append(InvalidField("edges", "must be a list"))
        raw_edges = []
    for i, item in enumerate(raw_edges):
        if isinstance(item, list) and len(item) == 2 and all(_is_str(x) for x in item):
            edges.append((item[0], item[1]))
        else:
            problems.append(InvalidField(f"edges[{i}]", "expected [from, to] asset ids"))

    vulns: list[Vulnerability] = []
    raw_vulns = doc.get("vulnerabilities", [])
    if not isinstance(raw_vulns, list):
        problems.append(InvalidField("vulnerabilities", "must be a list"))
        raw_vulns = []
    for i, item in enumerate(raw_vulns):
        vuln = _vuln_from_dict(item, f"vulnerabilities[{i}]", problems)
        if vuln is not None:
            vulns.append(vuln)

    try:
        graph = build_graph(entry, assets, edges, vulns)
    except ValidationErrors as exc:
        problems.extend(exc.errors)
        graph = None
    if problems:
        raise ValidationErrors(problems)
    return graph


def _vuln_from_dict(item: Any, where: str, problems: list[CvssAggError]) -> Vulnerability | None:
    if not isinstance(item, dict):
        problems.append(InvalidField(where, "must be an object"))
        return None
    ok = True
    cve = item.get("cve")
    if _is_str(cve):
        where = f"{where} ({cve})"
        if not CVE_RE.match(cve):
            problems.append(InvalidField(where, "cve must look like CVE-YYYY-NNNN"))
            ok = False
    else:
        problems.append(InvalidField(where, "cve must be a nonempty string"))
        ok = False
    asset = item.get("asset")
    if not _is_str(asset):
        problems.append(InvalidField(where, "asset must be a nonempty string"))
        ok = False

    vector = None
    try:
        vector = parse_vector(item.get("vector"))
    except CvssAggError as exc:
        problems.append(InvalidField(where, f"vector: {type(exc).__name__}: {exc}"))
        ok = False

    score = item.get("base_score")
    if score is None:
        score = base_score(vector) if vector is not None else None
    elif isinstance(score, bool) or not isinstance(score, (int, float)):
        problems.append(InvalidField(where, "base_score must be a number"))
        ok = False
    else:
        score = float(score)

    flag = item.get("affects_functionality")
    if not isinstance(flag, bool):
        problems.append(InvalidField(where, "affects_functionality must be true or false"))
        ok = False

    try:
        maturity = ExploitMaturity(item.get("exploit_maturity"))
    except ValueError:
        allowed = ", ".join(m.value for m in ExploitMaturity)
        problems.append(InvalidField(where, f"exploit_maturity must be one of {allowed}"))
        ok = False

    if not ok:
        return None
    return Vulnerability(cve, vector, score, maturity, flag, asset)


def load_graph(path: str | Path) -> Edg:
    return graph_from_dict(_read_json(path))


def context_from_dict(doc: Any, source: str = "<context>") -> DeploymentContext:
    if not isinstance(doc, dict) or not isinstance(doc.get("reachable_vectors"), list):
        raise ParseError(source, "expected an object with a \"reachable_vectors\" list")
    vectors = set()
    for token in doc["reachable_vectors"]:
        av = VECTOR_NAMES.get(token) if isinstance(token, str) else None
        if av is None:
            raise UnknownVector(token)
        vectors.add(av)
    description = doc.get("description", "")
    if not isinstance(description, str):
        raise ParseError(source, "description must be a string")
    return DeploymentContext(frozenset(vectors), description)


def load_context(path: str | Path) -> DeploymentContext:
    return context_from_dict(_read_json(path), str(path))


# -- report -----------------------------------------------------------------


@dataclass(frozen=True)
class ReportRow:
    cve: str
    asset: str
    base_score: float
    attack_vector: str
    rho: int
    beta: float
    gamma: int
    mu: float
    lam: float
    corrected: float
    clamped: bool


@dataclass(frozen=True)
class Report:
    rows: tuple[ReportRow, ...]
    result: AggregationResult
    sigma_kind: AverageKind = AverageKind.ARITHMETIC

    def to_dict(self) -> dict[str, Any]:
        r = self.result
        return {
            "vulnerabilities": [
                {
                    "cve": row.cve,
                    "asset": row.asset,
                    "base_score": row.base_score,
                    "attack_vector": row.attack_vector,
                    "rho": row.rho,
                    "beta": row.beta,
                    "gamma": row.gamma,
                    "mu": row.mu,
                    "lambda": row.lam,
                    "corrected": row.corrected,
                    "clamped": row.clamped,
                }
                for row in self.rows
            ],
            "sigma": r.sigma,
            "sigma_kind": self.sigma_kind.value,
            "f": r.f_value,
            "gamma": r.gamma_score,
            "gamma_display": r.gamma_display,
            "gamma_literal": r.gamma_literal,
            "gamma_clamped": r.gamma_clamped,
            "degenerate": r.degenerate,
            "clamped_entries": list(r.clamped_entries),
            "contributions": [
                {"cve": c.cve, "asset": c.asset, "corrected": c.corrected, "share": c.share}
                for c in r.contributions
            ],
            "dominant_branch": r.dominant_branch,
            "branch_scores": dict(r.branch_scores),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Report":
        rows = tuple(
            ReportRow(
                cve=v["cve"], asset=v["asset"], base_score=v["base_score"],
                attack_vector=v["attack_vector"], rho=v["rho"], beta=v["beta"],
                gamma=v["gamma"], mu=v["mu"], lam=v["lambda"],
                corrected=v["corrected"], clamped=v["clamped"],
            )
            for v in d["vulnerabilities"]
        )
        kind = AverageKind(d["sigma_kind"])
        result = AggregationResult(
            f_value=d["f"],
            gamma_score=d["gamma"],
            gamma_display=d["gamma_display"],
            sigma=d["sigma"],
            sigma_kind=kind if d["sigma"] is not None else None,
            contributions=tuple(
                Contribution(c["cve"], c["asset"], c["corrected"], c["share"])
                for c in d["contributions"]
            ),
            dominant_branch=d["dominant_branch"],
            degenerate=d["degenerate"],
            clamped_entries=tuple(d["clamped_entries"]),
            gamma_literal=d.get("gamma_literal"),
            gamma_clamped=d.get("gamma_clamped", False),
            branch_scores=dict(d.get("branch_scores", {})),
        )
        return cls(rows, result, kind)


def fmt3(x: float) -> str:
    """Up to three decimals, half-up, trailing zeros dropped (0.3125 -> 0.313)."""
    q = Decimal(repr(float(x))).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP)
    s = f"{q:f}"
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


_COLUMNS = ("CVE", "CVSS", "AV", "rho", "beta", "gamma", "mu", "lambda", "corrected")


def render_text(report: Report, explain: bool = False) -> str:
    r = report.result
    body = [
        [row.cve, fmt3(row.base_score), row.attack_vector, str(row.rho), fmt3(row.beta),
         str(row.gamma), fmt3(row.mu), fmt3(row.lam), fmt3(row.corrected) + ("*" if row.clamped else "")]
        for row in report.rows
    ]
    widths = [max(len(c) for c in col) for col in zip(_COLUMNS, *body)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() for line in [_COLUMNS, *body]]
    lines.insert(1, "  ".join("-" * w for w in widths))
    if any(row.clamped for row in report.rows):
        lines.append("* corrected value above 10, set to 10")
    lines.append("")

    if explain:
        live = sum(1 for row in report.rows if row.corrected > 0)
        lines.append("steps:")
        lines.append("  1. correction factors rho, beta, gamma, mu per vulnerability (table above)")
        lines.append("  2. lambda = rho * beta * gamma * mu")
        lines.append("  3. corrected = min(lambda * CVSS, 10)")
        lines.append(f"  4. sigma = {report.sigma_kind.value} mean of all {len(report.rows)} initial scores")
        lines.append(f"  5. f = Bayesian sum of {live} nonzero corrected score(s); aggregated = 10 - f / sigma")
        lines.append("")
        lines.append("contributions:")
        if not r.contributions:
            lines.append("  (none)")
        for c in r.contributions:
            lines.append(f"  {c.cve:<16} {c.asset:<16} {fmt3(c.corrected):>7}  {100 * c.share:5.1f}%")
        if r.branch_scores:
            lines.append("branches:")
            for b, s in r.branch_scores.items():
                lines.append(f"  {b:<24} {fmt3(s)}")
        lines.append(f"dominant branch = {r.dominant_branch or '-'}")
        lines.append("")

    if r.sigma is not None:
        lines.append(f"sigma ({report.sigma_kind.value}) = {fmt3(r.sigma)}")
    lines.append(f"f = {fmt3(r.f_value)}")
    lines.append(f"aggregated = {r.gamma_display}")
    if r.degenerate:
        literal = "n/a" if r.gamma_literal is None else fmt3(r.gamma_literal)
        lines.append(f"(degenerate: no vulnerability contributes; literal formula value {literal})")
    elif r.gamma_clamped:
        lines.append(f"(clamped to [0, 10]; literal formula value {fmt3(r.gamma_literal)})")
    return "\n".join(lines) + "\n"


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def render_report(report: Report, fmt: str = "json", explain: bool = False) -> bytes:
    if fmt == "json":
        return render_json(report).encode("utf-8")
    if fmt == "text":
        return render_text(report, explain).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report(data: bytes | str) -> Report:
    return Report.from_dict(json.loads(data))
