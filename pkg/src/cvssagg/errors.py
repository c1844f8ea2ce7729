"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CvssAggError(Exception):
    """Base class for all domain errors raised by cvssagg."""


# -- vector grammar ---------------------------------------------------------


class VectorError(CvssAggError, ValueError):
    pass


class MalformedVector(VectorError):
    def __init__(self, position: int, token: str):
        self.position = position
        self.token = token
        super().__init__(f"unparsable token {token!r} at position {position}")


class MissingMetric(VectorError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"missing base metric {name!r}")


class DuplicateMetric(VectorError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"metric {name!r} given more than once")


class UnsupportedMetricGroup(VectorError):
    """Temporal or environmental metric found in a base vector."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(
            f"metric {name!r} belongs to the temporal/environmental group, "
            "which is not accepted here"
        )


# -- graph construction -----------------------------------------------------


class GraphError(CvssAggError):
    pass


class NoEntryPoint(GraphError):
    def __init__(self, entry: str | None = None):
        self.entry = entry
        if entry:
            msg = f"entry point {entry!r} is not a declared asset"
        else:
            msg = "no entry point given"
        super().__init__(msg)


class UnknownAsset(GraphError):
    def __init__(self, asset: str, where: str = ""):
        self.asset = asset
        self.where = where
        suffix = f" (referenced by {where})" if where else ""
        super().__init__(f"unknown asset {asset!r}{suffix}")


class DuplicateAsset(GraphError):
    def __init__(self, asset: str):
        self.asset = asset
        super().__init__(f"asset {asset!r} declared more than once")


class Unreachable(GraphError):
    def __init__(self, asset: str):
        self.asset = asset
        super().__init__(f"asset {asset!r} is not reachable from the entry point")


class SelfLoop(GraphError):
    def __init__(self, asset: str):
        self.asset = asset
        super().__init__(f"self-loop on asset {asset!r}")


class DuplicateVulnerability(GraphError):
    def __init__(self, cve: str, asset: str):
        self.cve = cve
        self.asset = asset
        super().__init__(f"{cve} attached to {asset!r} more than once")


class ScoreMismatch(GraphError):
    def __init__(self, cve: str, stated: float, computed: float):
        self.cve = cve
        self.stated = stated
        self.computed = computed
        super().__init__(
            f"{cve}: stated base score {stated} but vector scores {computed}"
        )


class InvalidField(GraphError):
    """A record field is missing or has the wrong type or value."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


class ValidationErrors(CvssAggError):
    """Carries every violation found, not only the first one."""

    def __init__(self, errors: list[CvssAggError]):
        self.errors = list(errors)
        lines = "\n".join(f"  - {type(e).__name__}: {e}" for e in self.errors)
        super().__init__(f"{len(self.errors)} validation error(s):\n{lines}")


# -- files ------------------------------------------------------------------


class ParseError(CvssAggError):
    def __init__(self, path: str, message: str, line: int | None = None):
        self.path = path
        self.line = line
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {message}")


class UnknownVector(CvssAggError, ValueError):
    def __init__(self, token: object):
        self.token = token
        super().__init__(f"unknown attack vector {token!r}")


# -- numerics ---------------------------------------------------------------


class DepthOutOfRange(CvssAggError, ValueError):
    def __init__(self, depth: int, max_depth: int):
        self.depth = depth
        self.max_depth = max_depth
        super().__init__(f"depth {depth} outside [1, {max_depth}]")


class EmptyDataset(CvssAggError, ValueError):
    def __init__(self) -> None:
        super().__init__("cannot average an empty list of scores")


class UndefinedAverage(CvssAggError, ValueError):
    def __init__(self, message: str):
        super().__init__(message)
