"""Trade-off curve containers: one record per facility count p."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import IncompleteCurve
from .geometry import REAL

SOURCES = ("trivial", "enumeration", "lscp", "external")


@dataclass(frozen=True)
class CurveRecord:
    """One solved point of the curve.

    ``z`` is the covering radius in coordinate units (an int for
    integer-mode curves). ``z_sq`` keeps the exact squared value in real
    mode so verification can compare against the distance ladder without
    round-tripping through a square root.
    """

    p: int
    z: float | int
    facilities: tuple[int, ...] | None
    source: str
    z_sq: float | None = None

    @property
    def key(self):
        """The record's value in comparison space (squared real or int)."""
        return self.z_sq if self.z_sq is not None else self.z


@dataclass(frozen=True)
class TradeoffCurve:
    """Complete solution set: exactly one record for each p = 1..m."""

    instance: str
    mode: str
    records: tuple[CurveRecord, ...]
    iterations: int = field(default=0, compare=False)

    def __post_init__(self):
        m = len(self.records)
        got = [r.p for r in self.records]
        if got != list(range(1, m + 1)):
            missing = sorted(set(range(1, m + 1)) - set(got))
            raise IncompleteCurve(f"records must cover p = 1..m once each; missing {missing}")

    @property
    def m(self) -> int:
        return len(self.records)

    def record(self, p: int) -> CurveRecord:
        return self.records[p - 1]


def make_record(p: int, key, facilities, source: str, mode: str) -> CurveRecord:
    """Build a record from a comparison-space value.

    This is the output boundary for real-mode curves: the one square
    root per record happens here.
    """
    fac = None if facilities is None else tuple(int(j) for j in facilities)
    if mode == REAL:
        return CurveRecord(p=p, z=math.sqrt(key), facilities=fac, source=source, z_sq=float(key))
    return CurveRecord(p=p, z=int(key), facilities=fac, source=source, z_sq=None)
