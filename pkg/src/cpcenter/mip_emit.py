"""LP-format emitters for the single-p location-allocation models.

Two variants: the full model (budget, assignment, linking and distance
constraints over every demand-site pair) and the trimmed one, which
drops every assignment variable whose distance exceeds a known upper
bound on z_p while keeping the optimum intact. Emission is textual and
byte-deterministic; solving is left to whatever external MIP solver the
user points at the file.

Variable naming: ``x_i_j`` assigns demand i to site j, ``y_j`` opens
site j, ``z`` is the covering radius. Ordering is i-major, then j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentOutOfRange, NonPositiveUB, POutOfRange
from .geometry import INTEGER, DistanceMatrix

_WRAP = 12  # terms per line inside a constraint


@dataclass(frozen=True)
class ModelSize:
    binaries: int
    continuous: int
    constraints: int


def model_size(n: int, m: int, ub_pair_count: int | None = None) -> ModelSize:
    """Variable/constraint counts: nm+m binaries and nm+2n+1 rows for the
    full model; with trimming, nm shrinks to the surviving pair count."""
    if n < 1 or m < 1:
        raise ArgumentOutOfRange(f"need n, m >= 1, got n={n}, m={m}")
    pairs = n * m if ub_pair_count is None else ub_pair_count
    return ModelSize(binaries=pairs + m, continuous=1, constraints=pairs + 2 * n + 1)


def _distances(dm: DistanceMatrix) -> np.ndarray:
    """Plain distances in coordinate units; the one square-root site of
    this module (LP coefficients must be real radii, not squares)."""
    if dm.mode == INTEGER:
        return dm.d_int
    return np.sqrt(dm.sq)


def _num(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _wrap_terms(label: str, terms: list[str], tail: str) -> list[str]:
    lines = []
    head = f" {label}: "
    for pos in range(0, len(terms), _WRAP):
        chunk = terms[pos : pos + _WRAP]
        joined = " + ".join(chunk)
        if pos == 0:
            lines.append(head + joined)
        else:
            lines.append("   + " + joined)
    lines[-1] += f" {tail}"
    return lines


def _emit(dm: DistanceMatrix, p: int, keep: np.ndarray, header: str) -> str:
    n = m = dm.m
    d = _distances(dm)
    out = [header, "Minimize", " obj: z", "Subject To"]

    out.extend(_wrap_terms("budget", [f"y_{j}" for j in range(m)], f"<= {p}"))
    for i in range(n):
        cols = [f"x_{i}_{j}" for j in range(m) if keep[i, j]]
        out.extend(_wrap_terms(f"assign_{i}", cols, "= 1"))
    for i in range(n):
        for j in range(m):
            if keep[i, j]:
                out.append(f" link_{i}_{j}: x_{i}_{j} - y_{j} <= 0")
    for i in range(n):
        terms = [
            f"{_num(d[i, j])} x_{i}_{j}"
            for j in range(m)
            if keep[i, j] and d[i, j] != 0
        ]
        if terms:
            out.extend(_wrap_terms(f"dist_{i}", terms, "- z <= 0"))
        else:
            out.append(f" dist_{i}: - z <= 0")

    out.append("Bounds")
    out.append(" z >= 0")
    out.append("Binaries")
    names = [f"x_{i}_{j}" for i in range(n) for j in range(m) if keep[i, j]]
    names.extend(f"y_{j}" for j in range(m))
    for pos in range(0, len(names), _WRAP):
        out.append(" " + " ".join(names[pos : pos + _WRAP]))
    out.append("End")
    return "\n".join(out) + "\n"


def emit_cpc_mip(dm: DistanceMatrix, p: int) -> str:
    """Full single-p model in LP format.

    Rows: one facility budget, one assignment row per demand, one
    linking row per demand-site pair, one distance row per demand.
    Zero-distance terms are omitted from distance rows (their
    coefficient is zero); the variables still exist everywhere else.
    """
    if not 1 <= p <= dm.m:
        raise POutOfRange(f"p must be 1..{dm.m}, got {p}")
    keep = np.ones((dm.m, dm.m), dtype=bool)
    header = f"\\ p-center model: instance={dm.name or 'unnamed'} n={dm.m} m={dm.m} p={p}"
    return _emit(dm, p, keep, header)


def emit_cpc_mipub(dm: DistanceMatrix, p: int, ub) -> str:
    """Trimmed single-p model: pairs with d_ij > ub are dropped entirely.

    Valid bounds come from an already solved larger radius (z_{p-1} is
    always safe); an arbitrary too-small ub yields a model that is
    simply infeasible, which is the caller's lookout. ub is in
    coordinate units. Self-assignments always survive (d_ii = 0).
    """
    if not 1 <= p <= dm.m:
        raise POutOfRange(f"p must be 1..{dm.m}, got {p}")
    if ub < 0:
        raise NonPositiveUB(f"upper bound must be >= 0, got {ub!r}")
    keep = _distances(dm) <= ub
    header = (
        f"\\ p-center model (ub-trimmed): instance={dm.name or 'unnamed'} "
        f"n={dm.m} m={dm.m} p={p} ub={_num(ub)}"
    )
    return _emit(dm, p, keep, header)


def pair_count(dm: DistanceMatrix, ub) -> int:
    """Number of demand-site pairs surviving an upper-bound trim."""
    return int((_distances(dm) <= ub).sum())
