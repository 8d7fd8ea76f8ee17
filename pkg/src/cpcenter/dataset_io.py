"""Instance parsing and result serialization.

Inputs: the EUC_2D subset of TSPLIB, and plain whitespace xy tables
(``x y`` or ``id x y [weight]`` rows). Outputs: curve CSV, a versioned
curve JSON schema, and a dependency-free SVG frontier plot.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .curve import CurveRecord, TradeoffCurve
from .errors import (
    DimensionMismatch,
    EmptyInstance,
    IncompleteCurve,
    MalformedRow,
    SchemaMismatch,
    UnsupportedEdgeWeightType,
)
from .geometry import INTEGER, REAL, PointSet, build_point_set

JSON_SCHEMA_VERSION = 1


def parse_tsplib(text: str, *, allow_non_euclidean: bool = False) -> PointSet:
    """Parse a TSPLIB file with a NODE_COORD_SECTION.

    Only EDGE_WEIGHT_TYPE EUC_2D (or omitted) is accepted; anything else
    (GEO, EXPLICIT, ATT, ...) raises UnsupportedEdgeWeightType unless
    ``allow_non_euclidean`` forces the coordinates to be read as planar.
    File node ids are 1-based and arbitrary; points keep file order and
    get 0-based indices.
    """
    name = ""
    dimension = None
    edge_type = None
    coords = []
    in_nodes = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line == "EOF":
            break
        if not in_nodes:
            if line.startswith("NODE_COORD_SECTION"):
                in_nodes = True
                continue
            key, _, value = line.partition(":")
            key = key.strip()
            value = value.strip()
            if key == "NAME":
                name = value
            elif key == "DIMENSION":
                try:
                    dimension = int(value)
                except ValueError:
                    raise MalformedRow(f"line {lineno}: bad DIMENSION {value!r}")
            elif key == "EDGE_WEIGHT_TYPE":
                edge_type = value
            continue
        parts = line.split()
        if len(parts) != 3:
            raise MalformedRow(f"line {lineno}: expected 'id x y', got {raw!r}")
        try:
            coords.append((float(parts[1]), float(parts[2])))
        except ValueError:
            raise MalformedRow(f"line {lineno}: non-numeric coordinate in {raw!r}")

    if edge_type is not None and edge_type != "EUC_2D" and not allow_non_euclidean:
        raise UnsupportedEdgeWeightType(
            f"EDGE_WEIGHT_TYPE {edge_type} is not planar Euclidean; "
            "pass the override to read the coordinates as planar anyway"
        )
    if not in_nodes:
        raise MalformedRow("no NODE_COORD_SECTION found")
    if dimension is None:
        raise DimensionMismatch("DIMENSION header missing")
    if len(coords) != dimension:
        raise DimensionMismatch(f"DIMENSION says {dimension}, file has {len(coords)} nodes")
    return build_point_set(coords, name=name)


def parse_xy_table(text: str, name: str = "") -> PointSet:
    """Parse a whitespace-delimited coordinate table.

    Rows are ``x y``, ``id x y`` or ``id x y weight``, detected from the
    first data row's column count; the whole file must be consistent.
    Blank lines and ``#`` comments are skipped. Weights are parsed and
    discarded.
    """
    coords = []
    ncols = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if ncols is None:
            if len(parts) not in (2, 3, 4):
                raise MalformedRow(f"line {lineno}: expected 2-4 columns, got {len(parts)}")
            ncols = len(parts)
        elif len(parts) != ncols:
            raise MalformedRow(f"line {lineno}: expected {ncols} columns, got {len(parts)}")
        xy = parts if ncols == 2 else parts[1:3]
        try:
            coords.append((float(xy[0]), float(xy[1])))
        except ValueError:
            raise MalformedRow(f"line {lineno}: non-numeric coordinate in {raw!r}")
    if not coords:
        raise EmptyInstance("no data rows")
    return build_point_set(coords, name=name)


def load_instance(path, fmt: str = "auto", *, geo_override: bool = False) -> PointSet:
    """Read an instance file, sniffing TSPLIB vs xy table when fmt='auto'."""
    path = Path(path)
    text = path.read_text()
    if fmt == "auto":
        fmt = "tsplib" if "NODE_COORD_SECTION" in text else "xy"
    if fmt == "tsplib":
        ps = parse_tsplib(text, allow_non_euclidean=geo_override)
    elif fmt == "xy":
        ps = parse_xy_table(text)
    else:
        raise ValueError(f"unknown input format {fmt!r}")
    if not ps.name:
        ps = PointSet(points=ps.points, name=path.stem)
    return ps


def _check_complete(curve: TradeoffCurve):
    ps = [r.p for r in curve.records]
    if ps != list(range(1, curve.m + 1)):
        raise IncompleteCurve("curve must hold p = 1..m in ascending order")


def _format_z(z, mode: str) -> str:
    return f"{z:.6f}" if mode == REAL else str(int(z))


def write_curve_csv(curve: TradeoffCurve) -> str:
    """Render the curve as ``p,z,facilities,source`` text.

    Real-mode radii are fixed at 6 decimals; integer-mode radii print as
    plain integers. Facilities are ';'-joined site indices.
    """
    _check_complete(curve)
    lines = ["p,z,facilities,source"]
    for r in curve.records:
        fac = "" if r.facilities is None else ";".join(str(j) for j in r.facilities)
        lines.append(f"{r.p},{_format_z(r.z, curve.mode)},{fac},{r.source}")
    return "\n".join(lines) + "\n"


def write_curve_json(curve: TradeoffCurve) -> str:
    """Serialize losslessly: floats keep their shortest round-trip form."""
    _check_complete(curve)
    doc = {
        "schema": JSON_SCHEMA_VERSION,
        "instance": curve.instance,
        "m": curve.m,
        "mode": curve.mode,
        "records": [
            {
                "p": r.p,
                "z": r.z,
                "z_sq": r.z_sq,
                "facilities": None if r.facilities is None else list(r.facilities),
                "source": r.source,
            }
            for r in curve.records
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def read_curve_json(text: str) -> TradeoffCurve:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaMismatch(f"not valid JSON: {e}")
    if not isinstance(doc, dict) or doc.get("schema") != JSON_SCHEMA_VERSION:
        raise SchemaMismatch(f"expected schema {JSON_SCHEMA_VERSION}, got {doc.get('schema')!r}")
    try:
        mode = doc["mode"]
        records = tuple(
            CurveRecord(
                p=int(r["p"]),
                z=(int(r["z"]) if mode == INTEGER else float(r["z"])),
                facilities=None if r["facilities"] is None else tuple(int(j) for j in r["facilities"]),
                source=r["source"],
                z_sq=None if r["z_sq"] is None else float(r["z_sq"]),
            )
            for r in doc["records"]
        )
        curve = TradeoffCurve(instance=doc["instance"], mode=mode, records=records)
        if curve.m != int(doc["m"]):
            raise SchemaMismatch(f"m field says {doc['m']}, records hold {curve.m}")
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaMismatch(f"malformed curve document: {e}")
    return curve


@dataclass(frozen=True)
class SvgOptions:
    width: int = 840
    height: int = 560
    margin: int = 70
    mark_radius: float = 3.0
    step_line: bool = True


def _ticks(vmax: float, n: int = 6) -> list[float]:
    """Round tick positions covering [0, vmax], deterministic."""
    if vmax <= 0:
        return [0.0, 1.0]
    raw = vmax / n
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = mag * mult
        if step >= raw:
            break
    k = int(math.floor(vmax / step)) + 1
    return [i * step for i in range(k + 1)]


def render_curve_svg(curve: TradeoffCurve, options: SvgOptions | None = None) -> str:
    """Plot the (p, z_p) frontier as standalone SVG 1.1 text.

    One mark per record, an optional staircase line, and the two region
    annotations: full coverage is achievable above the curve (set
    covering region), only partial coverage below it (maximal covering
    region). Output is byte-deterministic for fixed curve and options.
    """
    _check_complete(curve)
    o = options or SvgOptions()
    m = curve.m
    zmax = max(float(r.z) for r in curve.records)
    if zmax <= 0:
        zmax = 1.0
    pw = o.width - 2 * o.margin
    ph = o.height - 2 * o.margin
    pmax = float(max(m, 2))
    yscale = zmax * 1.05

    def X(p: float) -> float:
        return o.margin + (p - 1.0) / (pmax - 1.0) * pw

    def Y(z: float) -> float:
        return o.height - o.margin - z / yscale * ph

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{o.width}" height="{o.height}" viewBox="0 0 {o.width} {o.height}">'
    )
    title = f"{curve.instance or 'instance'} ({curve.mode} distances)"
    out.append(f"<title>{title}</title>")
    out.append(f'<rect x="0" y="0" width="{o.width}" height="{o.height}" fill="white"/>')
    ax = "stroke:#333;stroke-width:1"
    out.append(f'<line x1="{o.margin}" y1="{o.height - o.margin}" x2="{o.width - o.margin}" y2="{o.height - o.margin}" style="{ax}"/>')
    out.append(f'<line x1="{o.margin}" y1="{o.margin}" x2="{o.margin}" y2="{o.height - o.margin}" style="{ax}"/>')

    for t in _ticks(pmax):
        if t < 1 or t > pmax:
            continue
        x = X(t)
        out.append(f'<line x1="{x:.2f}" y1="{o.height - o.margin}" x2="{x:.2f}" y2="{o.height - o.margin + 5}" style="{ax}"/>')
        out.append(f'<text x="{x:.2f}" y="{o.height - o.margin + 20}" font-size="12" text-anchor="middle">{t:g}</text>')
    for t in _ticks(yscale):
        if t > yscale:
            continue
        y = Y(t)
        out.append(f'<line x1="{o.margin - 5}" y1="{y:.2f}" x2="{o.margin}" y2="{y:.2f}" style="{ax}"/>')
        out.append(f'<text x="{o.margin - 8}" y="{y + 4:.2f}" font-size="12" text-anchor="end">{t:g}</text>')

    out.append(
        f'<text x="{o.margin + pw / 2:.2f}" y="{o.height - o.margin + 45}" font-size="14" '
        f'text-anchor="middle">number of facilities p</text>'
    )
    out.append(
        f'<text x="20" y="{o.margin + ph / 2:.2f}" font-size="14" text-anchor="middle" '
        f'transform="rotate(-90 20 {o.margin + ph / 2:.2f})">covering radius z_p</text>'
    )
    out.append(f'<text x="{o.margin + pw / 2:.2f}" y="{o.margin - 40}" font-size="15" text-anchor="middle">{title}</text>')

    out.append(
        f'<text x="{o.margin + pw * 0.62:.2f}" y="{o.margin + ph * 0.22:.2f}" font-size="13" '
        f'fill="#666" text-anchor="middle">set covering region</text>'
    )
    out.append(
        f'<text x="{o.margin + pw * 0.18:.2f}" y="{o.margin + ph * 0.88:.2f}" font-size="13" '
        f'fill="#666" text-anchor="middle">maximal covering region</text>'
    )

    if o.step_line and m > 1:
        pts = []
        prev_y = None
        for r in curve.records:
            x, y = X(r.p), Y(float(r.z))
            if prev_y is not None:
                pts.append(f"{x:.2f},{prev_y:.2f}")
            pts.append(f"{x:.2f},{y:.2f}")
            prev_y = y
        out.append(f'<polyline points="{" ".join(pts)}" fill="none" style="stroke:#7aa6c2;stroke-width:1"/>')

    for r in curve.records:
        out.append(
            f'<circle class="mark" cx="{X(r.p):.2f}" cy="{Y(float(r.z)):.2f}" '
            f'r="{o.mark_radius:g}" fill="#1f5fa8"/>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"
