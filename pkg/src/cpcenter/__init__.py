"""Exact solver for the complete vertex p-center problem.

Computes the minimax covering radius z_p for every facility count
p = 1..m over a finite planar point set, with certificates, plus
LP-format emitters for the classical single-p models.
"""

from .cpc import (
    binomial,
    enumerate_center,
    integer_sandwich,
    solve_cpc_lscp,
    solve_cpc_lscp_e,
    solve_p1,
    solve_single_p,
    trivial_tail,
    verify_curve,
)
from .curve import CurveRecord, TradeoffCurve
from .dataset_io import (
    SvgOptions,
    load_instance,
    parse_tsplib,
    parse_xy_table,
    read_curve_json,
    render_curve_svg,
    write_curve_csv,
    write_curve_json,
)
from .geometry import (
    INTEGER,
    REAL,
    DistanceLadder,
    DistanceMatrix,
    PointSet,
    build_point_set,
    integer_ceiling_matrix,
    squared_distance_matrix,
    unique_distance_ladder,
)
from .mip_emit import ModelSize, emit_cpc_mip, emit_cpc_mipub, model_size
from .setcover import (
    CoverageMatrix,
    CoverSolution,
    coverage_matrix,
    disjoint_rows_bound,
    extend_coverage,
    greedy_cover,
    reduce,
    solve_lscp,
)

__version__ = "0.1.0"

__all__ = [
    "CoverSolution",
    "CoverageMatrix",
    "CurveRecord",
    "DistanceLadder",
    "DistanceMatrix",
    "INTEGER",
    "ModelSize",
    "PointSet",
    "REAL",
    "SvgOptions",
    "TradeoffCurve",
    "binomial",
    "build_point_set",
    "coverage_matrix",
    "disjoint_rows_bound",
    "emit_cpc_mip",
    "emit_cpc_mipub",
    "enumerate_center",
    "extend_coverage",
    "greedy_cover",
    "integer_ceiling_matrix",
    "integer_sandwich",
    "load_instance",
    "model_size",
    "parse_tsplib",
    "parse_xy_table",
    "read_curve_json",
    "reduce",
    "render_curve_svg",
    "solve_cpc_lscp",
    "solve_cpc_lscp_e",
    "solve_lscp",
    "solve_p1",
    "solve_single_p",
    "squared_distance_matrix",
    "trivial_tail",
    "unique_distance_ladder",
    "verify_curve",
    "write_curve_csv",
    "write_curve_json",
]
