"""Trace repair of full-length Reed-Solomon codes over a field tower F / B."""

from tracerepair.analysis import count_correctable, repair_lower_bound, scheme_table, threshold_report
from tracerepair.field import FieldTower, field_tower
from tracerepair.linalg import (
    Subspace,
    TraceBasis,
    b_coords,
    complete_basis,
    dual_basis,
    express_in_span,
    root_space,
    trace_kernel,
    triple_root_space,
)
from tracerepair.repair import (
    SCHEMES,
    RepairResult,
    helping_trace,
    is_correctable_triple,
    repair_naive,
    repair_single_gw,
    repair_three_centralized,
    repair_three_distributed,
    repair_three_fallback,
    repair_two_centralized,
    repair_two_distributed_I,
    repair_two_distributed_II,
)
from tracerepair.rs import CheckVector, RSCode, check_vector, naive_repair, verify_dual

__all__ = [
    "CheckVector",
    "FieldTower",
    "RSCode",
    "RepairResult",
    "SCHEMES",
    "Subspace",
    "TraceBasis",
    "b_coords",
    "check_vector",
    "complete_basis",
    "count_correctable",
    "dual_basis",
    "express_in_span",
    "field_tower",
    "helping_trace",
    "is_correctable_triple",
    "naive_repair",
    "repair_lower_bound",
    "repair_naive",
    "repair_single_gw",
    "repair_three_centralized",
    "repair_three_distributed",
    "repair_three_fallback",
    "repair_two_centralized",
    "repair_two_distributed_I",
    "repair_two_distributed_II",
    "root_space",
    "scheme_table",
    "threshold_report",
    "trace_kernel",
    "triple_root_space",
    "verify_dual",
]
