"""Trace-repair schemes for one, two and three erasures."""

from tracerepair.repair.core import BandwidthLedger, RepairResult, TraceRecord, Transfer
from tracerepair.repair.single import helping_trace, repair_naive, repair_single_gw
from tracerepair.repair.three import (
    activation_index,
    correctable_mask,
    is_correctable_triple,
    repair_three_centralized,
    repair_three_distributed,
    repair_three_fallback,
)
from tracerepair.repair.two import repair_two_centralized, repair_two_distributed_I, repair_two_distributed_II

SCHEMES = {
    "naive": repair_naive,
    "gw": repair_single_gw,
    "dist1": repair_two_distributed_I,
    "central2": repair_two_centralized,
    "dist2": repair_two_distributed_II,
    "central3": repair_three_centralized,
    "dist3": repair_three_distributed,
}

__all__ = [
    "BandwidthLedger",
    "RepairResult",
    "SCHEMES",
    "TraceRecord",
    "Transfer",
    "activation_index",
    "correctable_mask",
    "helping_trace",
    "is_correctable_triple",
    "repair_naive",
    "repair_single_gw",
    "repair_three_centralized",
    "repair_three_distributed",
    "repair_three_fallback",
    "repair_two_centralized",
    "repair_two_distributed_I",
    "repair_two_distributed_II",
]
