"""Single-erasure repair: trace repair with n - 1 sub-symbols, and the naive baseline."""

from __future__ import annotations

from tracerepair.errors import DegenerateInput, RankError
from tracerepair.field import FieldTower
from tracerepair.linalg import TraceBasis, complete_basis, rank
from tracerepair.repair.core import RepairResult, RepairSession, node_id, parse_pattern, repl_id
from tracerepair.rs import RSCode, naive_recover


def helping_trace(F: FieldTower, symbol: int, alpha: int, center: int) -> int:
    """Tr(symbol / (alpha - center)): the one sub-symbol node alpha sends."""
    if alpha == center:
        raise DegenerateInput("helping trace needs alpha != center")
    return F.trace(F.div(symbol, F.sub(alpha, center)))


def repair_single_gw(code: RSCode, received, erasures=None, basis=None) -> RepairResult:
    """Recover one erased symbol from one helping trace per surviving node.

    ``basis`` is the B-basis u_1..u_t of F behind the checks p_{u_i, a*};
    it defaults to the power basis 1, xi, ..., xi^(t-1).
    """
    F = code.tower
    (target,) = parse_pattern(code, received, erasures, {1})
    if basis is None:
        basis = complete_basis(F, []).elements
    basis = list(basis.elements if isinstance(basis, TraceBasis) else basis)
    if len(basis) != F.t or rank(F, basis) != F.t:
        raise RankError("repair basis must have rank t")
    s = RepairSession(code, received, (target,))
    s.download_helping(target, repl_id(target))
    for i, u in enumerate(basis, 1):
        s.extract(target, u, f"p{i}", "single", distributed=False)
    s.finish(target)
    return s.result("gw", basis=[F.format(u) for u in basis])


def repair_naive(code: RSCode, received, erasures=None) -> RepairResult:
    """Download k whole symbols (k t sub-symbols) and interpolate."""
    (target,) = parse_pattern(code, received, erasures, {1}, trace=False)
    s = RepairSession(code, received, (target,))
    value, helpers = naive_recover(code, received, target)
    for pos in helpers:
        s.ledger.record(node_id(pos), repl_id(target), code.tower.t, "download", "whole symbol")
    s.repaired[target] = value
    return s.result("naive")
