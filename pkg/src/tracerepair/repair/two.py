"""Two-erasure repair schemes for erased positions a* and a-bar.

* distributed I: repair a* with n - 2 + k sub-symbols, then a-bar by the
  single-erasure scheme (the repaired a* acts as a helper); any t.
* centralized: one center downloads two helping traces per survivor,
  2(n - 2) in total; needs char(F) | t.
* distributed II: each replacement downloads n - 2 helping traces and the two
  replacements swap one computed sub-symbol, 2(n - 1) in total; needs char(F) | t.
"""

from __future__ import annotations

from tracerepair.errors import DegenerateInput, DivisibilityError
from tracerepair.linalg import complete_basis, root_space
from tracerepair.repair.core import CENTER, RepairResult, RepairSession, TraceRecord, node_id, parse_pattern, repl_id
from tracerepair.rs import RSCode


def _split_basis(code: RSCode, a: int, b: int) -> tuple[int, ...]:
    """Basis of the root space K_{a,b} completed to a basis of F."""
    F = code.tower
    U = root_space(F, code.point(a), code.point(b))
    return complete_basis(F, U).elements


def repair_two_distributed_I(code: RSCode, received, erasures=None) -> RepairResult:
    F, pts = code.tower, code.points
    a, b = parse_pattern(code, received, erasures, {2})
    if F.t < 2:
        raise DegenerateInput("two-erasure trace repair needs t >= 2")
    s = RepairSession(code, received, (a, b))
    basis = _split_basis(code, a, b)
    s.download_helping(a, repl_id(a))
    for i, u in enumerate(basis[:-1], 1):
        s.extract(a, u, f"p{i}", "phase1", distributed=False)

    # p_t = (u_t / u_1) p_1 vanishes wherever p_1 does, in particular at a-bar.
    # Its equation needs Tr((u_t/u_1) f(x)/(x - a*)) from each x in the support of p_1.
    u1, ut = basis[0], basis[-1]
    scale = F.div(ut, u1)
    total, combo = 0, {}
    for pos in s.survivors:
        coef = F.trace(F.mul(u1, F.sub(pts[pos], pts[a])))
        if coef == 0:
            continue
        g = F.trace(F.div(F.mul(scale, received[pos]), F.sub(pts[pos], pts[a])))
        s.ledger.record(node_id(pos), repl_id(a), 1, "download", "extra trace")
        s.inputs[("g", pos, a)] = g
        total = F.sub(total, F.mul(coef, g))
        combo[("g", pos, a)] = F.neg(coef)
    s.known[a].add(ut, total, combo)
    s.transcript.append(TraceRecord(f"p{F.t}", a, ut, total, total, "phase1", (), tuple(sorted(combo.items()))))
    s.finish(a)
    phase1 = s.ledger.total

    power = complete_basis(F, []).elements
    s.download_helping(b, repl_id(b), sources=[x for x in range(code.n) if x != b])
    for i, v in enumerate(power, 1):
        s.extract(b, v, f"q{i}", "phase2", distributed=False)
    s.finish(b)
    return s.result("dist1", phase1=phase1, phase2=s.ledger.total - phase1)


def _two_trace(code: RSCode, received, erasures, distributed: bool) -> RepairResult:
    F = code.tower
    a, b = parse_pattern(code, received, erasures, {2})
    if not F.char_divides_t():
        raise DivisibilityError(f"characteristic {F.p} does not divide t={F.t}")
    s = RepairSession(code, received, (a, b))
    # K_{a,b} = K_{b,a}, so one completed basis serves both U' and V'
    basis = _split_basis(code, a, b)
    if distributed:
        s.download_helping(a, repl_id(a))
        s.download_helping(b, repl_id(b))
    else:
        s.download_helping(a, CENTER)
        s.download_helping(b, CENTER)
    for i, u in enumerate(basis[:-1], 1):
        s.extract(a, u, f"p{i}", "independent", distributed)
    for i, v in enumerate(basis[:-1], 1):
        s.extract(b, v, f"q{i}", "independent", distributed)
    t = F.t
    s.extract(a, basis[-1], f"p{t}", "canceled", distributed)
    s.extract(b, basis[-1], f"q{t}", "canceled", distributed)
    s.finish(a)
    s.finish(b)
    return s.result("dist2" if distributed else "central2", basis=[F.format(u) for u in basis])


def repair_two_centralized(code: RSCode, received, erasures=None) -> RepairResult:
    return _two_trace(code, received, erasures, distributed=False)


def repair_two_distributed_II(code: RSCode, received, erasures=None) -> RepairResult:
    return _two_trace(code, received, erasures, distributed=True)
