"""Three-erasure repair for erased positions a = a*, b = a-bar, c = a'.

Round I downloads three helping traces per survivor (one per erased
position) and extracts s = dim K_{a,b,c} traces of each erased symbol from
checks that exclude the other two.

When s = t - 2, Round II adds two traces per symbol through two repair
cycles.  The slots are

    P1 = p_{u_{s+1}, a} (involves c)    P2 = p_{u_{s+2}, a} (involves b)
    Q1 = p_{v_{s+1}, b} (involves a)    Q2 = p_{v_{s+2}, b} (involves c)
    R1 = p_{w_{s+1}, c} (involves b)    R2 = p_{w_{s+2}, c} (involves a)

and the rings R1 -> P1 -> Q1 and Q2 -> P2 -> R2 each turn one extracted
trace into the next.  One slot per ring is activated straight from Round I
when a ratio of pairwise differences has zero trace.

When s = t - 1 all three root spaces coincide, Round II has nothing to add
and Round III supplies the last trace of each symbol.
"""

from __future__ import annotations

import numpy as np

from tracerepair.errors import DegenerateInput, DivisibilityError, NotCorrectable
from tracerepair.field import FieldTower
from tracerepair.linalg import Subspace, rank, root_space, triple_root_space
from tracerepair.repair.core import CENTER, RepairResult, RepairSession, Transfer, node_id, parse_pattern, repl_id
from tracerepair.repair.two import repair_two_centralized, repair_two_distributed_I
from tracerepair.rs import RSCode, naive_recover

RATIO_NAMES = ("(b-a)/(b-c)", "(c-b)/(c-a)", "(a-c)/(a-b)")


def correctable_ratios(F: FieldTower, a: int, b: int, c: int) -> tuple[int, int, int]:
    if len({a, b, c}) != 3:
        raise DegenerateInput("three distinct points required")
    return (
        F.div(F.sub(b, a), F.sub(b, c)),
        F.div(F.sub(c, b), F.sub(c, a)),
        F.div(F.sub(a, c), F.sub(a, b)),
    )


def activation_index(F: FieldTower, a: int, b: int, c: int) -> int | None:
    """Index (0, 1, 2) of the first ratio with zero trace, or None."""
    for i, r in enumerate(correctable_ratios(F, a, b, c)):
        if F.trace(r) == 0:
            return i
    return None


def is_correctable_triple(F: FieldTower, a: int, b: int, c: int) -> bool:
    """True iff one of (b-a)/(b-c), (c-b)/(c-a), (a-c)/(a-b) lies in ker Tr."""
    return activation_index(F, a, b, c) is not None


def correctable_mask(F: FieldTower, a: int, b: int, gammas) -> np.ndarray:
    """Vectorised :func:`is_correctable_triple` over many third points."""
    g = np.asarray(gammas, dtype=np.int64)
    ba = F.sub(b, a)
    r1 = F.div_vec(np.full_like(g, ba), F.sub_vec(b, g))
    r2 = F.div_vec(F.sub_vec(g, b), F.sub_vec(g, a))
    r3 = F.div_vec(F.sub_vec(a, g), np.full_like(g, F.sub(a, b)))
    return (F.trace_vec(r1) == 0) | (F.trace_vec(r2) == 0) | (F.trace_vec(r3) == 0)


def _extend(F: FieldTower, base: tuple[int, ...], target: Subspace) -> int:
    """First enumerated element of ``target`` that is independent of ``base``."""
    for x in F.elements():
        if x and x in target and rank(F, list(base) + [x]) > len(base):
            return x
    raise AssertionError("internal error: root space does not extend the triple intersection")


def _reach_full(F: FieldTower, base: tuple[int, ...]) -> int:
    for x in F.elements():
        if x and rank(F, list(base) + [x]) == F.t:
            return x
    raise AssertionError("internal error: no element completes the basis")


def _check_pattern(code: RSCode, received, erasures) -> tuple[int, int, int]:
    F = code.tower
    pattern = parse_pattern(code, received, erasures, {3})
    if not F.char_divides_t():
        raise DivisibilityError(f"characteristic {F.p} does not divide t={F.t}")
    a, b, c = (code.point(i) for i in pattern)
    if not is_correctable_triple(F, a, b, c):
        raise NotCorrectable("no ratio of pairwise differences has zero trace")
    return pattern


def _run_three(code: RSCode, received, erasures, distributed: bool) -> RepairResult:
    F = code.tower
    a, b, c = _check_pattern(code, received, erasures)
    xa, xb, xc = code.point(a), code.point(b), code.point(c)
    sess = RepairSession(code, received, (a, b, c))
    W0 = triple_root_space(F, xa, xb, xc).basis
    s = len(W0)

    for pos in (a, b, c):
        sess.download_helping(pos, repl_id(pos) if distributed else CENTER)
    for pos, letter in ((a, "p"), (b, "q"), (c, "r")):
        for i, u in enumerate(W0, 1):
            sess.extract(pos, u, f"{letter}{i}", "round1", distributed)

    info = {"s": s, "round1": [F.format(u) for u in W0]}
    if s == F.t - 2:
        Kab, Kbc, Kca = root_space(F, xa, xb), root_space(F, xb, xc), root_space(F, xc, xa)
        slots = {
            "P1": (a, _extend(F, W0, Kab), f"p{s + 1}"),
            "P2": (a, _extend(F, W0, Kca), f"p{s + 2}"),
            "Q1": (b, _extend(F, W0, Kbc), f"q{s + 1}"),
            "Q2": (b, _extend(F, W0, Kab), f"q{s + 2}"),
            "R1": (c, _extend(F, W0, Kca), f"r{s + 1}"),
            "R2": (c, _extend(F, W0, Kbc), f"r{s + 2}"),
        }
        ring1 = ["R1", "P1", "Q1"]
        ring2 = ["Q2", "P2", "R2"]
        act = activation_index(F, xa, xb, xc)
        start1, start2 = [("R1", "Q2"), ("P1", "R2"), ("Q1", "P2")][act]
        order1 = ring1[ring1.index(start1):] + ring1[: ring1.index(start1)]
        order2 = ring2[ring2.index(start2):] + ring2[: ring2.index(start2)]
        sequence = [(start1, "activation"), (start2, "activation")]
        sequence += [(name, "cycle1") for name in order1[1:]] + [(name, "cycle2") for name in order2[1:]]
        for name, stage in sequence:
            pos, u, label = slots[name]
            sess.extract(pos, u, label, stage, distributed)
        info.update(
            activation=RATIO_NAMES[act],
            cycle1=order1,
            cycle2=order2,
            extension={name: F.format(slot[1]) for name, slot in slots.items()},
        )
    else:
        extra = _reach_full(F, W0)
        for pos, letter in ((a, "p"), (b, "q"), (c, "r")):
            sess.extract(pos, extra, f"{letter}{s + 3}", "round3", distributed)
        info["round3"] = F.format(extra)

    for pos in (a, b, c):
        sess.finish(pos)
    return sess.result("dist3" if distributed else "central3", **info)


def repair_three_centralized(code: RSCode, received, erasures=None) -> RepairResult:
    return _run_three(code, received, erasures, distributed=False)


def repair_three_distributed(code: RSCode, received, erasures=None) -> RepairResult:
    return _run_three(code, received, erasures, distributed=True)


def repair_three_fallback(code: RSCode, received, erasures=None) -> RepairResult:
    """Repair any three erasures at a larger cost.

    The third listed position is rebuilt from k whole symbols of survivors
    (k t sub-symbols); the other two then go through the two-erasure
    centralized scheme, or distributed scheme I when char(F) does not divide t.
    """
    a, b, c = parse_pattern(code, received, erasures, {3})
    F = code.tower
    value, helpers = naive_recover(code, received, c, avoid=(a, b))
    rest = list(received)
    rest[c] = value
    two = repair_two_centralized if F.char_divides_t() else repair_two_distributed_I
    inner = two(code, rest, (a, b))
    # inside the second stage position c is a rebuilt replacement, not a survivor
    moved = [Transfer(repl_id(c), tr.dest, tr.count, tr.kind, tr.note) if tr.source == node_id(c) else tr
             for tr in inner.ledger.transfers]
    whole = [Transfer(node_id(pos), repl_id(c), F.t, "download", "whole symbol") for pos in helpers]
    inner.ledger.transfers[:] = whole + moved
    recovered = dict(inner.recovered)
    recovered[c] = value
    return RepairResult(
        "fallback",
        (a, b, c),
        {p: recovered[p] for p in (a, b, c)},
        inner.ledger,
        inner.transcript,
        {"fallback": True, "naive_position": c, "inner_scheme": inner.scheme},
        inner.inputs,
    )

