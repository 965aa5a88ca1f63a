"""Shared machinery for the trace-repair schemes.

A repair runs inside a :class:`RepairSession`.  The session only sees the
surviving symbols (erased positions hold ``None``) and logs every sub-symbol
that moves between nodes in a :class:`BandwidthLedger`.  Traces learned about
an erased symbol are kept per position together with their provenance: a
B-linear combination of the raw inputs (helping traces, extra downloads and
exchanged sub-symbols) that produced them.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from tracerepair.errors import DegreeError, PatternError, ShapeError
from tracerepair.field import FieldTower
from tracerepair.linalg import dual_basis, express_in_span, rank
from tracerepair.rs import RSCode, check_value


def node_id(pos: int) -> str:
    return f"node{pos}"


def repl_id(pos: int) -> str:
    return f"repl{pos}"


CENTER = "center"


@dataclass(frozen=True)
class Transfer:
    source: str
    dest: str
    count: int
    kind: str  # "download" (from a survivor) or "exchange" (between replacements)
    note: str = ""


@dataclass
class BandwidthLedger:
    transfers: list[Transfer] = field(default_factory=list)

    def record(self, source: str, dest: str, count: int, kind: str, note: str = "") -> None:
        if count <= 0:
            raise ValueError("transfer count must be positive")
        self.transfers.append(Transfer(source, dest, count, kind, note))

    @property
    def total(self) -> int:
        return sum(tr.count for tr in self.transfers)

    @property
    def downloads(self) -> int:
        return sum(tr.count for tr in self.transfers if tr.kind == "download")

    @property
    def exchanges(self) -> int:
        return sum(tr.count for tr in self.transfers if tr.kind == "exchange")

    def by_dest(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for tr in self.transfers:
            out[tr.dest] = out.get(tr.dest, 0) + tr.count
        return out

    def by_source(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for tr in self.transfers:
            out[tr.source] = out.get(tr.source, 0) + tr.count
        return out


# An input key names one raw sub-symbol that entered the computation:
#   ("h", source_pos, center_pos)   helping trace Tr(f(a_src) / (a_src - a_center))
#   ("g", source_pos, center_pos)   extra trace Tr(scale * f(a_src) / (a_src - a_center))
#   ("x", from_pos, to_pos)         sub-symbol exchanged between two replacements
InputKey = tuple


def key_label(F: FieldTower, code: RSCode, key: InputKey) -> str:
    kind, a, b = key
    xa, xb = F.format(code.point(a)), F.format(code.point(b))
    if kind == "h":
        return f"Tr(f({xa})/({xa}-{xb}))@node{a}"
    if kind == "g":
        return f"Tr(s*f({xa})/({xa}-{xb}))@node{a}"
    return f"Tr(f({xa})/({xa}-{xb}))@repl{a}"


@dataclass(frozen=True)
class Interference:
    """One interfering term Tr(p(a_pos) f(a_pos)) canceled from a repair equation."""

    position: int
    check_value: int
    value: int
    via: str  # "known traces" or "exchange"
    coeffs: tuple[int, ...]  # over the other symbol's known elements (or the exchange scale)


@dataclass(frozen=True)
class TraceRecord:
    check: str
    target: int
    element: int
    rhs: int
    trace: int
    stage: str
    interference: tuple[Interference, ...] = ()
    combination: tuple[tuple[InputKey, int], ...] = ()


@dataclass
class RepairResult:
    scheme: str
    pattern: tuple[int, ...]
    recovered: dict[int, int]
    ledger: BandwidthLedger
    transcript: list[TraceRecord]
    info: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)  # InputKey -> sub-symbol value actually received
    # (sender, receiver) -> how the sender built the exchanged sub-symbol from its own inputs
    exchange_sources: dict = field(default_factory=dict)

    @property
    def bandwidth(self) -> int:
        return self.ledger.total

    def to_report(self, F: FieldTower, truth: dict[int, int] | None = None) -> dict:
        """Structured report with stable field names; ``success`` needs the true symbols."""
        report = {
            "scheme": self.scheme,
            "pattern": list(self.pattern),
            "recovered": {str(p): F.format(v) for p, v in sorted(self.recovered.items())},
            "bandwidth": self.ledger.total,
            "downloads": self.ledger.downloads,
            "exchanges": self.ledger.exchanges,
            "ledger": [
                {"source": tr.source, "dest": tr.dest, "count": tr.count, "kind": tr.kind, "note": tr.note}
                for tr in self.ledger.transfers
            ],
            "transcript": [
                {
                    "check": rec.check,
                    "stage": rec.stage,
                    "target": rec.target,
                    "element": F.format(rec.element),
                    "rhs": F.format(rec.rhs),
                    "trace": F.format(rec.trace),
                    "interference": [
                        {"position": it.position, "value": F.format(it.value), "via": it.via}
                        for it in rec.interference
                    ],
                }
                for rec in self.transcript
            ],
            "info": {k: self.info[k] for k in sorted(self.info)},
        }
        if truth is not None:
            report["success"] = all(self.recovered.get(p) == v for p, v in truth.items())
        return report


def parse_pattern(code: RSCode, received, erasures, sizes, trace: bool = True) -> tuple[int, ...]:
    """Validate a received word and return the erasure pattern in caller order.

    Trace checks have degree |B|^(t-1) - 1, so trace schemes need
    n - k >= n/|B|.
    """
    if trace and code.redundancy < code.n // code.tower.sub_order:
        raise DegreeError(f"trace repair needs k <= {code.n - code.n // code.tower.sub_order}")
    if len(received) != code.n:
        raise ShapeError(f"received word has length {len(received)}, expected {code.n}")
    missing = [i for i, v in enumerate(received) if v is None]
    if erasures is None:
        pattern = tuple(missing)
    else:
        pattern = tuple(int(e) for e in erasures)
        if len(set(pattern)) != len(pattern):
            raise PatternError("erasure positions repeat")
        if sorted(pattern) != missing:
            raise PatternError("erasure list does not match the missing positions")
    if len(pattern) not in sizes:
        raise PatternError(f"scheme handles {sorted(sizes)} erasures, got {len(pattern)}")
    if len(pattern) > code.redundancy:
        raise PatternError(f"{len(pattern)} erasures exceed n - k = {code.redundancy}")
    return pattern


Combo = dict


def _combo_add(F: FieldTower, acc: Combo, other: Combo, scale: int) -> None:
    if scale == 0:
        return
    add, mul = F.add, F.mul
    get = acc.get
    for key, c in other.items():
        v = add(get(key, 0), c if scale == 1 else mul(scale, c))
        if v == 0:
            acc.pop(key, None)
        else:
            acc[key] = v


class KnownTraces:
    """Traces Tr(u f(a)) known for one erased symbol, with provenance."""

    def __init__(self, F: FieldTower):
        self.F = F
        self.elements: list[int] = []
        self.values: list[int] = []
        self.combos: list[Combo] = []

    def add(self, u: int, value: int, combo: Combo) -> None:
        self.elements.append(u)
        self.values.append(value)
        self.combos.append(dict(combo))

    def trace_of(self, x: int):
        """Tr(x f(a)) as (value, coeffs, combo) if x is in the known span, else None."""
        coeffs = express_in_span(self.F, x, self.elements)
        if coeffs is None:
            return None
        F = self.F
        value = F.sum(F.mul(c, v) for c, v in zip(coeffs, self.values))
        combo: Combo = {}
        for c, cb in zip(coeffs, self.combos):
            _combo_add(F, combo, cb, c)
        return value, coeffs, combo

    def rank(self) -> int:
        return rank(self.F, self.elements)

    def recover(self) -> int:
        """Rebuild the symbol from t independent known traces (first ones in order)."""
        F = self.F
        chosen_u, chosen_v = [], []
        for u, v in zip(self.elements, self.values):
            if rank(F, chosen_u + [u]) > len(chosen_u):
                chosen_u.append(u)
                chosen_v.append(v)
        if len(chosen_u) < F.t:
            raise AssertionError("internal error: fewer than t independent traces")
        tb = dual_basis(F, chosen_u)
        return F.sum(F.mul(v, d) for v, d in zip(chosen_v, tb.dual))


@functools.lru_cache(maxsize=1 << 16)
def _rhs_coefficients(code: RSCode, positions: tuple[int, ...], center: int, u: int):
    # depends only on where the helpers sit, so it is shared by every codeword
    F, pts = code.tower, code.points
    diffs = F.sub_vec([pts[pos] for pos in positions], pts[center])
    coefs = F.neg_vec(F.trace_vec(F.mul_vec(diffs, u)))
    nz = np.flatnonzero(coefs).tolist()
    chosen = tuple(positions[i] for i in nz)
    values = tuple(int(coefs[i]) for i in nz)
    return chosen, values, {("h", pos, center): c for pos, c in zip(chosen, values)}


class RepairSession:
    """State of one repair job: survivor access, ledger, known traces, transcript."""

    def __init__(self, code: RSCode, received, pattern: tuple[int, ...]):
        self.code = code
        self.F = code.tower
        self.received = list(received)
        self.pattern = pattern
        self.erased = set(pattern)
        self.survivors = [i for i in range(code.n) if i not in self.erased]
        self.ledger = BandwidthLedger()
        self.transcript: list[TraceRecord] = []
        self.known = {pos: KnownTraces(self.F) for pos in pattern}
        self.helping: dict[int, dict[int, int]] = {pos: {} for pos in pattern}
        self._exchanged: dict[tuple[int, int], tuple[int, Combo]] = {}
        self.repaired: dict[int, int] = {}
        self.inputs: dict[InputKey, int] = {}

    # -- reads from survivors -------------------------------------------------

    def _read(self, pos: int) -> int:
        if pos in self.repaired:
            return self.repaired[pos]
        value = self.received[pos]
        if value is None:
            raise AssertionError(f"internal error: read of erased position {pos}")
        return value

    def source_id(self, pos: int) -> str:
        return repl_id(pos) if pos in self.erased else node_id(pos)

    def download_helping(self, center: int, dest: str, sources=None) -> None:
        """One helping trace Tr(f(a)/(a - a_center)) from every source to ``dest``."""
        F, pts = self.F, self.code.points
        positions = self.survivors if sources is None else list(sources)
        symbols = [self._read(pos) for pos in positions]
        diffs = F.sub_vec([pts[pos] for pos in positions], pts[center])
        values = F.trace_vec(F.div_vec(symbols, diffs)).tolist()
        for pos, val in zip(positions, values):
            self.helping[center][pos] = val
            self.inputs[("h", pos, center)] = val
            kind = "exchange" if pos in self.erased else "download"
            self.ledger.record(self.source_id(pos), dest, 1, kind, f"helping trace for {center}")

    def rhs(self, center: int, u: int) -> tuple[int, Combo]:
        """-sum over helpers of Tr(u (a - a_center)) * helping trace."""
        F = self.F
        helpers = self.helping[center]
        positions, coefs, template = _rhs_coefficients(self.code, tuple(helpers), center, u)
        total = 0
        for pos, c in zip(positions, coefs):
            total = F.add(total, F.mul(c, helpers[pos]))
        return total, dict(template)

    # -- trace extraction ---------------------------------------------------

    def extract(self, target: int, u: int, label: str, stage: str, distributed: bool) -> int:
        """Extract Tr(u f(target)) from the repair equation of p_{u,target}.

        Interfering traces at the other erased positions are canceled with
        traces already known there.  In the distributed mode the other
        replacement computes and sends one helping trace instead.
        """
        F, pts = self.F, self.code.points
        total, combo = self.rhs(target, u)
        cancels = []
        for other in self.pattern:
            if other == target or other in self.repaired:
                continue
            cv = check_value(F, u, pts[target], pts[other])
            if cv == 0:
                continue
            if distributed:
                h, _ = self.exchange(other, target)
                scale = F.trace(F.mul(u, F.sub(pts[other], pts[target])))
                value = F.mul(scale, h)
                cancels.append(Interference(other, cv, value, "exchange", (scale,)))
                # the receiver only sees the exchanged sub-symbol itself
                sub_combo = {("x", other, target): scale}
            else:
                got = self.known[other].trace_of(cv)
                if got is None:
                    raise AssertionError(f"internal error: interference at {other} not in known span")
                value, coeffs, sub_combo = got
                cancels.append(Interference(other, cv, value, "known traces", tuple(coeffs)))
            total = F.sub(total, value)
            _combo_add(F, combo, sub_combo, F.neg(1))
        rhs_value = F.add(total, F.sum(it.value for it in cancels))
        self.known[target].add(u, total, combo)
        self.transcript.append(
            TraceRecord(label, target, u, rhs_value, total, stage, tuple(cancels), tuple(sorted(combo.items())))
        )
        return total

    def exchange(self, sender: int, receiver: int) -> tuple[int, Combo]:
        """Replacement ``sender`` sends Tr(f(a_s)/(a_s - a_r)) to replacement ``receiver``.

        The sender computes it from the traces it already knows; each ordered
        pair is sent at most once.
        """
        if (sender, receiver) in self._exchanged:
            return self._exchanged[(sender, receiver)]
        F, pts = self.F, self.code.points
        got = self.known[sender].trace_of(F.inv(F.sub(pts[sender], pts[receiver])))
        if got is None:
            raise AssertionError(f"internal error: replacement {sender} cannot form the exchange for {receiver}")
        value, _, combo = got
        self.ledger.record(repl_id(sender), repl_id(receiver), 1, "exchange", f"Tr(f(a{sender})/(a{sender}-a{receiver}))")
        self._exchanged[(sender, receiver)] = (value, combo)
        self.inputs[("x", sender, receiver)] = value
        return value, combo

    def finish(self, pos: int) -> int:
        value = self.known[pos].recover()
        self.repaired[pos] = value
        return value

    def result(self, scheme: str, **info) -> RepairResult:
        recovered = {pos: self.repaired[pos] for pos in self.pattern}
        sources = {pair: dict(combo) for pair, (_, combo) in self._exchanged.items()}
        return RepairResult(
            scheme, self.pattern, recovered, self.ledger, self.transcript, dict(info), dict(self.inputs), sources
        )
