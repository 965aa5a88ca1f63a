"""Scenario runner behind the command line.

A scenario names a tower, a code dimension, an erasure pattern and a scheme.
Each trial draws a random message from a SplitMix64 stream seeded by the
scenario seed, encodes it, erases the pattern, repairs, and compares the
result with the encoder output.

SplitMix64 (state s, all arithmetic mod 2^64)::

    s += 0x9E3779B97F4A7C15
    z = s
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

A uniform draw below n rejects outputs at or above 2^64 - (2^64 mod n) and
returns the rest mod n.  Message coefficient i of trial j is the (j*k + i)-th
draw of the stream.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

from tracerepair.analysis import count_correctable, scheme_bandwidth
from tracerepair.errors import TraceRepairError
from tracerepair.field import FieldTower, field_tower
from tracerepair.repair import SCHEMES, is_correctable_triple, repair_three_fallback
from tracerepair.repair.core import key_label
from tracerepair.rs import RSCode, format_codeword

MASK64 = (1 << 64) - 1
SCHEME_NAMES = ("naive", "gw", "dist1", "central2", "dist2", "central3", "dist3", "auto")
ARITY = {"naive": 1, "gw": 1, "dist1": 2, "central2": 2, "dist2": 2, "central3": 3, "dist3": 3}
CSV_HEADER = "scheme,n,k,erasures,trial,bandwidth_subsymbols,success"


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            z = self.next()
            if z < limit:
                return z % n


@dataclass
class Scenario:
    p: int
    m: int
    t: int
    erasures: list[str]
    scheme: str = "auto"
    k: int | None = None
    trials: int = 1
    seed: int = 0
    message: list[str] | None = None


class ConfigError(TraceRepairError, ValueError):
    """Malformed scenario file or option."""


def _split_list(text: str) -> list[str]:
    return [part.strip() for part in text.replace(";", ",").split(",") if part.strip()]


def parse_config(text: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {n}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def scenario_from_mapping(values: dict) -> Scenario:
    known = {"p", "m", "t", "k", "erasures", "scheme", "trials", "seed", "message"}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown scenario keys: {sorted(unknown)}")
    try:
        sc = Scenario(
            p=int(values["p"]),
            m=int(values.get("m", 1)),
            t=int(values["t"]),
            erasures=_split_list(values["erasures"]) if isinstance(values["erasures"], str) else list(values["erasures"]),
            scheme=str(values.get("scheme", "auto")),
            k=None if values.get("k") in (None, "") else int(values["k"]),
            trials=int(values.get("trials", 1)),
            seed=int(values.get("seed", 0)),
            message=None,
        )
    except KeyError as exc:
        raise ConfigError(f"missing scenario key {exc.args[0]!r}") from None
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    msg = values.get("message")
    if msg not in (None, ""):
        sc.message = _split_list(msg) if isinstance(msg, str) else list(msg)
    if sc.scheme not in SCHEME_NAMES:
        raise ConfigError(f"unknown scheme {sc.scheme!r}; choose from {', '.join(SCHEME_NAMES)}")
    if sc.trials < 0:
        raise ConfigError("trials must be non-negative")
    return sc


def resolve_positions(F: FieldTower, tokens) -> list[int]:
    """Integers are positions; other tokens are field elements in power or vector notation.

    Position i holds the i-th element of the canonical order, so "0" and "1"
    mean the same thing either way.
    """
    out = []
    for tok in tokens:
        tok = str(tok).strip()
        if tok.lstrip("-").isdigit():
            pos = int(tok)
            if not 0 <= pos < F.order:
                raise ConfigError(f"position {pos} outside 0..{F.order - 1}")
            out.append(pos)
        else:
            out.append(F.index_of(F.parse(tok)))
    return out


@dataclass(frozen=True)
class TrialRow:
    scheme: str
    n: int
    k: int
    erasures: tuple[int, ...]
    trial: int
    bandwidth: int
    success: bool

    def csv(self) -> str:
        pattern = ";".join(str(e) for e in self.erasures)
        return f"{self.scheme},{self.n},{self.k},{pattern},{self.trial},{self.bandwidth},{int(self.success)}"


@dataclass
class RunReport:
    scheme: str
    rows: list[TrialRow] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    transcripts: list[str] = field(default_factory=list)
    fallback: bool = False

    @property
    def ok(self) -> bool:
        return not self.diagnostics and all(r.success for r in self.rows)

    def to_csv(self) -> str:
        return CSV_HEADER + "\n" + "".join(r.csv() + "\n" for r in self.rows)

    def summary(self) -> str:
        lines = [f"scheme: {self.scheme}" + (" (fallback)" if self.fallback else "")]
        if self.rows:
            bws = [r.bandwidth for r in self.rows]
            good = sum(r.success for r in self.rows)
            lines.append(f"trials: {len(self.rows)}, recovered: {good}/{len(self.rows)}")
            lines.append(f"bandwidth min/max/mean: {min(bws)}/{max(bws)}/{sum(bws) / len(bws):.3f}")
        lines += [f"diagnostic: {d}" for d in self.diagnostics]
        lines.append("status: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines) + "\n"


def choose_scheme(F: FieldTower, code: RSCode, scheme: str, pattern: list[int]) -> str:
    """Resolve "auto" by erasure count and the scheme conditions."""
    if scheme != "auto":
        return scheme
    e = len(pattern)
    if e == 1:
        return "gw"
    if e == 2:
        return "central2" if F.char_divides_t() else "dist1"
    if e == 3:
        pts = [code.point(i) for i in pattern]
        if F.char_divides_t() and is_correctable_triple(F, *pts):
            return "central3"
        return "fallback"
    raise ConfigError(f"no scheme handles {e} erasures")


def _format_transcript(F: FieldTower, code: RSCode, trial: int, cw, result) -> str:
    out = io.StringIO()
    out.write(f"## trial {trial}\n")
    out.write(f"scheme {result.scheme} pattern {list(result.pattern)} bandwidth {result.bandwidth}\n")
    for key in sorted(result.info):
        out.write(f"info {key} = {result.info[key]}\n")
    out.write("# codeword\n")
    out.write(format_codeword(F, cw))
    out.write("# ledger\n")
    for tr in result.ledger.transfers:
        out.write(f"{tr.source} -> {tr.dest} {tr.count} {tr.kind} {tr.note}\n")
    out.write("# transcript\n")
    for rec in result.transcript:
        cancels = "; ".join(f"{it.position}:{F.format(it.value)} via {it.via}" for it in rec.interference)
        out.write(
            f"{rec.stage} {rec.check} target={rec.target} u={F.format(rec.element)} "
            f"rhs={F.format(rec.rhs)} trace={F.format(rec.trace)}"
            + (f" canceled[{cancels}]" if cancels else "")
            + "\n"
        )
        terms = " + ".join(f"{F.format(c)}*{key_label(F, code, key)}" for key, c in rec.combination)
        if terms:
            out.write(f"    = {terms}\n")
    out.write("# recovered\n")
    for pos in result.pattern:
        out.write(f"{pos} {F.format(result.recovered[pos])}\n")
    return out.getvalue()


def run_scenario(sc: Scenario, transcript: bool = False) -> RunReport:
    try:
        F = field_tower(sc.p, sc.m, sc.t)
        code = RSCode.full_length(F, sc.k)
        pattern = resolve_positions(F, sc.erasures)
        scheme = choose_scheme(F, code, sc.scheme, pattern)
    except (TraceRepairError, ValueError) as exc:
        return RunReport(sc.scheme, diagnostics=[f"{type(exc).__name__}: {exc}"])

    report = RunReport(scheme, fallback=scheme == "fallback")
    if scheme != "fallback" and ARITY[scheme] != len(pattern):
        report.diagnostics.append(f"PatternError: {scheme} repairs {ARITY[scheme]} erasure(s), got {len(pattern)}")
        return report
    repair = repair_three_fallback if scheme == "fallback" else SCHEMES[scheme]
    expected = scheme_bandwidth(scheme, code.n, code.k, F.t, F.sub_order, F.char_divides_t())
    fixed = [F.parse(c) for c in sc.message] if sc.message is not None else None
    if fixed is not None and len(fixed) > code.k:
        report.diagnostics.append(f"DegreeError: message has {len(fixed)} coefficients, k={code.k}")
        return report

    rng = SplitMix64(sc.seed)
    for trial in range(sc.trials):
        message = fixed if fixed is not None else [rng.below(F.order) for _ in range(code.k)]
        cw = code.encode(message)
        received = [None if i in pattern else v for i, v in enumerate(cw)]
        try:
            result = repair(code, received, pattern)
        except TraceRepairError as exc:
            report.diagnostics.append(f"{type(exc).__name__}: {exc}")
            break
        success = all(result.recovered[p] == cw[p] for p in pattern)
        report.rows.append(TrialRow(scheme, code.n, code.k, tuple(pattern), trial, result.bandwidth, success))
        if result.bandwidth != expected:
            report.diagnostics.append(f"trial {trial}: bandwidth {result.bandwidth} differs from closed form {expected}")
        if transcript:
            report.transcripts.append(_format_transcript(F, code, trial, cw, result))
    return report


def census_rows(towers, alpha: str = "0", beta: str = "1") -> list[str]:
    rows = []
    for p, m, t in towers:
        F = field_tower(p, m, t)
        c = count_correctable(F, F.parse(alpha), F.parse(beta))
        rows.append(c.csv_row(F))
    return rows
