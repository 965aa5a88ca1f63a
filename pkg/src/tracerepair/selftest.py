"""Replays the reference values in :mod:`tracerepair.golden`."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from tracerepair import golden
from tracerepair.analysis import count_correctable
from tracerepair.field import field_tower
from tracerepair.linalg import complete_basis, root_space
from tracerepair.repair import repair_single_gw, repair_two_distributed_II
from tracerepair.rs import RSCode, check_vector

SMALL_CENSUS_LIMIT = 2**16


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    details: tuple[str, ...] = ()

    def lines(self) -> list[str]:
        head = f"{'PASS' if self.passed else 'FAIL'} {self.name}"
        return [head] + [f"    {d}" for d in self.details]


def check_table_gf16() -> CheckOutcome:
    F = field_tower(2, 1, 4)
    code = RSCode.full_length(F)
    basis = complete_basis(F, root_space(F, 0, 1)).elements
    diffs = []
    for letter, center in (("p", 0), ("q", 1)):
        for i, u in enumerate(basis, 1):
            got = [F.format(v) if v else "." for v in check_vector(code, u, center).values]
            want = golden.CHECK_TABLE_GF16[f"{letter}{i}"].split()
            for col, (g, w) in enumerate(zip(got, want)):
                if g != w:
                    diffs.append(f"{letter}{i} at {F.format(code.point(col))}: got {g}, want {w}")
    return CheckOutcome("GF(16) check table (8 rows x 16 points)", not diffs, tuple(diffs))


def _gf4_bits(F, bits):
    a1, a2, b1, b2 = bits
    a, b = a1 + 2 * a2, b1 + 2 * b2  # x is the packed integer 2
    return [a, F.sub(b, a)]


def _form(bits, coeffs) -> int:
    return sum(x * c for x, c in zip(bits, coeffs)) % 2


def check_gf4_transcripts() -> CheckOutcome:
    F = field_tower(2, 1, 2)
    code = RSCode.full_length(F)
    diffs = []
    for bits in itertools.product((0, 1), repeat=4):
        cw = code.encode(_gf4_bits(F, bits))
        received = [None if i == 1 else v for i, v in enumerate(cw)]
        basis = [F.parse(u) for u in golden.GF4_SINGLE_BASIS]
        res = repair_single_gw(code, received, basis=basis)
        for rec in res.transcript:
            want = golden.GF4_SINGLE_COMBINATIONS[F.format(rec.element)]
            got = {key[1]: c for key, c in rec.combination}
            if {k: v for k, v in want.items() if v} != got:
                diffs.append(f"{bits} single u={F.format(rec.element)}: combination {got}")
        for pos, form in golden.GF4_SINGLE_DOWNLOADS.items():
            got = res.inputs[("h", pos, 1)]
            if got != _form(bits, form):
                diffs.append(f"{bits} single download from {pos}: {got}")
        if res.recovered[1] != cw[1]:
            diffs.append(f"{bits} single repair wrong")

        received = [None if i in (1, 2) else v for i, v in enumerate(cw)]
        res2 = repair_two_distributed_II(code, received, (1, 2))
        for dest, forms in golden.GF4_DOUBLE_DOWNLOADS.items():
            for pos, form in forms.items():
                got = res2.inputs[("h", pos, dest)]
                if got != _form(bits, form):
                    diffs.append(f"{bits} double download {pos}->{dest}: {got}")
        exchanges = {
            (int(tr.source[4:]), int(tr.dest[4:])) for tr in res2.ledger.transfers if tr.kind == "exchange"
        }
        if exchanges != set(golden.GF4_DOUBLE_EXCHANGES):
            diffs.append(f"{bits} exchange pairs {sorted(exchanges)}")
        for (snd, rcv), (form, combo) in golden.GF4_DOUBLE_EXCHANGES.items():
            value = res2.inputs[("x", snd, rcv)]
            if value != _form(bits, form):
                diffs.append(f"{bits} exchange {snd}->{rcv} value {value}")
            parts = {key[1]: c for key, c in res2.exchange_sources[(snd, rcv)].items()}
            if parts != combo:
                diffs.append(f"{bits} exchange {snd}->{rcv} built from {parts}")
        if res2.bandwidth != 6 or any(res2.recovered[p] != cw[p] for p in (1, 2)):
            diffs.append(f"{bits} double repair wrong or bandwidth {res2.bandwidth}")
    return CheckOutcome("GF(4) single and double repair transcripts (16 messages)", not diffs, tuple(diffs))


def check_census() -> CheckOutcome:
    diffs = []
    ran = 0
    for (q, t), (want, total) in golden.TRIPLE_CENSUS.items():
        if q**t > SMALL_CENSUS_LIMIT:
            continue
        p = 2 if q % 2 == 0 else 3
        m = {2: 1, 4: 2, 8: 3, 3: 1, 9: 2}[q]
        c = count_correctable(field_tower(p, m, t))
        ran += 1
        if (c.correctable, c.total) != (want, total):
            diffs.append(f"|B|={q}, t={t}: got {c.correctable}/{c.total}, want {want}/{total}")
    return CheckOutcome(f"correctable-triple census ({ran} towers up to {SMALL_CENSUS_LIMIT})", not diffs, tuple(diffs))


def run_selftest() -> list[CheckOutcome]:
    return [check_table_gf16(), check_gf4_transcripts(), check_census()]
