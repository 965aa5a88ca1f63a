"""Bandwidth comparisons and the correctable-triple census."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from tracerepair.errors import DegenerateInput
from tracerepair.field import FieldTower
from tracerepair.repair.three import correctable_mask

# (p, m, t) towers of the correctable-triple census; two of them are large
CENSUS_TOWERS = [
    (2, 1, 4), (2, 1, 6), (2, 1, 8), (2, 1, 10),
    (2, 2, 4), (2, 2, 6), (2, 2, 8),
    (2, 3, 4), (2, 3, 6),
    (3, 1, 3), (3, 1, 6), (3, 1, 9),
    (3, 2, 3), (3, 2, 6),
]
CENSUS_TOWERS_LARGE = {(2, 3, 6), (3, 2, 6)}


@dataclass(frozen=True)
class TripleCensus:
    tower: str
    pair: tuple[int, int]
    correctable: int
    total: int

    def csv_row(self, F: FieldTower) -> str:
        pair = f"{F.format(self.pair[0])};{F.format(self.pair[1])}"
        return f"{self.tower},{pair},{self.correctable},{self.total}"


CENSUS_HEADER = "tower,fixed_pair,correctable,total"


def count_correctable(F: FieldTower, alpha: int = 0, beta: int = 1) -> TripleCensus:
    """Count third points gamma making {alpha, beta, gamma} correctable."""
    if alpha == beta:
        raise DegenerateInput("fixed pair must be two distinct points")
    xs = np.arange(F.order, dtype=np.int64)
    gammas = xs[(xs != alpha) & (xs != beta)]
    count = int(correctable_mask(F, alpha, beta, gammas).sum())
    return TripleCensus(F.name, (alpha, beta), count, len(gammas))


def repair_lower_bound(n: int, k: int, B_size: int, t: int) -> float:
    """(n-1) log_|B| ((n-1)/(n-k) * |B|^t / (|B|^t - 1)) sub-symbols for one erasure."""
    if n != B_size**t:
        raise ValueError("bound assumes n = |B|^t")
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    arg = Fraction(n - 1, n - k) * Fraction(B_size**t, B_size**t - 1)
    # log of an exact integer power is exact: keep 15 == 15 for the default k
    num, den = arg.numerator, arg.denominator
    if den == 1:
        e = round(math.log(num, B_size))
        if B_size**e == num:
            return float((n - 1) * e)
    return (n - 1) * math.log(float(arg)) / math.log(B_size)


def default_k(B_size: int, t: int) -> int:
    n = B_size**t
    return n - n // B_size


@dataclass(frozen=True)
class ThresholdReport:
    B_size: int
    t: int
    n: int
    k: int
    dist1_total: int
    naive_plus_gw: int
    dist1_condition: bool  # t >= (2|B| - 1)/(|B| - 1)
    dist1_beats: bool
    central2_total: int
    naive_two: int  # k t
    central2_condition: bool  # t >= 2|B|/(|B| - 1)
    central2_beats: bool


def threshold_report(B_size: int, t: int) -> ThresholdReport:
    """Compare the two-erasure schemes with the naive baselines at default k."""
    n = B_size**t
    k = default_k(B_size, t)
    dist1 = (n - 2 + k) + (n - 1)
    central2 = 2 * (n - 2)
    return ThresholdReport(
        B_size, t, n, k,
        dist1_total=dist1,
        naive_plus_gw=k * t + n - 1,
        dist1_condition=t * (B_size - 1) >= 2 * B_size - 1,
        dist1_beats=dist1 < k * t + n - 1,
        central2_total=central2,
        naive_two=k * t,
        central2_condition=t * (B_size - 1) >= 2 * B_size,
        central2_beats=central2 < k * t,
    )


@dataclass(frozen=True)
class SchemeRow:
    scheme: str
    erasures: int
    bandwidth: int
    conditions: str


def scheme_bandwidth(scheme: str, n: int, k: int, t: int, B_size: int, char_divides_t: bool = True) -> int:
    """Closed-form ledger total of each scheme.

    The extra downloads of distributed scheme I number n - n/|B|, which is k
    at the default dimension.  The fallback rebuilds one symbol naively and
    then runs the centralized two-erasure scheme (distributed I when
    char(F) does not divide t).
    """
    support = n - n // B_size
    dist1 = (n - 2 + support) + (n - 1)
    return {
        "naive": k * t,
        "gw": n - 1,
        "dist1": dist1,
        "central2": 2 * (n - 2),
        "dist2": 2 * (n - 1),
        "central3": 3 * (n - 3),
        "dist3": 3 * (n - 1),
        "fallback": k * t + (2 * (n - 2) if char_divides_t else dist1),
    }[scheme]


def scheme_table(F: FieldTower, k: int | None = None) -> list[SchemeRow]:
    n, t = F.order, F.t
    k = default_k(F.sub_order, t) if k is None else k
    div = "char | t" if F.char_divides_t() else "unavailable: char does not divide t"

    def bw(name):
        return scheme_bandwidth(name, n, k, t, F.sub_order, F.char_divides_t())

    rows = [
        SchemeRow("naive", 1, bw("naive"), "any"),
        SchemeRow("gw", 1, bw("gw"), "any"),
        SchemeRow("naive+gw", 2, k * t + n - 1, "any"),
        SchemeRow("dist1", 2, bw("dist1"), "t >= 2"),
        SchemeRow("central2", 2, bw("central2"), div),
        SchemeRow("dist2", 2, bw("dist2"), div),
        SchemeRow("central3", 3, bw("central3"), div + "; correctable triple"),
        SchemeRow("dist3", 3, bw("dist3"), div + "; correctable triple"),
    ]
    # an MDS code cannot fill more than n - k erasures at any cost
    return [
        r if r.erasures <= n - k else SchemeRow(r.scheme, r.erasures, r.bandwidth, f"unavailable: more than n - k = {n - k} erasures")
        for r in rows
    ]
