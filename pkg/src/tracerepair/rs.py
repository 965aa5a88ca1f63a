"""Full-length Reed-Solomon codes over F and their trace-polynomial checks.

The code has evaluation points A = all of F in canonical order, so position
``i`` stores ``f(F.elements()[i])``.  Its dual is a generalised RS code whose
column multipliers are all 1 (the product of (a - b) over b != a in F is
-1 for every a), which is why ``sum_a p(a) f(a) = 0`` holds for every check
polynomial p of degree below n - k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from tracerepair.errors import DegenerateInput, DegreeError, PatternError, ShapeError
from tracerepair.field import FieldTower


@dataclass(frozen=True)
class RSCode:
    tower: FieldTower
    k: int
    points: tuple[int, ...] = field(repr=False)

    @classmethod
    def full_length(cls, tower: FieldTower, k: int | None = None) -> "RSCode":
        """RS(A, k) with A = F; k defaults to n (1 - 1/|B|)."""
        n = tower.order
        if k is None:
            k = n - n // tower.sub_order
        if not 1 <= k < n:
            raise ValueError(f"dimension k={k} must lie in [1, n)")
        return cls(tower, k, tuple(tower.elements()))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    def point(self, pos: int) -> int:
        return self.points[pos]

    def position(self, a: int) -> int:
        return self.tower.index_of(a)

    def encode(self, message) -> list[int]:
        """Evaluate f(x) = sum(message[i] x^i) at every point (Horner)."""
        message = list(message)
        if len(message) > self.k:
            raise DegreeError(f"message of length {len(message)} exceeds k={self.k}")
        F = self.tower
        xs = np.asarray(self.points, dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in reversed(message):
            acc = F.add_vec(F.mul_vec(acc, xs), c)
        return acc.tolist()

    def syndrome_ok(self, word) -> bool:
        """True iff ``word`` is a codeword (all dual parity sums vanish)."""
        F = self.tower
        if len(word) != self.n:
            raise ShapeError("word length differs from n")
        for j in range(self.redundancy):
            if F.sum(F.mul(F.pow(a, j), c) for a, c in zip(self.points, word)) != 0:
                return False
        return True


def evaluate(F: FieldTower, coeffs, x: int) -> int:
    acc = 0
    for c in reversed(list(coeffs)):
        acc = F.add(F.mul(acc, x), c)
    return acc


def check_value(F: FieldTower, u: int, center: int, x: int) -> int:
    """p_{u,center}(x) = Tr(u (x - center)) / (x - center), with value u at the center."""
    if x == center:
        return u
    d = F.sub(x, center)
    return F.div(F.trace(F.mul(u, d)), d)


@dataclass(frozen=True)
class CheckVector:
    """Values of the trace polynomial p_{u,center} on every code point."""

    u: int
    center: int
    values: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(1 for v in self.values if v != 0)


def check_vector(code: RSCode, u: int, center: int) -> CheckVector:
    """Dual codeword from p_{u,center}; it has degree |B|^(t-1) - 1 < n - k."""
    if u == 0:
        raise DegenerateInput("check element u must be nonzero")
    F = code.tower
    if code.redundancy < code.n // F.sub_order:
        raise DegreeError("trace checks need n - k >= |B|^(t-1)")
    return CheckVector(u, center, tuple(check_value(F, u, center, a) for a in code.points))


def verify_dual(code: RSCode, check, word) -> bool:
    """sum_a check(a) word(a) == 0."""
    F = code.tower
    values = check.values if isinstance(check, CheckVector) else tuple(check)
    if len(values) != code.n or len(word) != code.n:
        raise ShapeError("check and word must both have length n")
    return F.sum(F.mul(v, w) for v, w in zip(values, word)) == 0


def erased_positions(received) -> list[int]:
    return [i for i, v in enumerate(received) if v is None]


def lagrange_weights(F: FieldTower, support) -> list[int]:
    """lambda_a = prod_{b != a} (a - b)^-1 over the support.

    (lambda_a) is a dual codeword of the RS code of dimension |support| - 1
    restricted to that support.
    """
    pts = np.asarray(list(support), dtype=np.int64)
    diff = F.sub_vec(pts[:, None], pts[None, :])
    np.fill_diagonal(diff, 1)
    # multiply through logarithms: log prod = sum of logs mod (n - 1)
    cycle = F.order - 1
    logs = F.log_array[diff].sum(axis=1) % cycle
    return F.exp_array[(-logs) % cycle].tolist()


def naive_recover(code: RSCode, received, target: int, avoid=()) -> tuple[int, list[int]]:
    """Rebuild position ``target`` from k whole symbols.

    Uses the first k available positions other than ``target`` and ``avoid``.
    Returns the value and the positions read.
    """
    F = code.tower
    skip = set(avoid) | {target}
    helpers = [i for i, v in enumerate(received) if v is not None and i not in skip][: code.k]
    if len(helpers) < code.k:
        raise PatternError("fewer than k symbols available")
    support = [code.points[target]] + [code.points[i] for i in helpers]
    lam = lagrange_weights(F, support)
    acc = F.sum(F.mul(lam_a, received[i]) for lam_a, i in zip(lam[1:], helpers))
    return F.neg(F.div(acc, lam[0])), helpers


def naive_repair(code: RSCode, received) -> tuple[int, int]:
    """Conventional repair of one erasure: returns (symbol, bandwidth k*t)."""
    erased = erased_positions(received)
    if len(received) != code.n:
        raise ShapeError("received word length differs from n")
    if len(erased) != 1:
        raise PatternError(f"naive repair needs exactly one erasure, got {len(erased)}")
    value, helpers = naive_recover(code, received, erased[0])
    return value, len(helpers) * code.tower.t


def format_codeword(F: FieldTower, word) -> str:
    """One "index element" pair per line; erased symbols print as "?"."""
    return "".join(f"{i} {'?' if v is None else F.format(v)}\n" for i, v in enumerate(word))


def parse_codeword(F: FieldTower, text: str) -> list[int | None]:
    rows = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        idx, val = line.split(None, 1)
        rows[int(idx)] = None if val.strip() == "?" else F.parse(val)
    if sorted(rows) != list(range(len(rows))):
        raise ShapeError("codeword positions must be 0..n-1 without gaps")
    return [rows[i] for i in range(len(rows))]
