"""B-linear algebra inside F, where F is viewed as the vector space B^t.

Coordinates are taken with respect to the power basis 1, xi, ..., xi^(t-1).
Those t elements are the first B-independent ones in the canonical field
enumeration, because xi generates F over B and so has degree t over it.
Coordinates are read off with the trace-dual of the power basis.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from tracerepair.errors import DegenerateInput, RankError
from tracerepair.field import FieldTower


@functools.lru_cache(maxsize=None)
def _power_dual(F: FieldTower) -> tuple[int, ...]:
    # d_j is the unique x with Tr(xi^i x) = [i == j] for all i < t
    xs = np.arange(F.order, dtype=np.int64)
    traces = np.stack([F.trace_vec(F.mul_vec(xs, F.exp(i))) for i in range(F.t)])
    dual = []
    for j in range(F.t):
        target = np.zeros((F.t, 1), dtype=np.int64)
        target[j, 0] = 1
        hits = np.flatnonzero((traces == target).all(axis=0))
        assert len(hits) == 1, "trace form must be non-degenerate"
        dual.append(int(hits[0]))
    return tuple(dual)


# The linear-algebra queries below are pure functions of small hashable
# arguments and recur across codewords with the same erasure pattern.
_CACHE = 1 << 16


@functools.lru_cache(maxsize=_CACHE)
def _b_vector(F: FieldTower, x: int) -> tuple[int, ...]:
    return tuple(F.trace(F.mul(x, d)) for d in _power_dual(F))


def b_vector(F: FieldTower, x: int) -> list[int]:
    """Coordinates of ``x`` over B in the power basis (each entry lies in B)."""
    return list(_b_vector(F, x))


def from_b_vector(F: FieldTower, vec) -> int:
    return F.sum(F.mul(c, F.exp(j)) for j, c in enumerate(vec))


def _rref(F: FieldTower, rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            f = rows[i][c]
            if i != r and f != 0:
                rows[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(F: FieldTower, elems) -> int:
    return _rank(F, tuple(elems))


@functools.lru_cache(maxsize=_CACHE)
def _rank(F: FieldTower, elems: tuple[int, ...]) -> int:
    return len(_rref(F, [b_vector(F, x) for x in elems], F.t)[1])


def _nullspace(F: FieldTower, rows: list[list[int]]) -> list[list[int]]:
    reduced, pivots = _rref(F, rows, F.t)
    free = [c for c in range(F.t) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * F.t
        vec[fc] = 1
        for row, pc in zip(reduced, pivots):
            vec[pc] = F.neg(row[fc])
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class Subspace:
    """A B-subspace of F held in canonical reduced form.

    The basis is the reduced row-echelon form of the generators' power-basis
    coordinates, so equal subspaces always carry identical basis tuples.
    """

    tower: FieldTower
    basis: tuple[int, ...]

    @classmethod
    def span(cls, F: FieldTower, gens) -> "Subspace":
        reduced, _ = _rref(F, [b_vector(F, g) for g in gens], F.t)
        return cls(F, tuple(from_b_vector(F, row) for row in reduced))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, x: int) -> bool:
        return express_in_span(self.tower, x, self.basis) is not None

    def members(self) -> set[int]:
        """Every element of the subspace; meant for small fields only."""
        F = self.tower
        out = {0}
        for g in self.basis:
            out |= {F.add(v, F.mul(lam, g)) for v in out for lam in F.subfield_elements()}
        return out


def _from_functionals(F: FieldTower, deltas) -> Subspace:
    # {z : Tr(z * delta) = 0 for every delta}; Tr(z delta) = sum_j z_j Tr(xi^j delta)
    rows = [[F.trace(F.mul(F.exp(j), d)) for j in range(F.t)] for d in deltas]
    null = _nullspace(F, rows)
    return Subspace.span(F, [from_b_vector(F, v) for v in null])


@functools.lru_cache(maxsize=_CACHE)
def trace_kernel(F: FieldTower) -> Subspace:
    """K = ker Tr_{F/B}, of dimension t - 1."""
    return _from_functionals(F, [1])


@functools.lru_cache(maxsize=_CACHE)
def root_space(F: FieldTower, alpha: int, beta: int) -> Subspace:
    """All z with Tr(z alpha) = Tr(z beta), i.e. K / (beta - alpha)."""
    if alpha == beta:
        raise DegenerateInput("root space needs two distinct points")
    return _from_functionals(F, [F.sub(beta, alpha)])


@functools.lru_cache(maxsize=_CACHE)
def triple_root_space(F: FieldTower, alpha: int, beta: int, gamma: int) -> Subspace:
    """All z with Tr(z alpha) = Tr(z beta) = Tr(z gamma)."""
    if len({alpha, beta, gamma}) != 3:
        raise DegenerateInput("triple root space needs three distinct points")
    return _from_functionals(F, [F.sub(beta, alpha), F.sub(gamma, beta)])


@dataclass(frozen=True)
class TraceBasis:
    """A B-basis u_1..u_t of F, optionally with its trace-dual basis."""

    elements: tuple[int, ...]
    dual: tuple[int, ...] | None = None


def complete_basis(F: FieldTower, prefix) -> TraceBasis:
    """Extend an independent sequence to a basis of F over B.

    Each added element is the first one in canonical enumeration order that
    raises the rank.
    """
    elems = list(prefix.basis if isinstance(prefix, Subspace) else prefix)
    if rank(F, elems) != len(elems):
        raise RankError("prefix is not B-linearly independent")
    rows = [b_vector(F, x) for x in elems]
    for cand in F.elements():
        if len(elems) == F.t:
            break
        trial = rows + [b_vector(F, cand)]
        if len(_rref(F, trial, F.t)[1]) == len(trial):
            elems.append(cand)
            rows = trial
    return TraceBasis(tuple(elems))


def dual_basis(F: FieldTower, basis) -> TraceBasis:
    """Fill in the trace-dual basis: Tr(u_i d_j) = [i == j]."""
    elems = tuple(basis.elements if isinstance(basis, TraceBasis) else basis)
    if len(elems) != F.t or rank(F, elems) != F.t:
        raise RankError("dual basis needs a full-rank basis")
    return _dual(F, elems)


@functools.lru_cache(maxsize=_CACHE)
def _dual(F: FieldTower, elems: tuple[int, ...]) -> TraceBasis:
    # d_j = sum_k X[j][k] u_k with Gram matrix G[i][k] = Tr(u_i u_k); G X^T = I
    gram = [[F.trace(F.mul(ui, uk)) for uk in elems] for ui in elems]
    dual = []
    for j in range(F.t):
        aug = [gram[i] + [1 if i == j else 0] for i in range(F.t)]
        reduced, pivots = _rref(F, aug, F.t)
        coeffs = [row[-1] for row in reduced]
        dual.append(F.sum(F.mul(c, u) for c, u in zip(coeffs, elems)))
    return TraceBasis(elems, tuple(dual))


def b_coords(F: FieldTower, a: int, basis) -> list[int]:
    """B-coordinates c with sum(c_i u_i) = a, via c_i = Tr(a d_i)."""
    tb = basis if isinstance(basis, TraceBasis) and basis.dual is not None else dual_basis(F, basis)
    return [F.trace(F.mul(a, d)) for d in tb.dual]


def express_in_span(F: FieldTower, x: int, gens) -> list[int] | None:
    """Coefficients c over B with sum(c_i gens_i) = x, or None when x is outside the span.

    Free coefficients are set to zero when the generators are dependent.
    """
    out = _express(F, x, tuple(gens))
    return None if out is None else list(out)


@functools.lru_cache(maxsize=_CACHE)
def _express(F: FieldTower, x: int, gens: tuple[int, ...]) -> tuple[int, ...] | None:
    cols = [b_vector(F, g) for g in gens]
    target = b_vector(F, x)
    aug = [[cols[i][j] for i in range(len(gens))] + [target[j]] for j in range(F.t)]
    reduced, pivots = _rref(F, aug, len(gens) + 1)
    if pivots and pivots[-1] == len(gens):
        return None
    coeffs = [0] * len(gens)
    for row, pc in zip(reduced, pivots):
        coeffs[pc] = row[-1]
    return tuple(coeffs)
