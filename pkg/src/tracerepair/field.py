"""Arithmetic in a field tower F = GF(p^(m*t)) over its subfield B = GF(p^m).

Elements are plain Python ints.  The polynomial-basis coordinates
``(c_0, ..., c_{d-1})`` of an element with respect to the generator ``xi``
(a root of the defining polynomial) are packed as ``sum(c_i * p**i)``, so
``0`` and ``1`` are the field's zero and one and ``xi`` is the integer ``p``.

The subfield B is not given its own type.  Its elements are exactly the
members of F fixed by ``x -> x**|B|``.

Scalar operations go through log/antilog tables.  Vectorised numpy versions
(suffix ``_vec``) serve the whole-field sweeps used by the triple census.
"""

from __future__ import annotations

import functools
import math
import os
import re

import numpy as np

from tracerepair._conway import CONWAY
from tracerepair.errors import FieldConstructionError, FieldSizeError

DEFAULT_MAX_FIELD = 2**20
MAX_FIELD_ENV = "TRACE_REPAIR_MAX_FIELD"


def max_field_size() -> int:
    """Current field-size cap, honouring ``TRACE_REPAIR_MAX_FIELD``."""
    raw = os.environ.get(MAX_FIELD_ENV)
    if raw is None:
        return DEFAULT_MAX_FIELD
    try:
        return int(raw)
    except ValueError:
        raise FieldSizeError(f"{MAX_FIELD_ENV} must be an integer, got {raw!r}") from None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, math.isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _least_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError("unreachable: every prime has a primitive root")


def _power_table(p: int, low: tuple[int, ...], count: int) -> np.ndarray:
    """Packed ints of xi^0 .. xi^(count-1), xi a root of x^d + sum(low[i] x^i).

    Powers are produced in blocks of L with the companion matrix so the
    sequential part is only O(sqrt(count)).
    """
    d = len(low)
    comp = np.zeros((d, d), dtype=np.int64)
    for i in range(1, d):
        comp[i, i - 1] = 1
    for i in range(d):
        comp[i, d - 1] = (-low[i]) % p

    block = math.isqrt(count) + 1
    base = np.zeros((block, d), dtype=np.int64)
    vec = np.zeros(d, dtype=np.int64)
    vec[0] = 1
    for i in range(block):
        base[i] = vec
        vec = comp @ vec % p

    step = np.eye(d, dtype=np.int64)
    sq, e = comp.copy(), block
    while e:
        if e & 1:
            step = step @ sq % p
        sq = sq @ sq % p
        e >>= 1

    digits = np.empty((count + block, d), dtype=np.int64)
    cur = base
    for start in range(0, count, block):
        digits[start:start + block] = cur
        cur = cur @ step.T % p
    weights = p ** np.arange(d, dtype=np.int64)
    return digits[:count] @ weights


def _is_primitive(p: int, low: tuple[int, ...]) -> bool:
    n = p ** len(low)
    if n - 1 > 2**22:
        raise FieldSizeError("primitive test limited to desk-scale fields")
    table = _power_table(p, low, n - 1)
    return len(np.unique(table)) == n - 1 and not (table == 0).any()


def _search_primitive(p: int, d: int) -> tuple[int, ...]:
    """First primitive polynomial in lexicographic coefficient order."""
    for code in range(1, p**d):
        low = tuple((code // p**i) % p for i in range(d))
        if low[0] != 0 and _is_primitive(p, low):
            return low
    raise FieldConstructionError(f"internal error: no primitive polynomial of degree {d} over GF({p})")


def conway_polynomial(p: int, d: int) -> tuple[int, ...]:
    """Low-order coefficients (c_0..c_{d-1}) of the monic Conway polynomial.

    Degree one is computed (x - g for the least primitive root g).  Higher
    degrees come from the built-in table; pairs absent from it fall back to
    a deterministic primitive-polynomial search.
    """
    if d == 1:
        return ((-_least_primitive_root(p)) % p,)
    try:
        return CONWAY[(p, d)]
    except KeyError:
        return _search_primitive(p, d)


class FieldTower:
    """The pair (F, B) with F = GF(p^(m t)) and B = GF(p^m).

    Instances are immutable after construction and safe to share.  Use
    :func:`field_tower` to get a cached instance.
    """

    def __init__(self, p: int, m: int, t: int, poly: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise FieldConstructionError(f"characteristic {p} is not prime")
        if m < 1 or t < 1:
            raise FieldConstructionError("m and t must be >= 1")
        degree = m * t
        cap = max_field_size()
        if p**degree > cap:
            raise FieldSizeError(f"|F| = {p}^{degree} exceeds cap {cap}")

        self.p, self.m, self.t = p, m, t
        self.degree = degree
        self.order = p**degree
        self.sub_order = p**m
        self.poly = tuple(poly) if poly is not None else conway_polynomial(p, degree)
        if len(self.poly) != degree:
            raise FieldConstructionError("defining polynomial has the wrong degree")

        N = self.order - 1
        powers = _power_table(p, self.poly, N)
        log = np.full(self.order, -1, dtype=np.int64)
        log[powers] = np.arange(N, dtype=np.int64)
        if (log[1:] < 0).any():
            # xi does not generate F*: the polynomial is reducible or not primitive
            raise FieldConstructionError(f"polynomial {self.poly} over GF({p}) is not primitive")
        self.exp_array = np.concatenate([powers, powers])
        self.log_array = log
        self._exp = self.exp_array.tolist()
        self._log = log.tolist()
        self.trace_array = self._trace_table()
        self._trace = self.trace_array.tolist()

    # -- basic structure -------------------------------------------------

    def __repr__(self) -> str:
        return f"FieldTower(GF({self.order}) / GF({self.sub_order}))"

    @property
    def name(self) -> str:
        return f"GF({self.order})/GF({self.sub_order})"

    @property
    def generator(self) -> int:
        return self._exp[1] if self.order > 2 else 1

    @property
    def mult_order(self) -> int:
        return self.order - 1

    def char_divides_t(self) -> bool:
        return self.t % self.p == 0

    def elements(self) -> list[int]:
        """Canonical order: 0, 1, xi, xi^2, ..., xi^(n-2)."""
        return [0] + self._exp[: self.order - 1]

    def index_of(self, a: int) -> int:
        """Position of ``a`` in :meth:`elements`."""
        return 0 if a == 0 else self._log[a] + 1

    def exp(self, k: int) -> int:
        return self._exp[k % (self.order - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("log of zero")
        return self._log[a]

    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.degree or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"bad coefficient vector {coeffs!r}")
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    # -- scalar arithmetic ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        # a + b = a * (1 + b/a); adding 1 touches only the constant digit
        la = self._log[a]
        v = self._exp[self._log[b] - la + self.order - 1]
        c0 = v % self.p
        s = v - c0 + (c0 + 1) % self.p
        if s == 0:
            return 0
        return self._exp[la + self._log[s]]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self.mul(a, self.p - 1)

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + self.name)
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in " + self.name)
        if a == 0:
            return 0
        return self._exp[self._log[a] - self._log[b] + self.order - 1]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def sum(self, values) -> int:
        total = 0
        for v in values:
            total = self.add(total, v)
        return total

    def trace(self, a: int) -> int:
        """Tr_{F/B}(a), an element of B."""
        return self._trace[a]

    def trace_by_definition(self, a: int) -> int:
        """sum_{i<t} a^(|B|^i), evaluated with square-and-multiply."""
        total, term = 0, a
        for _ in range(self.t):
            total = self.add(total, term)
            term = self.pow(term, self.sub_order)
        return total

    def is_subfield_element(self, a: int) -> bool:
        return self.pow(a, self.sub_order) == a

    def subfield_elements(self) -> list[int]:
        return [a for a in self.elements() if self.is_subfield_element(a)]

    # -- vectorised arithmetic ------------------------------------------

    def _one_plus_vec(self, v: np.ndarray) -> np.ndarray:
        c0 = v % self.p
        return v - c0 + (c0 + 1) % self.p

    def add_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        a, b = np.broadcast_arrays(a, b)
        safe_a = np.where(a == 0, 1, a)
        ratio = self.div_vec(b, safe_a)
        s = self._one_plus_vec(ratio)
        out = self.mul_vec(safe_a, s)
        out = np.where(a == 0, b, out)
        return out

    def neg_vec(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        return self.mul_vec(a, self.p - 1)

    def sub_vec(self, a, b) -> np.ndarray:
        return self.add_vec(a, self.neg_vec(b))

    def mul_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        idx = self.log_array[a] + self.log_array[b]
        out = self.exp_array[np.where(idx < 0, 0, idx)]
        return np.where((a == 0) | (b == 0), 0, out)

    def div_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if (b == 0).any():
            raise ZeroDivisionError("division by zero in " + self.name)
        idx = self.log_array[a] - self.log_array[b] + self.order - 1
        out = self.exp_array[np.where(a == 0, 0, idx)]
        return np.where(a == 0, 0, out)

    def sum_vec(self, a) -> int:
        """Sum of all entries; addition is digit-wise mod p on the packed integers."""
        a = np.asarray(a, dtype=np.int64).ravel()
        if self.p == 2:
            return int(np.bitwise_xor.reduce(a)) if a.size else 0
        total, scale = 0, 1
        for _ in range(self.degree):
            total += int((a // scale % self.p).sum() % self.p) * scale
            scale *= self.p
        return total

    def trace_vec(self, a) -> np.ndarray:
        return self.trace_array[np.asarray(a, dtype=np.int64)]

    def _trace_table(self) -> np.ndarray:
        # Tr(a) = a + a^q + ... + a^(q^(t-1)), all elements at once
        xs = np.arange(self.order, dtype=np.int64)
        logs = self.log_array[xs]
        N = self.order - 1
        total = np.zeros(self.order, dtype=np.int64)
        for i in range(self.t):
            e = pow(self.sub_order, i, N) if N > 1 else 0
            term = self.exp_array[(logs * e) % max(N, 1)]
            term = np.where(xs == 0, 0, term)
            total = self.add_vec(total, term)
        return total

    # -- textual notation ------------------------------------------------

    _POWER = re.compile(r"^\s*(?:x|xi)\s*(?:\^\s*(-?\d+))?\s*$")

    def parse(self, text: str) -> int:
        """Parse "0", "1", "x^k" (power of xi) or "[c0,c1,...]" (little-endian)."""
        s = str(text).strip()
        if s == "0":
            return 0
        if s == "1":
            return 1
        m = self._POWER.match(s)
        if m:
            return self.exp(int(m.group(1)) if m.group(1) is not None else 1)
        if s.startswith("[") and s.endswith("]"):
            body = s[1:-1].strip()
            parts = [int(c) for c in body.split(",")] if body else []
            return self.from_coeffs(parts)
        raise ValueError(f"cannot parse field element {text!r}")

    def format(self, a: int) -> str:
        if a == 0:
            return "0"
        k = self._log[a]
        return "1" if k == 0 else f"x^{k}"


@functools.lru_cache(maxsize=None)
def _cached_tower(p: int, m: int, t: int, cap: int) -> FieldTower:
    return FieldTower(p, m, t)


def field_tower(p: int, m: int, t: int) -> FieldTower:
    """Cached :class:`FieldTower` with the canonical (Conway) defining polynomial."""
    return _cached_tower(p, m, t, max_field_size())
