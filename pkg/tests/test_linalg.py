import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tracerepair.errors import DegenerateInput, RankError
from tracerepair.field import field_tower
from tracerepair.linalg import (
    Subspace,
    b_coords,
    complete_basis,
    dual_basis,
    express_in_span,
    rank,
    root_space,
    trace_kernel,
    triple_root_space,
)
from tracerepair.rs import RSCode, check_value


def brute_zero_set(F, deltas):
    """All z in F with Tr(z d) = 0 for each d, by enumeration."""
    return {z for z in range(F.order) if all(F.trace(F.mul(z, d)) == 0 for d in deltas)}


def span_by_enumeration(F, gens):
    B = F.subfield_elements()
    out = set()
    for cs in itertools.product(B, repeat=len(gens)):
        out.add(F.sum(F.mul(c, g) for c, g in zip(cs, gens)))
    return out


def test_gf16_kernel_is_span_of_low_powers():
    F = field_tower(2, 1, 4)
    x = F.generator
    K = trace_kernel(F)
    assert K.dim == 3
    assert K.members() == span_by_enumeration(F, [1, x, F.mul(x, x)])


def test_trivial_kernel():
    F = field_tower(2, 1, 1)
    assert trace_kernel(F).dim == 0
    assert trace_kernel(F).members() == {0}


def test_gf4_kernel():
    F = field_tower(2, 1, 2)
    assert trace_kernel(F).members() == {0, 1}


def test_gf4_root_space_zero_xi():
    F = field_tower(2, 1, 2)
    x = F.generator
    assert root_space(F, 0, x).members() == {0, F.mul(x, x)}


def test_gf16_root_space_zero_one():
    F = field_tower(2, 1, 4)
    assert root_space(F, 0, 1) == trace_kernel(F)


def test_degenerate_spaces():
    F = field_tower(2, 1, 4)
    with pytest.raises(DegenerateInput):
        root_space(F, 3, 3)
    with pytest.raises(DegenerateInput):
        triple_root_space(F, 1, 2, 1)


@pytest.mark.parametrize("p,m,t", [(2, 1, 2), (2, 1, 4), (2, 2, 2), (3, 1, 3), (2, 1, 6), (2, 2, 3), (2, 3, 2), (3, 1, 5), (5, 1, 3), (2, 1, 12), (2, 2, 6), (3, 1, 7), (2, 3, 4), (2, 4, 3)])
def test_kernel_dimension_exhaustive(p, m, t):
    F = field_tower(p, m, t)
    K = trace_kernel(F)
    assert K.dim == t - 1
    assert len(brute_zero_set(F, [1])) == F.sub_order ** (t - 1)
    for z in K.basis:
        assert F.trace(z) == 0


@pytest.mark.parametrize("p,m,t", [(2, 1, 4), (3, 1, 3), (2, 2, 3)])
def test_root_space_matches_scaled_kernel(p, m, t):
    F = field_tower(p, m, t)
    K = trace_kernel(F).members()
    rng = np.random.default_rng(7)
    for _ in range(12):
        a, b = (int(v) for v in rng.choice(F.order, size=2, replace=False))
        R = root_space(F, a, b)
        assert R.dim == t - 1
        d = F.inv(F.sub(b, a))
        assert R.members() == {F.mul(d, k) for k in K}
        assert R.members() == brute_zero_set(F, [F.sub(b, a)])
        assert R == root_space(F, b, a)
        for z in R.basis:
            assert F.trace(F.mul(z, a)) == F.trace(F.mul(z, b))


@pytest.mark.parametrize("p,m,t", [(2, 1, 4), (3, 1, 3), (2, 2, 2)])
def test_triple_space_is_intersection(p, m, t):
    F = field_tower(p, m, t)
    for a, b, c in itertools.islice(itertools.permutations(range(F.order), 3), 0, None, 7):
        W = triple_root_space(F, a, b, c)
        assert W.dim in (t - 2, t - 1)
        inter = root_space(F, a, b).members() & root_space(F, b, c).members() & root_space(F, c, a).members()
        assert W.members() == inter


def test_gf16_triple_zero_one_xi():
    F = field_tower(2, 1, 4)
    x = F.generator
    want = brute_zero_set(F, [1, F.sub(x, 1)])
    W = triple_root_space(F, 0, 1, x)
    assert W.members() == want
    assert W.dim == 2


def test_coincident_root_spaces_give_larger_triple_space():
    # the ratio (b-a)/(b-c) lies in B \ {0, 1} only when |B| > 2
    F = field_tower(2, 2, 2)
    B = F.subfield_elements()
    lam = next(v for v in B if v not in (0, 1))
    a, b = 0, 1
    c = F.sub(b, F.div(F.sub(b, a), lam))
    assert F.div(F.sub(b, a), F.sub(b, c)) == lam
    assert triple_root_space(F, a, b, c).dim == F.t - 1
    assert root_space(F, a, b) == root_space(F, b, c)


def test_canonical_form_independent_of_generators():
    F = field_tower(2, 1, 4)
    x = F.generator
    s1 = Subspace.span(F, [1, x, F.mul(x, x)])
    s2 = Subspace.span(F, [F.add(1, x), x, F.add(F.mul(x, x), 1), 1])
    assert s1 == s2 == trace_kernel(F)


def test_complete_basis_examples():
    F = field_tower(2, 1, 4)
    x = F.generator
    got = complete_basis(F, trace_kernel(F)).elements
    assert got == (1, x, F.pow(x, 2), F.pow(x, 3))
    full = (1, x, F.pow(x, 2), F.pow(x, 3))
    assert complete_basis(F, full).elements == full
    F4 = field_tower(2, 1, 2)
    assert complete_basis(F4, [1]).elements == (1, F4.generator)


def test_complete_basis_rejects_dependent_prefix():
    F = field_tower(2, 1, 4)
    with pytest.raises(RankError):
        complete_basis(F, [1, F.generator, F.add(1, F.generator)])


def test_complete_basis_deterministic():
    F = field_tower(3, 1, 3)
    pre = root_space(F, 2, 5).basis
    assert complete_basis(F, pre) == complete_basis(F, pre)
    assert complete_basis(F, pre).elements[: len(pre)] == pre


def test_gf4_dual_basis():
    F = field_tower(2, 1, 2)
    x = F.generator
    assert dual_basis(F, [1, x]).dual == (F.mul(x, x), 1)


def gram_is_identity(F, us, ds):
    return all(F.trace(F.mul(u, d)) == (1 if i == j else 0) for i, u in enumerate(us) for j, d in enumerate(ds))


def test_gf16_dual_power_basis():
    F = field_tower(2, 1, 4)
    us = [F.exp(i) for i in range(4)]
    ds = dual_basis(F, us).dual
    assert gram_is_identity(F, us, ds)
    # brute force: the dual is unique
    for j in range(4):
        hits = [d for d in range(16) if all(F.trace(F.mul(u, d)) == (i == j) for i, u in enumerate(us))]
        assert hits == [ds[j]]


def test_dual_rejects_rank_deficient():
    F = field_tower(2, 1, 4)
    with pytest.raises(RankError):
        dual_basis(F, [1, 1, F.exp(2), F.exp(3)])
    with pytest.raises(RankError):
        b_coords(F, 5, [1, F.exp(1)])


def test_b_coords_examples():
    F = field_tower(2, 1, 4)
    us = [F.exp(i) for i in range(4)]
    assert b_coords(F, F.exp(4), us) == [1, 1, 0, 0]
    assert b_coords(F, 0, us) == [0, 0, 0, 0]
    F4 = field_tower(2, 1, 2)
    x = F4.generator
    for b1, b2 in itertools.product((0, 1), repeat=2):
        b = F4.add(b1, F4.mul(b2, x))
        assert b_coords(F4, b, [1, x]) == [b1, b2]


bases = st.sampled_from([(2, 1, 4), (3, 1, 3), (2, 2, 3), (5, 1, 2), (2, 1, 8)])


@settings(max_examples=60, deadline=None)
@given(bases, st.data())
def test_dual_involution_and_reconstruction(tw, data):
    F = field_tower(*tw)
    el = st.integers(1, F.order - 1)
    us = data.draw(st.lists(el, min_size=F.t, max_size=F.t).filter(lambda u: rank(F, u) == F.t))
    tb = dual_basis(F, us)
    assert gram_is_identity(F, us, tb.dual)
    assert dual_basis(F, tb.dual).dual == tuple(us)
    a = data.draw(st.integers(0, F.order - 1))
    assert F.sum(F.mul(F.trace(F.mul(u, a)), d) for u, d in zip(us, tb.dual)) == a
    cs = b_coords(F, a, us)
    assert F.sum(F.mul(c, u) for c, u in zip(cs, us)) == a


def test_express_in_span_table_entry():
    # p4(1) = 1 lies in the span of q1(1), q2(1), q3(1) for the GF(16) checks
    F = field_tower(2, 1, 4)
    basis = complete_basis(F, trace_kernel(F)).elements
    gens = [check_value(F, u, 1, 1) for u in basis[:3]]
    p4_at_1 = check_value(F, basis[3], 0, 1)
    assert p4_at_1 == 1
    cs = express_in_span(F, p4_at_1, gens)
    assert cs is not None
    assert F.sum(F.mul(c, g) for c, g in zip(cs, gens)) == 1
    assert RSCode.full_length(F).k == 8


def test_express_in_span_basics():
    F = field_tower(2, 1, 4)
    gens = [F.exp(1), F.exp(5)]
    assert express_in_span(F, F.exp(1), gens) == [1, 0]
    assert express_in_span(F, 0, gens) == [0, 0]
    assert express_in_span(F, 1, [F.exp(1)]) is None


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(2, 1, 4), (3, 1, 3), (2, 2, 2)]), st.data())
def test_express_in_random_plane(tw, data):
    F = field_tower(*tw)
    el = st.integers(1, F.order - 1)
    g1, g2 = data.draw(el), data.draw(el)
    x = data.draw(st.integers(0, F.order - 1))
    plane = span_by_enumeration(F, [g1, g2])
    cs = express_in_span(F, x, [g1, g2])
    assert (cs is not None) == (x in plane)
    if cs is not None:
        assert F.add(F.mul(cs[0], g1), F.mul(cs[1], g2)) == x
        assert all(F.is_subfield_element(c) for c in cs)


def test_rank_matches_span_size():
    F = field_tower(3, 1, 3)
    rng = np.random.default_rng(3)
    for _ in range(30):
        gens = [int(v) for v in rng.integers(0, F.order, size=int(rng.integers(1, 4)))]
        assert F.sub_order ** rank(F, gens) == len(span_by_enumeration(F, gens))
