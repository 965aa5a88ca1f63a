import itertools

import numpy as np
import pytest

from tracerepair.errors import DegenerateInput, DegreeError, DivisibilityError, NotCorrectable, PatternError, RankError, ShapeError
from tracerepair.field import field_tower
from tracerepair.linalg import Subspace, root_space, trace_kernel, triple_root_space
from tracerepair.repair import (
    SCHEMES,
    activation_index,
    correctable_mask,
    helping_trace,
    is_correctable_triple,
    repair_naive,
    repair_single_gw,
    repair_three_centralized,
    repair_three_distributed,
    repair_three_fallback,
    repair_two_centralized,
    repair_two_distributed_I,
    repair_two_distributed_II,
)
from tracerepair.rs import RSCode, check_value


def make(p, m, t, seed=0):
    F = field_tower(p, m, t)
    return F, RSCode.full_length(F), np.random.default_rng(seed)


def codeword(code, rng):
    return code.encode([int(v) for v in rng.integers(0, code.tower.order, size=code.k)])


def erase(cw, pattern):
    return [None if i in pattern else v for i, v in enumerate(cw)]


def assert_sound_ledger(res, distributed):
    """Only survivors and replacements send; replacements talk only in distributed schemes."""
    erased = set(res.pattern)
    for tr in res.ledger.transfers:
        kind, pos = tr.source[:4], int(tr.source[4:])
        if kind == "node":
            assert pos not in erased, tr
            assert tr.kind == "download"
        else:
            assert tr.source.startswith("repl") and pos in erased
            # a replacement rebuilt by the fallback acts as a helper afterwards
            assert tr.kind == "exchange" or pos == res.info.get("naive_position")
    if not distributed:
        assert res.ledger.exchanges == 0


def test_helping_trace_gf4_values():
    F = field_tower(2, 1, 2)
    code = RSCode.full_length(F)
    x = F.generator
    for a1, a2, b1, b2 in itertools.product((0, 1), repeat=4):
        a, b = F.add(a1, F.mul(a2, x)), F.add(b1, F.mul(b2, x))
        cw = code.encode([a, F.sub(b, a)])
        assert helping_trace(F, cw[0], 0, 1) == a2
        x2 = F.mul(x, x)
        assert helping_trace(F, cw[code.position(x2)], x2, 1) == (a2 + b1 + b2) % 2
    assert helping_trace(F, 0, x, 1) == 0
    with pytest.raises(DegenerateInput):
        helping_trace(F, 1, x, x)


def test_gw_exhaustive_gf16():
    F, code, rng = make(2, 1, 4)
    for _ in range(20):
        cw = codeword(code, rng)
        for pos in range(code.n):
            res = repair_single_gw(code, erase(cw, {pos}))
            assert res.recovered == {pos: cw[pos]}
            assert res.bandwidth == 15
            assert sorted(res.ledger.by_source().values()) == [1] * 15
            assert_sound_ledger(res, False)


def test_gw_custom_basis_and_rank_check():
    F, code, rng = make(3, 1, 3)
    cw = codeword(code, rng)
    basis = [F.exp(5), F.exp(9), F.exp(17)]
    res = repair_single_gw(code, erase(cw, {4}), basis=basis)
    assert res.recovered[4] == cw[4]
    with pytest.raises(RankError):
        repair_single_gw(code, erase(cw, {4}), basis=[1, 2, F.exp(1)])


def test_naive_scheme_ledger():
    F, code, rng = make(2, 1, 4)
    cw = codeword(code, rng)
    res = repair_naive(code, erase(cw, {3}))
    assert res.recovered[3] == cw[3]
    assert res.bandwidth == 32 and len(res.ledger.transfers) == 8


def test_dist1_gf16_phases():
    F, code, rng = make(2, 1, 4)
    for a, b in itertools.permutations(range(16), 2):
        if (a + b) % 5:
            continue
        cw = codeword(code, rng)
        res = repair_two_distributed_I(code, erase(cw, {a, b}), (a, b))
        assert res.recovered == {a: cw[a], b: cw[b]}
        assert (res.info["phase1"], res.info["phase2"]) == (22, 15)
        assert_sound_ledger(res, True)


def test_dist1_without_divisibility():
    F, code, rng = make(2, 1, 3)
    assert not F.char_divides_t()
    for a, b in itertools.combinations(range(8), 2):
        cw = codeword(code, rng)
        res = repair_two_distributed_I(code, erase(cw, {a, b}))
        assert res.recovered == {a: cw[a], b: cw[b]}
        assert res.bandwidth == 17 and res.info["phase1"] == 10


def test_dist1_extra_traces_use_scaled_check():
    F, code, rng = make(2, 1, 4)
    cw = codeword(code, rng)
    res = repair_two_distributed_I(code, erase(cw, {2, 7}), (2, 7))
    extra = [k for k in res.inputs if k[0] == "g"]
    assert len(extra) == code.k
    u1, ut = res.transcript[0].element, res.transcript[3].element
    for _, pos, center in extra:
        d = F.sub(code.point(pos), code.point(center))
        assert res.inputs[("g", pos, center)] == F.trace(F.div(F.mul(F.div(ut, u1), cw[pos]), d))


def test_central2_gf16_and_interference():
    F, code, rng = make(2, 1, 4)
    for a, b in itertools.combinations(range(16), 2):
        cw = codeword(code, rng)
        res = repair_two_centralized(code, erase(cw, {a, b}), (a, b))
        assert res.recovered == {a: cw[a], b: cw[b]}
        assert res.bandwidth == 28
        assert set(res.ledger.by_source().values()) == {2}
        assert_sound_ledger(res, False)
        canceled = [rec for rec in res.transcript if rec.stage == "canceled"]
        assert [rec.check for rec in canceled] == ["p4", "q4"]
        for rec in canceled:
            (it,) = rec.interference
            # the interfering term equals the directly computed Tr(p(other) f(other))
            assert it.value == F.trace(F.mul(it.check_value, cw[it.position]))
            assert rec.trace == F.trace(F.mul(rec.element, cw[rec.target]))
        for rec in res.transcript:
            if rec.stage == "independent":
                assert rec.interference == ()


def test_central2_gf256_over_gf4():
    F, code, rng = make(2, 2, 4)
    for _ in range(10):
        a, b = (int(v) for v in rng.choice(code.n, size=2, replace=False))
        cw = codeword(code, rng)
        res = repair_two_centralized(code, erase(cw, {a, b}), (a, b))
        assert res.recovered == {a: cw[a], b: cw[b]}
        assert res.bandwidth == 2 * 254


def test_dist2_gf16_all_pairs():
    F, code, rng = make(2, 1, 4)
    for a, b in itertools.combinations(range(16), 2):
        cw = codeword(code, rng)
        res = repair_two_distributed_II(code, erase(cw, {a, b}))
        assert res.recovered == {a: cw[a], b: cw[b]}
        assert res.bandwidth == 30 and res.ledger.exchanges == 2
        assert res.ledger.by_dest() == {f"repl{a}": 15, f"repl{b}": 15}
        for (snd, rcv), _ in res.exchange_sources.items():
            d = F.sub(code.point(snd), code.point(rcv))
            assert res.inputs[("x", snd, rcv)] == F.trace(F.div(cw[snd], d))
        assert_sound_ledger(res, True)


@pytest.mark.parametrize("fn", [repair_two_centralized, repair_two_distributed_II])
def test_two_erasure_divisibility(fn):
    F, code, rng = make(2, 1, 3)
    cw = codeword(code, rng)
    with pytest.raises(DivisibilityError):
        fn(code, erase(cw, {0, 1}))


def test_correctable_triple_examples():
    F = field_tower(2, 1, 4)
    for a, b, c in itertools.permutations(range(16), 3):
        if (a * 7 + b * 3 + c) % 11 == 0:
            assert is_correctable_triple(F, a, b, c)
    F = field_tower(2, 1, 6)
    assert sum(is_correctable_triple(F, 0, 1, g) for g in range(2, 64)) == 60
    for kappa in trace_kernel(F).members() - {0, 1}:
        a, b = F.exp(3), F.exp(20)
        g = F.sub(b, F.div(F.sub(b, a), kappa))
        assert F.div(F.sub(b, a), F.sub(b, g)) == kappa
        assert is_correctable_triple(F, a, b, g)
    with pytest.raises(DegenerateInput):
        is_correctable_triple(F, 1, 1, 2)


def test_correctable_mask_matches_scalar():
    F = field_tower(3, 1, 3)
    gammas = [g for g in range(27) if g not in (4, 9)]
    mask = correctable_mask(F, 4, 9, gammas)
    assert mask.tolist() == [is_correctable_triple(F, 4, 9, g) for g in gammas]


def triple_positions(code, rng, count):
    for _ in range(count):
        yield tuple(int(v) for v in rng.choice(code.n, size=3, replace=False))


@pytest.mark.parametrize("distributed", [False, True])
def test_three_gf16_all_triples(distributed):
    F, code, rng = make(2, 1, 4)
    fn = repair_three_distributed if distributed else repair_three_centralized
    for pat in itertools.combinations(range(16), 3):
        cw = codeword(code, rng)
        res = fn(code, erase(cw, set(pat)), pat)
        assert res.recovered == {p: cw[p] for p in pat}
        assert res.bandwidth == (45 if distributed else 39)
        assert res.info["s"] == F.t - 2
        assert_sound_ledger(res, distributed)


def test_three_zero_codeword():
    F, code, _ = make(2, 1, 4)
    res = repair_three_centralized(code, erase([0] * 16, {1, 5, 9}))
    assert res.recovered == {1: 0, 5: 0, 9: 0}


def test_round_one_support_pattern():
    F, code, rng = make(2, 1, 4)
    cw = codeword(code, rng)
    pat = (2, 6, 13)
    res = repair_three_centralized(code, erase(cw, set(pat)), pat)
    pts = [code.point(i) for i in pat]
    for rec in res.transcript:
        if rec.stage != "round1":
            continue
        center = code.point(rec.target)
        others = [x for x in pts if x != center]
        assert all(check_value(F, rec.element, center, x) == 0 for x in others)
        assert rec.interference == ()


def test_cycle_traces_match_direct_computation():
    F, code, rng = make(2, 1, 4)
    for pat in list(triple_positions(code, rng, 30)):
        cw = codeword(code, rng)
        for fn in (repair_three_centralized, repair_three_distributed):
            res = fn(code, erase(cw, set(pat)), pat)
            stages = [rec.stage for rec in res.transcript]
            assert stages.count("activation") == 2 and stages.count("cycle1") == 2 and stages.count("cycle2") == 2
            for rec in res.transcript:
                assert rec.trace == F.trace(F.mul(rec.element, cw[rec.target]))
                for it in rec.interference:
                    assert it.value == F.trace(F.mul(it.check_value, cw[it.position]))
            if fn is repair_three_distributed:
                for (snd, rcv) in res.exchange_sources:
                    d = F.sub(code.point(snd), code.point(rcv))
                    assert res.inputs[("x", snd, rcv)] == F.trace(F.div(cw[snd], d))
                assert res.ledger.exchanges == 6


def test_activation_follows_first_zero_trace_ratio():
    F, code, rng = make(2, 1, 4)
    cw = codeword(code, rng)
    pat = (0, 1, 2)
    res = repair_three_centralized(code, erase(cw, set(pat)), pat)
    a, b, c = (code.point(i) for i in pat)
    idx = activation_index(F, a, b, c)
    assert res.info["activation"] == ("(b-a)/(b-c)", "(c-b)/(c-a)", "(a-c)/(a-b)")[idx]
    assert res.info["cycle1"][0] in ("R1", "P1", "Q1")
    assert set(res.info["extension"]) == {"P1", "P2", "Q1", "Q2", "R1", "R2"}


def test_extension_elements_generate_root_spaces():
    F, code, rng = make(2, 1, 6)
    cw = codeword(code, rng)
    pat = next(p for p in triple_positions(code, rng, 200)
               if is_correctable_triple(F, *(code.point(i) for i in p)))
    res = repair_three_centralized(code, erase(cw, set(pat)), pat)
    assert res.recovered == {p: cw[p] for p in pat}
    a, b, c = (code.point(i) for i in pat)
    W = triple_root_space(F, a, b, c).basis
    ext = {k: F.parse(v) for k, v in res.info["extension"].items()}
    assert Subspace.span(F, W + (ext["P1"],)) == root_space(F, a, b)
    assert Subspace.span(F, W + (ext["P2"],)) == root_space(F, c, a)
    assert Subspace.span(F, W + (ext["Q1"],)) == root_space(F, b, c)
    assert Subspace.span(F, W + (ext["R2"],)) == root_space(F, b, c)


def coincident_triples(F, code):
    """Triples whose three root spaces coincide (triple space of dimension t - 1)."""
    out = []
    for pat in itertools.combinations(range(code.n), 3):
        if triple_root_space(F, *(code.point(i) for i in pat)).dim == F.t - 1:
            out.append(pat)
    return out


def test_larger_triple_space_never_occurs_over_prime_two():
    F, code, _ = make(2, 1, 4)
    assert coincident_triples(F, code) == []


@pytest.mark.parametrize("p,m,t", [(2, 2, 2), (2, 2, 4)])
@pytest.mark.parametrize("distributed", [False, True])
def test_three_round_three_branch(p, m, t, distributed):
    F, code, rng = make(p, m, t, seed=4)
    fn = repair_three_distributed if distributed else repair_three_centralized
    if F.order <= 16:
        pats = coincident_triples(F, code)
    else:
        lam = next(v for v in F.subfield_elements() if v not in (0, 1))
        pats = []
        for _ in range(6):
            a, b = (int(v) for v in rng.choice(F.order, size=2, replace=False))
            c = F.sub(b, F.div(F.sub(b, a), lam))
            pats.append(tuple(code.position(x) for x in (a, b, c)))
    assert pats
    for pat in pats:
        cw = codeword(code, rng)
        res = fn(code, erase(cw, set(pat)), pat)
        assert res.info["s"] == F.t - 1 and "round3" in res.info
        assert res.recovered == {q: cw[q] for q in pat}
        assert res.bandwidth == (3 * (code.n - 1) if distributed else 3 * (code.n - 3))
        for rec in res.transcript:
            assert rec.trace == F.trace(F.mul(rec.element, cw[rec.target]))
        if distributed:
            assert res.ledger.by_dest() == {f"repl{q}": code.n - 1 for q in pat}


def non_correctable_gf64():
    F, code, rng = make(2, 1, 6)
    bad = [g for g in range(2, 64) if not is_correctable_triple(F, 0, 1, code.point(g))]
    return F, code, rng, bad


def test_not_correctable_raises():
    F, code, rng, bad = non_correctable_gf64()
    assert len(bad) == 2
    cw = codeword(code, rng)
    for fn in (repair_three_centralized, repair_three_distributed):
        with pytest.raises(NotCorrectable):
            fn(code, erase(cw, {0, 1, bad[0]}), (0, 1, bad[0]))


def test_fallback_recovers_non_correctable():
    F, code, rng, bad = non_correctable_gf64()
    for g in bad:
        cw = codeword(code, rng)
        pat = (0, 1, g)
        res = repair_three_fallback(code, erase(cw, set(pat)), pat)
        assert res.recovered == {p: cw[p] for p in pat}
        assert res.scheme == "fallback" and res.info["naive_position"] == g
        assert res.bandwidth == code.k * F.t + 2 * (code.n - 2)
        assert f"node{g}" not in res.ledger.by_source()
        assert_sound_ledger(res, False)


def test_fallback_without_divisibility():
    F, code, rng = make(2, 1, 3)
    cw = codeword(code, rng)
    res = repair_three_fallback(code, erase(cw, {0, 3, 5}), (0, 3, 5))
    assert res.recovered == {p: cw[p] for p in (0, 3, 5)}
    assert res.info["inner_scheme"] == "dist1"
    assert res.bandwidth == code.k * F.t + 17


def test_three_divisibility():
    F, code, rng = make(2, 1, 3)
    cw = codeword(code, rng)
    with pytest.raises(DivisibilityError):
        repair_three_centralized(code, erase(cw, {0, 1, 2}))


def test_pattern_validation_order():
    F, code, rng = make(2, 1, 4)
    cw = codeword(code, rng)
    big = RSCode.full_length(F, k=9)
    with pytest.raises(DegreeError):
        repair_single_gw(big, erase(cw, {0}))
    with pytest.raises(ShapeError):
        repair_single_gw(code, erase(cw, {0})[:-1])
    with pytest.raises(PatternError):
        repair_two_centralized(code, erase(cw, {0, 1}), (0, 0))
    with pytest.raises(PatternError):
        repair_two_centralized(code, erase(cw, {0, 1}), (0, 2))
    with pytest.raises(PatternError):
        repair_single_gw(code, erase(cw, {0, 1}))
    with pytest.raises(PatternError):
        repair_three_centralized(code, erase(cw, {0, 1}))
    F4, code4, rng4 = make(2, 1, 2)
    with pytest.raises(PatternError):
        repair_three_fallback(code4, erase(codeword(code4, rng4), {0, 1, 2}))


def test_report_has_stable_fields():
    F, code, rng = make(2, 1, 4)
    cw = codeword(code, rng)
    res = repair_two_distributed_II(code, erase(cw, {3, 8}))
    rep = res.to_report(F, truth={3: cw[3], 8: cw[8]})
    assert list(rep) == ["scheme", "pattern", "recovered", "bandwidth", "downloads", "exchanges",
                         "ledger", "transcript", "info", "success"]
    assert rep["success"] and rep["bandwidth"] == 30 and rep["exchanges"] == 2
    assert rep["ledger"][0] == {"source": "node0", "dest": "repl3", "count": 1, "kind": "download",
                                "note": "helping trace for 3"}
    assert {"check", "stage", "target", "element", "rhs", "trace", "interference"} == set(rep["transcript"][0])
    wrong = res.to_report(F, truth={3: F.add(cw[3], 1), 8: cw[8]})
    assert not wrong["success"]


def test_scheme_registry():
    assert set(SCHEMES) == {"naive", "gw", "dist1", "central2", "dist2", "central3", "dist3"}
