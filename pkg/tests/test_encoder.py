import random

import pytest

from kalikow.algebra import eval_term, enumerate_term, layered_algebra, predecessor_algebra, successor_algebra
from kalikow.encoder import (
    CompactView,
    EncoderError,
    LiteralView,
    PoolBudgetError,
    Session,
    compute_cutpoints,
    compute_fg,
    compute_lmk,
    compute_u,
    decode_replay,
    encode_F0,
    encode_Fn,
    eta_bits,
    eta_prefix,
    monotone_blocks,
    monotone_encode,
    pool_by_composition,
    term_pool,
)
from kalikow.hf import Bits, hf_to_code
from kalikow.ordinal import parse_ordinal
from kalikow.sequences import parse_spec

from oracles import brute_cutpoints, brute_fg, brute_u, pred_closure

PRED = predecessor_algebra()


def random_prefix(rng, n, top=6):
    return [rng.randint(0, top) for _ in range(n)]


def test_u_examples():
    assert compute_u(PRED, [7]) == {0}
    assert compute_u(PRED, [3, 1, 4, 1, 5]) == {0, 4}
    assert compute_u(PRED, [5, 4, 3, 2, 1]) == {0, 1, 2, 3, 4}


def test_fg_examples():
    assert compute_fg(PRED, [4, 4], 0) == (2, 0)
    assert compute_fg(PRED, [3, 1, 4, 1, 5], 1) == (3, 3)
    assert compute_fg(PRED, [2, 1, 3, 1, 4], 1) == (3, 2)
    with pytest.raises(EncoderError):
        compute_fg(PRED, [3, 1, 4, 1, 5], 4)


def test_cutpoint_examples():
    assert compute_cutpoints(PRED, [3, 1, 4]) == (0, 1)
    assert compute_cutpoints(PRED, [2, 1, 3, 1, 4]) == (0, 2)
    assert compute_cutpoints(PRED, [4, 4]) == (0, 1)
    c = compute_lmk(PRED, [3, 1, 4])
    assert (c.l, c.m, c.k) == (1, 1, -1)
    c = compute_lmk(PRED, [2, 1, 3, 1, 4])
    assert (c.l, c.m, c.k) == (2, 2, 1)
    with pytest.raises(EncoderError):
        compute_cutpoints(PRED, [1])


def test_rejects_bounded_closure():
    with pytest.raises(EncoderError):
        compute_u(layered_algebra(3), [parse_ordinal("w")])
    with pytest.raises(EncoderError):
        encode_Fn(layered_algebra(3), [parse_ordinal("w")] * 3)


def test_against_brute_force():
    rng = random.Random(2)
    for _ in range(300):
        pre = random_prefix(rng, rng.randint(2, 9))
        n = len(pre)
        assert compute_u(PRED, pre) == brute_u(pre)
        for ell in range(n):
            if ell not in brute_u(pre) or pre[ell] in pred_closure(pre[ell + 1:]):
                assert compute_fg(PRED, pre, ell) == brute_fg(PRED, pre, ell)
        c = compute_lmk(PRED, pre)
        assert (c.k0, c.k1, c.l, c.m, c.k) == brute_cutpoints(PRED, pre)


def test_structural_invariants():
    rng = random.Random(4)
    for _ in range(300):
        pre = random_prefix(rng, rng.randint(2, 25), top=10)
        n = len(pre)
        u = compute_u(PRED, pre)
        assert {0, n - 1} <= u
        c = compute_lmk(PRED, pre)
        assert 0 <= c.k0 < c.k1 < n
        assert c.k < c.m <= c.l <= c.k1
        assert (c.k == -1) == (c.m <= 1)
        for ell in range(c.k0 + 1, c.k1):
            assert PRED.closure_contains(pre[ell], pre[ell + 1:n - 1]).status == "in"
        for ell in set(range(n)) - u:
            f, g = compute_fg(PRED, pre, ell)
            term = enumerate_term(f - ell - 1, g, PRED.signature)
            assert eval_term(PRED, term, pre[ell + 1:f]) == pre[ell]


def test_pool_examples():
    assert term_pool(PRED, 1, 2) == {(1, d) for d in range(5)}
    assert term_pool(PRED, 3, 3) == frozenset()
    assert term_pool(PRED, 2, 5) == term_pool(PRED, 2, 5)


@pytest.mark.parametrize("n1,n2", [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5)])
def test_closed_form_pool_matches_composition(n1, n2):
    assert term_pool(PRED, n1, n2) == pool_by_composition(PRED, n1, n2)


def test_pool_budget():
    with pytest.raises(PoolBudgetError) as err:
        term_pool(PRED, 0, 40, budget=100)
    assert err.value.budget == 100
    with pytest.raises(PoolBudgetError):
        encode_F0(successor_algebra(), 0, 5, 40, list(range(40)), budget=1000)


def test_eta_examples():
    assert eta_prefix(0, 3) == (0, 0, 0)
    assert eta_prefix(4, 3) == (0, 0, 1)
    rng = random.Random(6)
    for _ in range(10_000):
        a, b = rng.randrange(10 ** 6), rng.randrange(10 ** 6)
        if a != b:
            assert eta_prefix(a, 20) != eta_prefix(b, 20)
    w = parse_ordinal("w*2")
    assert eta_prefix(w, 8, degree=3) != eta_prefix(parse_ordinal("w*3"), 8, degree=3)


def test_F0_literal_example():
    hf = encode_F0(PRED, 0, 1, 2, [1, 1], compact=False)
    assert hf[0] == (0, 1, 2)
    eta1, eta0 = Bits(eta_prefix(1, 2)), Bits(eta_prefix(0, 2))
    assert (eta1, 1, 0, (1,)) in hf[2]
    assert (eta0, 1, 1, (1,)) in hf[2]
    for d in range(1, 5):
        for e in range(d + 1, 5):
            assert (1, d, 1, e, (1,), (1,)) in hf[4]
    assert (1, 0, (1,), 0) in hf[3]


def test_F0_locality_examples():
    assert encode_F0(PRED, 1, 1, 2, [9, 4]) == encode_F0(PRED, 1, 1, 2, [2, 4])
    assert encode_F0(PRED, 1, 1, 2, [9, 4], compact=False) == encode_F0(PRED, 1, 1, 2, [2, 4], compact=False)
    hf = encode_F0(PRED, 0, 1, 2, [1, 1])
    assert hf[0] == (0, 1, 2)
    with pytest.raises(EncoderError):
        encode_F0(PRED, 0, 1, 3, [1, 1])


def test_F0_locality_random():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(2, 20)
        pre = random_prefix(rng, n, top=12)
        n0 = rng.randint(-1, n - 1)
        n1 = rng.randint(max(n0, 0), n)
        other = random_prefix(rng, max(n0, 0), top=12) + pre[max(n0, 0):]
        assert encode_F0(PRED, n0, n1, n, pre) == encode_F0(PRED, n0, n1, n, other)


def test_compact_equality_matches_literal():
    """Two F0 values agree in compact form exactly when they agree literally."""
    rng = random.Random(8)
    checked = same = 0
    for _ in range(400):
        n2 = rng.randint(1, 4)
        n1 = rng.randint(max(0, n2 - 3), n2)
        n0 = rng.randint(-1, n1)
        a = random_prefix(rng, n2, top=3)
        b = list(a)
        for _ in range(rng.randint(0, 2)):
            b[rng.randrange(n2)] = rng.randint(0, 3)
        lit = encode_F0(PRED, n0, n1, n2, a, compact=False) == encode_F0(PRED, n0, n1, n2, b, compact=False)
        com = encode_F0(PRED, n0, n1, n2, a) == encode_F0(PRED, n0, n1, n2, b)
        assert lit == com, (n0, n1, n2, a, b)
        checked += 1
        same += lit
    assert 0 < same < checked


def test_views_agree():
    rng = random.Random(9)
    for _ in range(100):
        n2 = rng.randint(2, 4)
        n1 = rng.randint(max(0, n2 - 2), n2 - 1)
        n0 = rng.randint(-1, n1)
        pre = random_prefix(rng, n2, top=5)
        lit = LiteralView(encode_F0(PRED, n0, n1, n2, pre, compact=False))
        com = CompactView(encode_F0(PRED, n0, n1, n2, pre))
        for i in range(max(n0, 0), n1):
            assert (lit.witness(i) is None) == (com.witness(i) is None)
            if com.witness(i) is not None:
                m, idx, args = com.witness(i)
                assert eval_term(PRED, enumerate_term(m, idx, PRED.signature), [pre[j] for j in args]) == pre[i]
        for s in range(n1, n2):
            for e in range(6):
                assert lit.eta(1, e, (s,)) == com.eta(1, e, (s,))


def test_encode_Fn_examples():
    assert encode_Fn(PRED, []) == 0
    assert encode_Fn(PRED, [5]) == 0
    assert encode_Fn(PRED, [3, 1, 4]) == hf_to_code(encode_F0(PRED, -1, 1, 3, [3, 1, 4]))
    assert encode_Fn(PRED, [3, 1, 4]) == encode_Fn(PRED, [3, 1, 4])


def test_session_matches_stateless():
    rng = random.Random(10)
    pre = random_prefix(rng, 30, top=9)
    s = Session(PRED, pre)
    for n in range(2, 31):
        assert s.code(n) == encode_Fn(PRED, pre[:n])
        assert s.u(n) == compute_u(PRED, pre[:n])


def test_monotone():
    assert monotone_encode(PRED, []) == []
    rng = random.Random(11)
    pre = random_prefix(rng, 12)
    stream = monotone_encode(PRED, pre)
    assert monotone_encode(PRED, pre[:7]) == stream[:7]
    assert monotone_blocks(stream) == [(j, encode_Fn(PRED, pre[:j])) for j in range(1, 13)]


def test_decode_example():
    rep = decode_replay(PRED, parse_spec("ep:9;5,6"), 1, 8)
    assert rep.status == "recovered"
    assert rep.recovered == str(Bits(eta_prefix(5, rep.chain[0])))
    assert rep.chain == sorted(rep.chain, reverse=True)


def test_decode_bottom_window_starts_at_last_level():
    hits = 0
    for text in ("ep:9;5,6", "ep:;5", "ep:3,1,4,1,5;2", "ep:7,2;4,6,1"):
        spec = parse_spec(text)
        for target in range(6):
            rep = decode_replay(PRED, spec, target, 10)
            last = len(rep.levels) - 1
            k, l = rep.levels[last]["k"], rep.levels[last]["l"]
            if max(k, 0) <= target < l and rep.status == "recovered":
                hits += 1
                assert rep.start_level == last
                assert rep.steps[0]["level"] == last
    assert hits > 0


def test_decode_record_not_recoverable():
    # index 0 holds the record 9, which no later entry covers
    rep = decode_replay(PRED, parse_spec("ep:9;5,6"), 0, 8)
    assert rep.status == "not-recoverable-by-chain"
    assert rep.reason


def test_decode_below_max_u_not_recoverable():
    # 6 at index 1 is covered by the later 11, but never by the bottom window
    rep = decode_replay(PRED, parse_spec("ep:0,6,5,11,4,10;2"), 1, 2)
    assert rep.status == "not-recoverable-by-chain"
    assert "clause (d)" in rep.reason
