import random

import pytest

from kalikow.algebra import layered_algebra, predecessor_algebra, successor_algebra
from kalikow.analysis import (
    AnalysisError,
    check_cl4,
    check_cl5,
    check_cl7,
    check_cl8,
    cl7_pairs,
    reports_csv,
    star0_check,
    star1_descent,
    star2_probe,
    threshold_n1,
    thresholds_pair,
)
from kalikow.encoder import Session
from kalikow.sequences import PairSpec, PreconditionError, parse_pair, parse_spec, perturb, random_ep_spec
from kalikow.symbolic import Star0Violation, UnsupportedSpec, tail_u

from oracles import brute_u

PRED, SUCC = predecessor_algebra(), successor_algebra()
BASE = parse_spec("ep:9;5,6")


def test_tail_u_examples():
    assert tail_u(PRED, BASE) == ({0}, 1)
    assert tail_u(PRED, parse_spec("ep:;5")) == ({0}, 1)
    with pytest.raises(Star0Violation) as err:
        tail_u(SUCC, parse_spec("ramp:1,0"))
    assert err.value.indices
    with pytest.raises(UnsupportedSpec):
        tail_u(layered_algebra(3), BASE)


def test_tail_u_against_long_prefix():
    rng = random.Random(1)
    for _ in range(200):
        spec = random_ep_spec(rng)
        u_inf, _ = tail_u(PRED, spec)
        # far enough out every finite-tail escape has been covered
        n = spec.stable_from + 4 * spec.period + 2
        pre = spec.prefix(n)
        assert brute_u(pre) & (set(range(spec.stable_from)) | {0}) == set(u_inf)


def test_threshold_examples():
    assert threshold_n1(PRED, BASE, 2) == 8
    assert threshold_n1(PRED, parse_spec("ep:;5"), 2) == 6
    values = [threshold_n1(PRED, BASE, n0) for n0 in range(1, 12)]
    assert values == sorted(values)
    with pytest.raises(AnalysisError):
        threshold_n1(PRED, parse_spec("ep:3,1,4,1,5;2"), 2)


def test_u_stabilizes_past_threshold():
    rng = random.Random(2)
    for _ in range(100):
        spec = random_ep_spec(rng)
        u_inf, n_star = tail_u(PRED, spec)
        t = threshold_n1(PRED, spec, n_star)
        s = Session(PRED, spec)
        for n in range(t, t + 20):
            assert s.u(n) & set(range(n_star + 1)) == set(u_inf)


def test_thresholds_pair():
    pair = PairSpec(BASE, perturb(BASE, {2: 9}))
    th = thresholds_pair(PRED, pair)
    assert th.chain[0] >= 3
    assert th.n_star <= th.n1 <= th.n3
    same = thresholds_pair(PRED, PairSpec(BASE, BASE))
    assert same.n1 == threshold_n1(PRED, BASE, same.chain[0])
    with pytest.raises(PreconditionError):
        thresholds_pair(PRED, parse_pair("ep:;3|ep:;4"))


def test_cl4_example():
    rep = check_cl4(PRED, BASE, {2, 4}, 64)
    assert rep.passed
    assert all(v["max_u_witness"] for v in rep.verdicts)
    assert all(v["witnesses_in_range"] for v in rep.verdicts)


def test_cl4_successor_control():
    rep = check_cl4(SUCC, parse_spec("ramp:1,0"), {2}, 32)
    assert not rep.passed
    assert "star0_violation" in rep.counterexamples[0]


def test_cl5_examples():
    pair = PairSpec(BASE, perturb(BASE, {2: 9}))
    rep = check_cl5(PRED, pair, 64)
    assert rep.passed
    assert rep.verdicts[0]["first_agreement"] <= rep.thresholds["n3"]
    same = PairSpec(BASE, BASE)
    assert check_cl5(PRED, same, 40).verdicts[0]["first_agreement"] == 2
    bad = PairSpec(BASE, parse_spec("ep:9;6,5"), "almost-equal")
    with pytest.raises(PreconditionError):
        check_cl5(PRED, bad, 40)


def test_cl7_examples():
    pair = PairSpec(BASE, perturb(BASE, {2: 9}))
    rep = check_cl7(PRED, pair, 64)
    assert rep.passed and rep.thresholds["m1"] <= 64
    rep = check_cl7(PRED, PairSpec(BASE, BASE), 30)
    assert rep.verdicts[0]["last_code_difference"] is None


def test_cl8_examples():
    assert check_cl8(PRED, parse_pair("ep:9;5,6|ep:9;6,5"), 64).passed
    dense = check_cl8(PRED, parse_pair("ep:;3|ep:;4"), 64)
    assert dense.passed and dense.verdicts[0]["differences"] == 63
    assert dense.params["window"] == 4
    with pytest.raises(PreconditionError):
        check_cl8(PRED, PairSpec(BASE, perturb(BASE, {2: 9})), 64)


def test_cl5_cl7_beyond_horizon_48():
    """Pairs whose thresholds pass 48 are rechecked with a longer horizon."""
    long_runs = 0
    for pair in cl7_pairs(0, 200):
        th = thresholds_pair(PRED, pair)
        if th.n3 > 40:
            long_runs += 1
            horizon = th.n3 + 24
            assert check_cl5(PRED, pair, horizon).passed
            assert check_cl7(PRED, pair, horizon).passed
    assert long_runs > 0


def test_star0():
    ok = star0_check(PRED, BASE, 20)
    assert ok["verdict"] == "holds-on-sample" and ok["u_inf"] == [0]
    bad = star0_check(SUCC, parse_spec("ramp:1,0"), 20)
    assert bad["verdict"] == "violated" and bad["indices"] == list(range(20))
    lay = star0_check(layered_algebra(3), parse_spec("ep:w*2;w"), 10)
    assert lay["verdict"] in ("holds-on-sample", "unknown")
    assert "violated" not in lay["status"]


def test_star1():
    r = star1_descent(PRED, {5}, 20)
    assert (r["verdict"], r["at"]) == ("stabilized", 5)
    assert star1_descent(SUCC, {5}, 20)["verdict"] == "descended"
    assert star1_descent(PRED, set(), 20)["at"] == 0
    assert star1_descent(PRED, {3, 7}, 20, heuristic="drop-max")["at"] == 2


def test_star2():
    r = star2_probe(PRED, BASE, 1)
    assert r["verdict"] == "holds" and r["value"] == 6
    assert star2_probe(PRED, parse_spec("ep:;4"), 0)["verdict"] == "holds"
    assert star2_probe(SUCC, parse_spec("ramp:1,0"), 0)["verdict"] == "fails"
    with pytest.raises(UnsupportedSpec):
        star2_probe(layered_algebra(3), BASE, 0)


def test_star_family_consistent_on_pred():
    rng = random.Random(3)
    for _ in range(50):
        spec = random_ep_spec(rng)
        assert star0_check(PRED, spec, 30)["verdict"] == "holds-on-sample"
        assert star2_probe(PRED, spec, spec.stable_from)["verdict"] == "holds"
        gens = {rng.randrange(13) for _ in range(3)}
        assert star1_descent(PRED, gens, 40)["verdict"] == "stabilized"


def test_csv_summary():
    pair = PairSpec(BASE, perturb(BASE, {2: 9}))
    text = reports_csv([check_cl7(PRED, pair, 32)])
    lines = text.splitlines()
    assert lines[0] == "claim,thresholds,horizon,result,counterexamples"
    assert lines[1].startswith("cl7,") and lines[1].endswith(",32,pass,0")
