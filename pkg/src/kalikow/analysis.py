"""Stabilization thresholds, claim checks over finitely described sequences, and the star lab."""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .algebra import IN, OUT, Algebra
from .encoder import DEFAULT_POOL_BUDGET, Session
from .sequences import (
    ALMOST_EQUAL,
    DIVERGENT,
    PairSpec,
    PreconditionError,
    SequenceSpec,
    format_spec,
    last_difference,
    perturb,
    random_almost_equal_pair,
    random_divergent_pair,
    random_ep_spec,
    seq_entry,
)
from .symbolic import Star0Violation, UnsupportedSpec, supports_symbolic, tail_contains, tail_u

__all__ = [
    "ThresholdReport", "PropertyReport", "Star0Violation", "UnsupportedSpec",
    "seq_entry", "perturb", "tail_u", "threshold_n1", "thresholds_pair", "m_threshold",
    "check_cl4", "check_cl5", "check_cl7", "check_cl8",
    "star0_check", "star1_descent", "star2_probe",
    "cl7_suite", "cl8_suite", "cl4_suite", "cl5_suite", "reports_csv",
]


class AnalysisError(ValueError):
    pass


@dataclass
class ThresholdReport:
    n_star: int
    n1: int
    n3: Optional[int] = None
    chain: list = field(default_factory=list)

    def as_dict(self):
        return {"n_star": self.n_star, "n1": self.n1, "n3": self.n3, "chain": list(self.chain)}


@dataclass
class PropertyReport:
    claim: str
    horizon: int
    thresholds: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def as_dict(self):
        return {
            "claim": self.claim, "horizon": self.horizon, "thresholds": self.thresholds,
            "verdicts": self.verdicts, "counterexamples": self.counterexamples,
            "params": self.params, "notes": self.notes, "passed": self.passed,
        }

    def csv_row(self) -> list:
        th = ";".join(f"{k}={v}" for k, v in sorted(self.thresholds.items()))
        return [self.claim, th, self.horizon, "pass" if self.passed else "fail", len(self.counterexamples)]


CSV_HEADER = ["claim", "thresholds", "horizon", "result", "counterexamples"]


def reports_csv(reports: Iterable[PropertyReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


# -- thresholds -------------------------------------------------------------------------------

def _n1_step(session: Session, u_inf, n0: int) -> int:
    return max(session.f_inf(n) + session.g(n) + 2 for n in range(n0 + 1) if n not in u_inf)


def threshold_n1(alg: Algebra, spec: SequenceSpec, n0: int, session: Optional[Session] = None) -> int:
    """max{f_n + g_n + 2 : n <= n0, n outside u}, with f, g taken on the infinite sequence."""
    u_inf, n_star = tail_u(alg, spec)
    if n0 < n_star:
        raise AnalysisError(f"n0 = {n0} is below n* = {n_star}")
    return _n1_step(session or Session(alg, spec), u_inf, n0)


def thresholds_pair(alg: Algebra, pair: PairSpec, steps: int = 3) -> ThresholdReport:
    """n0 past both u-sets and every disagreement, then n_{k+1} over both sequences."""
    if pair.relation != ALMOST_EQUAL:
        raise PreconditionError("thresholds_pair needs an almost-equal pair")
    pair.certify()
    us = [tail_u(alg, s) for s in (pair.left, pair.right)]
    sessions = [Session(alg, s) for s in (pair.left, pair.right)]
    n_star = max(ns for _, ns in us)
    n = max(n_star, last_difference(pair.left, pair.right) + 1)
    chain = [n]
    for _ in range(steps):
        n = max(_n1_step(s, u, n) for s, (u, _) in zip(sessions, us))
        chain.append(n)
    return ThresholdReport(n_star=n_star, n1=chain[1], n3=chain[-1], chain=chain)


def first_max_u_witness(session: Session, u_inf, after: int) -> int:
    """Least n > after with k0(a|n) = max u.

    Exists: with l* = min(u(a|after) - u) the length f_{l*} qualifies, which
    also bounds the scan.
    """
    top = max(u_inf)
    ell = min(set(session.u(after)) - set(u_inf))
    bound = session.f_inf(ell)
    for n in range(after + 1, bound + 1):
        if session.cutpoints(n).k0 == top:
            return n
    raise AnalysisError(f"no k0 = max u witness in ({after}, {bound}]")


def m_threshold(session: Session, u_inf, base: int) -> dict:
    """Lengths past which m(a|n) > base: m1 = n1(base), m2 a k0 = max u witness
    beyond m1, m3 = n1(m2)."""
    m1 = _n1_step(session, u_inf, base)
    m2 = first_max_u_witness(session, u_inf, m1)
    m3 = _n1_step(session, u_inf, m2)
    return {"base": base, "m1": m1, "m2": m2, "m3": m3}


def k_threshold(session: Session, u_inf, n0: int) -> dict:
    """Lengths past which k(a|n) > n0: k = l(a|m) and l(a|j) > n0 once j >= n1(n0)."""
    return m_threshold(session, u_inf, _n1_step(session, u_inf, n0) - 1)


# -- claim checks ------------------------------------------------------------------------------

def check_cl4(alg: Algebra, spec: SequenceSpec, n0_grid: Iterable[int], horizon: int) -> PropertyReport:
    report = PropertyReport("cl4", horizon, params={"spec": format_spec(spec), "grid": sorted(n0_grid)})
    try:
        u_inf, n_star = tail_u(alg, spec)
    except Star0Violation as exc:
        report.counterexamples.append({"star0_violation": list(exc.indices)})
        return report
    s = Session(alg, spec)
    top = max(u_inf)
    report.thresholds["n_star"] = n_star
    for n0 in sorted(n0_grid):
        if n0 < n_star:
            raise AnalysisError(f"grid point {n0} below n* = {n_star}")
        n1 = _n1_step(s, u_inf, n0)
        mth = m_threshold(s, u_inf, n0)
        kth = k_threshold(s, u_inf, n0)
        witness = first_max_u_witness(s, u_inf, n1 - 1)
        entry = {"n0": n0, "n1": n1, "m3": mth["m3"], "k3": kth["m3"], "max_u_witness": witness,
                 "witnesses_in_range": [n for n in range(n1, horizon + 1) if s.cutpoints(n).k0 == top]}
        report.verdicts.append(entry)
        if n1 > horizon:
            report.notes.append(f"n0={n0}: n1={n1} beyond horizon; parts 1-2 vacuous on [n1, horizon]")
        for n in range(n1, horizon + 1):
            c = s.cutpoints(n)
            if c.k1 <= n0 or c.l <= n0:
                report.counterexamples.append({"n0": n0, "n": n, "part": 1, **c.as_dict()})
            if not (c.k0 == top or c.k0 > n0):
                report.counterexamples.append({"n0": n0, "n": n, "part": 2, **c.as_dict()})
        # the witness is located exactly, possibly past the horizon
        if s.cutpoints(witness).k0 != top:
            report.counterexamples.append({"n0": n0, "n": witness, "part": 2, "reason": "witness"})
        for n in range(mth["m3"], horizon + 1):
            c = s.cutpoints(n)
            if c.m <= n0:
                report.counterexamples.append({"n0": n0, "n": n, "part": 4, **c.as_dict()})
        for n in range(kth["m3"], horizon + 1):
            c = s.cutpoints(n)
            if c.k <= n0:
                report.counterexamples.append({"n0": n0, "n": n, "part": 4, **c.as_dict()})
    return report


def _pair_sessions(alg, pair, budget=DEFAULT_POOL_BUDGET, observer=None):
    return Session(alg, pair.left, budget, observer), Session(alg, pair.right, budget, observer)


def _require(pair: PairSpec, relation: str):
    if pair.relation != relation:
        raise PreconditionError(f"expected a {relation} pair, got {pair.relation}")
    pair.certify()


def check_cl5(alg: Algebra, pair: PairSpec, horizon: int) -> PropertyReport:
    _require(pair, ALMOST_EQUAL)
    th = thresholds_pair(alg, pair)
    s1, s2 = _pair_sessions(alg, pair)
    report = PropertyReport("cl5", horizon, thresholds=th.as_dict(), params=_pair_params(pair))
    first = None
    for n in range(2, horizon + 1):
        a, b = s1.cutpoints(n), s2.cutpoints(n)
        same = (a.l, a.m, a.k) == (b.l, b.m, b.k)
        if not same:
            first = None
            if th.n3 <= n <= horizon:
                report.counterexamples.append({"n": n, "left": a.as_dict(), "right": b.as_dict()})
        elif first is None:
            first = n
    report.verdicts.append({"first_agreement": first})
    if th.n3 > horizon:
        report.notes.append(f"n3={th.n3} beyond horizon; range vacuous")
    return report


def cl7_thresholds(alg: Algebra, pair: PairSpec, s1: Session, s2: Session) -> dict:
    """m0: both sequences agree in value and in (l, k) from here on; m1: past it
    both k exceed m0 (so the two F0 values read identical entries)."""
    th = thresholds_pair(alg, pair)
    agree_lk = 2
    for n in range(2, th.n3):
        a, b = s1.cutpoints(n), s2.cutpoints(n)
        if (a.l, a.k) != (b.l, b.k):
            agree_lk = n + 1
    m0 = max(last_difference(pair.left, pair.right) + 1, agree_lk, th.n_star)
    bound = 2
    for s, spec in ((s1, pair.left), (s2, pair.right)):
        u_inf, _ = tail_u(alg, spec)
        bound = max(bound, k_threshold(s, u_inf, m0)["m3"])
    m1 = m0
    for n in range(2, bound):
        if s1.cutpoints(n).k <= m0 or s2.cutpoints(n).k <= m0:
            m1 = max(m1, n + 1)
    return {"n3": th.n3, "m0": m0, "k_bound": bound, "m1": m1}


def check_cl7(alg: Algebra, pair: PairSpec, horizon: int, observer=None,
              budget: int = DEFAULT_POOL_BUDGET) -> PropertyReport:
    _require(pair, ALMOST_EQUAL)
    s1, s2 = _pair_sessions(alg, pair, budget, observer)
    th = cl7_thresholds(alg, pair, s1, s2)
    report = PropertyReport("cl7", horizon, thresholds=th, params=_pair_params(pair))
    last_diff = None
    for n in range(0, horizon + 1):
        if s1.code(n) != s2.code(n):
            last_diff = n
            if n >= th["m1"]:
                report.counterexamples.append({"n": n})
    report.verdicts.append({"last_code_difference": last_diff, "checked": [th["m1"], horizon]})
    if th["m1"] > horizon:
        report.notes.append(f"m1={th['m1']} beyond horizon; range vacuous")
    return report


def check_cl8(alg: Algebra, pair: PairSpec, horizon: int, start: Optional[int] = None,
              window: Optional[int] = None, observer=None, budget: int = DEFAULT_POOL_BUDGET) -> PropertyReport:
    """Every window [t, t+window] with t >= start holds a code disagreement.

    ``start`` defaults to the point where both sequences are periodic: a shared
    head may agree for as long as it likes.
    """
    _require(pair, DIVERGENT)
    if start is None:
        start = max(2, pair.left.stable_from, pair.right.stable_from)
    if window is None:
        window = 4 * pair.combined_period
    if window < 1:
        raise AnalysisError("window must be positive")
    s1, s2 = _pair_sessions(alg, pair, budget, observer)
    report = PropertyReport("cl8", horizon, params={**_pair_params(pair), "start": start, "window": window})
    differ = [n for n in range(start, horizon + 1) if s1.code(n) != s2.code(n)]
    report.verdicts.append({"differences": len(differ), "first": differ[0] if differ else None})
    hit = set(differ)
    for t in range(start, horizon - window + 1):
        if not any(n in hit for n in range(t, t + window + 1)):
            report.counterexamples.append({"window_start": t})
    return report


def _pair_params(pair: PairSpec) -> dict:
    return {"left": format_spec(pair.left), "right": format_spec(pair.right), "relation": pair.relation}


# -- star lab ---------------------------------------------------------------------------------

TRUNCATION_CAVEAT = "tail truncated at the horizon; 'unknown' never implies a violation"


def star0_check(alg: Algebra, spec: SequenceSpec, horizon: int) -> dict:
    """Tail-closure property on one sequence.

    Symbolic for predecessor/successor; otherwise each index is tested against
    the entries up to ``horizon`` and only positive answers are trusted.
    """
    if supports_symbolic(alg):
        escaped = [ell for ell in range(horizon) if not tail_contains(alg, spec, ell)]
        try:
            u_inf, n_star = tail_u(alg, spec)
        except Star0Violation:
            return {"mode": "symbolic", "verdict": "violated", "indices": escaped, "tested": horizon}
        return {"mode": "symbolic", "verdict": "holds-on-sample", "u_inf": sorted(u_inf),
                "n_star": n_star, "tested": horizon}
    vals = [spec.entry(i) for i in range(horizon + 1)]
    status = []
    for ell in range(horizon):
        v = alg.closure_contains(vals[ell], vals[ell + 1:])
        status.append("in" if v.status == IN else "unknown")
    verdict = "holds-on-sample" if all(s == "in" for s in status[1:]) else "unknown"
    return {"mode": "truncated", "verdict": verdict, "status": status, "caveat": TRUNCATION_CAVEAT,
            "tested": horizon}


def _closure_subset(alg, a, b) -> bool:
    """cl(a) <= cl(b)."""
    return all(alg.closure_contains(x, b).status == IN for x in a)


def star1_descent(alg: Algebra, start_gens, steps: int, heuristic: str = "shift") -> dict:
    """Iterate a descent heuristic and report when closures stop strictly shrinking.

    ``shift`` applies the unary operation to every generator; ``drop-max``
    removes the largest generator.  Surviving all steps is only a candidate
    for an infinite descending chain.
    """
    if heuristic == "shift":
        op = alg.signature.ops[0]
        if op[1] != 1:
            raise AnalysisError("shift heuristic needs a unary operation")
        nxt = lambda gens: sorted({alg.apply(op[0], [x]) for x in gens})
    elif heuristic == "drop-max":
        nxt = lambda gens: sorted(gens)[:-1]
    else:
        raise AnalysisError(f"unknown heuristic {heuristic!r}")
    gens = sorted(set(start_gens))
    trail = [list(gens)]
    for step in range(steps):
        new = nxt(gens)
        for x in new:
            if alg.closure_contains(x, gens).status == OUT:
                raise AnalysisError("heuristic left the closure")
        strict = any(alg.closure_contains(x, new).status != IN for x in gens)
        if not strict:
            return {"verdict": "stabilized", "at": step, "heuristic": heuristic, "trail": trail}
        gens = new
        trail.append(list(gens))
    return {"verdict": "descended", "steps": steps, "heuristic": heuristic, "trail": trail,
            "note": "candidate only"}


def star2_probe(alg: Algebra, spec: SequenceSpec, cofinite_cut: int) -> dict:
    """Exhibit B inside the tail past ``cofinite_cut`` with cl(C) = cl(B) for every infinite C <= B."""
    if not supports_symbolic(alg):
        raise UnsupportedSpec(f"star2 probe has no symbolic closure for {alg.kind}")
    downward = alg.kind == "predecessor"
    start = max(cofinite_cut, spec.stable_from)
    recurring = spec.tail_values()
    if recurring is None:
        if downward:
            return {"verdict": "holds", "B": f"all indices >= {start}",
                    "reason": "every infinite subset of an increasing ramp is unbounded; closure is everything"}
        return {"verdict": "fails", "B": None,
                "reason": "any infinite B has C = B minus its least element with a strictly smaller up-set"}
    target = max(recurring) if downward else min(recurring)
    positions = [i for i in range(start, start + spec.period) if spec.entry(i) == target]
    closure = f"{{0..{target}}}" if downward else f"{{{target}, {target}+1, ...}}"
    return {"verdict": "holds", "B": f"indices >= {start} congruent to {positions} mod {spec.period}",
            "value": target, "closure": closure,
            "reason": "every entry of B equals the same recurring value, so every infinite C <= B has the same closure"}


# -- seeded suites ------------------------------------------------------------------------------

def cl7_pairs(seed: int, count: int = 200) -> list:
    rng = random.Random(seed)
    return [random_almost_equal_pair(rng) for _ in range(count)]


def cl8_pairs(seed: int, count: int = 200) -> list:
    rng = random.Random(seed)
    return [random_divergent_pair(rng) for _ in range(count)]


def cl4_specs(seed: int, count: int = 100) -> list:
    rng = random.Random(seed)
    return [random_ep_spec(rng) for _ in range(count)]


def cl7_suite(alg, seed, horizon=48, count=200, observer=None):
    return [check_cl7(alg, p, horizon, observer) for p in cl7_pairs(seed, count)]


def cl5_suite(alg, seed, horizon=48, count=200):
    return [check_cl5(alg, p, horizon) for p in cl7_pairs(seed, count)]


def cl8_suite(alg, seed, horizon=64, count=200, observer=None):
    return [check_cl8(alg, p, horizon, observer=observer) for p in cl8_pairs(seed, count)]


def cl4_suite(alg, seed, horizon=64, count=100, offsets=(0, 2, 4)):
    reports = []
    for spec in cl4_specs(seed, count):
        _, n_star = tail_u(alg, spec)
        reports.append(check_cl4(alg, spec, [n_star + d for d in offsets], horizon))
    return reports
