"""Command line front-end.

Exit codes: 0 pass, 1 counterexample or violation, 2 configuration error,
3 term-pool budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import AlgebraError, algebra_from_descriptor
from .analysis import (
    AnalysisError,
    PropertyReport,
    check_cl4,
    check_cl5,
    check_cl7,
    check_cl8,
    cl4_specs,
    cl7_pairs,
    cl8_pairs,
    reports_csv,
    star0_check,
    star1_descent,
    star2_probe,
)
from .encoder import (
    DEFAULT_POOL_BUDGET,
    EncoderError,
    PoolBudgetError,
    ReplayError,
    Session,
    decode_replay,
    MISMATCH,
)
from .hf import HFError
from .ordinal import OrdinalError
from .sequences import (
    ALMOST_EQUAL,
    DIVERGENT,
    PreconditionError,
    SpecError,
    format_spec,
    parse_pair,
    parse_spec,
)
from .symbolic import Star0Violation, UnsupportedSpec, tail_u

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3

CLAIMS = ("4", "5", "7", "8", "star0")

DEFAULTS = {
    "algebra": "pred",
    "spec": None,
    "pair": None,
    "random": None,
    "horizon": None,
    "claims": "7,8",
    "seed": 0,
    "format": "json",
    "monotone": False,
    "cutpoints": False,
    "pool_budget": DEFAULT_POOL_BUDGET,
    "closure_depth": 6,
    "target": 1,
    "nprime": 8,
}

STAR_BATTERY = {
    "predecessor": ["ep:9;5,6", "ep:;5", "ep:3,1,4,1,5;2", "ramp:1,0"],
    "successor": ["ramp:1,0", "ep:9;5,6"],
    "layered": ["ep:w*2;w", "ep:w^2;w*3,w"],
}


class ConfigError(ValueError):
    pass


def _algebra(cfg):
    desc = cfg["algebra"]
    if isinstance(desc, str) and desc.strip().startswith("{"):
        desc = json.loads(desc)
    if isinstance(desc, str):
        desc = {"kind": desc}
    desc = dict(desc)
    if desc.get("kind") == "layered":
        desc.setdefault("closure_depth", cfg["closure_depth"])
    return algebra_from_descriptor(desc)


def _emit(payload, fmt, out, csv_text=None):
    if fmt == "csv" and csv_text is not None:
        out.write(csv_text)
    else:
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _csv(rows, header):
    import csv
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands ---------------------------------------------------------------------------------

def cmd_encode(cfg, out) -> int:
    alg = _algebra(cfg)
    if not cfg["spec"]:
        raise ConfigError("encode needs --spec")
    spec = parse_spec(cfg["spec"])
    horizon = cfg["horizon"] if cfg["horizon"] is not None else 16
    if horizon < 0:
        raise ConfigError("horizon must be >= 0")
    s = Session(alg, spec, cfg["pool_budget"])
    if cfg["monotone"]:
        records = [{"block": j, "code": s.code(j)} for j in range(1, horizon + 1)]
        header = ["block", "code"]
    else:
        records = []
        for n in range(horizon + 1):
            rec = {"n": n, "code": s.code(n)}
            if cfg["cutpoints"] and n >= 1:
                rec["u"] = sorted(s.u(n))
            if cfg["cutpoints"] and n >= 2:
                rec.update(s.cutpoints(n).as_dict())
            records.append(rec)
        header = ["n", "code"] + (["u", "k0", "k1", "l", "m", "k"] if cfg["cutpoints"] else [])
    rows = [[" ".join(map(str, r[h])) if isinstance(r.get(h), list) else r.get(h, "") for h in header]
            for r in records]
    payload = {"command": "encode", "algebra": alg.descriptor(), "spec": format_spec(spec),
               "horizon": horizon, "monotone": cfg["monotone"], "records": records}
    _emit(payload, cfg["format"], out, _csv(rows, header))
    return EXIT_OK


def _star0_report(alg, spec, horizon) -> PropertyReport:
    verdict = star0_check(alg, spec, horizon)
    rep = PropertyReport("star0", horizon, params={"spec": format_spec(spec)}, verdicts=[verdict])
    if verdict["verdict"] == "violated":
        rep.counterexamples.append({"indices": verdict["indices"]})
    return rep


def _verify_inputs(cfg):
    """(specs, almost-equal pairs, divergent pairs) selected by the config."""
    if cfg["random"] is not None:
        count = int(cfg["random"])
        seed = int(cfg["seed"])
        return cl4_specs(seed, count), cl7_pairs(seed, count), cl8_pairs(seed, count)
    if cfg["pair"]:
        pair = parse_pair(cfg["pair"]).certify()
        specs = [pair.left, pair.right]
        return specs, ([pair] if pair.relation == ALMOST_EQUAL else []), ([pair] if pair.relation == DIVERGENT else [])
    if cfg["spec"]:
        return [parse_spec(cfg["spec"])], [], []
    raise ConfigError("verify needs --spec, --pair or --random")


def cmd_verify(cfg, out) -> int:
    alg = _algebra(cfg)
    claims = [c.strip() for c in str(cfg["claims"]).split(",") if c.strip()]
    unknown = [c for c in claims if c not in CLAIMS]
    if unknown:
        raise ConfigError(f"unknown claims {unknown}; choose from {list(CLAIMS)}")
    horizon = cfg["horizon"] if cfg["horizon"] is not None else 48
    if horizon < 2:
        raise ConfigError("horizon must be >= 2")
    specs, almost, divergent = _verify_inputs(cfg)
    reports = []
    for claim in claims:
        if claim == "star0":
            reports += [_star0_report(alg, s, horizon) for s in specs]
        elif claim == "4":
            for s in specs:
                try:
                    _, n_star = tail_u(alg, s)
                except Star0Violation as exc:
                    rep = PropertyReport("cl4", horizon, params={"spec": format_spec(s)})
                    rep.counterexamples.append({"star0_violation": list(exc.indices)})
                    reports.append(rep)
                    continue
                reports.append(check_cl4(alg, s, [n_star, n_star + 2, n_star + 4], horizon))
        elif claim == "5":
            reports += [check_cl5(alg, p, horizon) for p in almost]
        elif claim == "7":
            reports += [check_cl7(alg, p, horizon, budget=cfg["pool_budget"]) for p in almost]
        elif claim == "8":
            reports += [check_cl8(alg, p, horizon, budget=cfg["pool_budget"]) for p in divergent]
    failed = sum(not r.passed for r in reports)
    summary = {c: {"checks": sum(r.claim in (c, f"cl{c}") for r in reports),
                   "failed": sum(r.claim in (c, f"cl{c}") and not r.passed for r in reports)}
               for c in claims}
    payload = {"command": "verify", "algebra": alg.descriptor(), "horizon": horizon, "seed": cfg["seed"],
               "claims": claims, "summary": summary, "reports": [r.as_dict() for r in reports],
               "passed": failed == 0}
    _emit(payload, cfg["format"], out, reports_csv(reports))
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_star(cfg, out) -> int:
    alg = _algebra(cfg)
    horizon = cfg["horizon"] if cfg["horizon"] is not None else 16
    texts = [cfg["spec"]] if cfg["spec"] else STAR_BATTERY[alg.kind]
    results = []
    bad = False
    for text in texts:
        spec = parse_spec(text)
        entry = {"spec": format_spec(spec), "star0": star0_check(alg, spec, horizon)}
        bad |= entry["star0"]["verdict"] == "violated"
        try:
            entry["star2"] = star2_probe(alg, spec, spec.stable_from)
            bad |= entry["star2"]["verdict"] == "fails"
        except UnsupportedSpec as exc:
            entry["star2"] = {"verdict": "unsupported", "reason": str(exc)}
        results.append(entry)
    if alg.kind in ("predecessor", "successor"):
        star1 = star1_descent(alg, {5}, 20)
        bad |= star1["verdict"] == "descended"
    else:
        star1 = {"verdict": "unsupported", "reason": "descent heuristics need a unary operation"}
    payload = {"command": "star", "algebra": alg.descriptor(), "horizon": horizon,
               "results": results, "star1": star1, "passed": not bad}
    rows = [[r["spec"], r["star0"]["verdict"], r["star2"]["verdict"], star1["verdict"]] for r in results]
    _emit(payload, cfg["format"], out, _csv(rows, ["spec", "star0", "star2", "star1"]))
    return EXIT_FAIL if bad else EXIT_OK


def cmd_demo(cfg, out) -> int:
    alg = _algebra(cfg)
    spec = parse_spec(cfg["spec"] or "ep:9;5,6")
    horizon = cfg["horizon"] if cfg["horizon"] is not None else 4096
    target, nprime = int(cfg["target"]), int(cfg["nprime"])
    if not 0 <= target < horizon:
        raise ConfigError(f"target {target} outside [0, {horizon})")
    if nprime <= target:
        raise ConfigError("nprime must exceed the target")
    rep = decode_replay(alg, spec, target, nprime, search_limit=horizon, budget=cfg["pool_budget"])
    payload = {"command": "demo", "algebra": alg.descriptor(), "spec": format_spec(spec), **rep.as_dict()}
    if cfg["format"] == "text":
        lines = [f"sequence {format_spec(spec)}, target index {target}, n' = {nprime}",
                 f"n'' = {rep.n_double_prime}, max u = {rep.max_u}",
                 "m-chain: " + " > ".join(map(str, rep.chain))]
        for i, lv in enumerate(rep.levels):
            lines.append(f"  level {i}: length {lv['m']}, window [{lv['k']}, {lv['l']})")
        lines.append(f"start level: {rep.start_level}")
        for st in rep.steps:
            lines.append(f"  level {st['level']}: x{st['index']} <- term {st['term_index']}/{st['arity']} "
                         f"on {st['args']}")
        lines.append(f"composite: {rep.composite}")
        lines.append(f"recovered {rep.recovered}")
        lines.append(f"expected  {rep.expected}")
        lines.append(f"status: {rep.status}" + (f" ({rep.reason})" if rep.reason else ""))
        out.write("\n".join(lines) + "\n")
    else:
        row = [[format_spec(spec), target, nprime, rep.n_double_prime, " ".join(map(str, rep.chain)),
                rep.recovered, rep.expected, rep.status]]
        _emit(payload, cfg["format"], out,
              _csv(row, ["spec", "target", "nprime", "n_double_prime", "chain", "recovered", "expected", "status"]))
    return EXIT_FAIL if rep.status == MISMATCH else EXIT_OK


COMMANDS = {"encode": cmd_encode, "verify": cmd_verify, "star": cmd_star, "demo": cmd_demo}


# -- argument handling ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kalikow", description="Code families for eventual equality over algebras.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--config", help="JSON file whose keys mirror the long flags")
    p.add_argument("--algebra", help="pred | succ | layered, or a JSON descriptor")
    p.add_argument("--spec", help="sequence, e.g. 'ep:9;5,6' or 'ramp:1,0'")
    p.add_argument("--pair", help="pair of sequences, 'LEFT|RIGHT[|relation]'")
    p.add_argument("--random", type=int, help="run seeded random suites of this size")
    p.add_argument("--horizon", type=int)
    p.add_argument("--claims", help="comma list from 4,5,7,8,star0")
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["json", "csv", "text"])
    p.add_argument("--monotone", action="store_true", default=None)
    p.add_argument("--cutpoints", action="store_true", default=None)
    p.add_argument("--pool-budget", type=int)
    p.add_argument("--closure-depth", type=int)
    p.add_argument("--target", type=int)
    p.add_argument("--nprime", type=int)
    return p


def load_config(args) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        extra = set(data) - set(DEFAULTS)
        if extra:
            raise ConfigError(f"unknown config keys {sorted(extra)}")
        cfg.update(data)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if int(cfg["pool_budget"]) <= 0 or int(cfg["closure_depth"]) <= 0:
        raise ConfigError("budgets must be positive")
    return cfg


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        if cfg["format"] == "text" and args.command != "demo":
            raise ConfigError("text format is only available for demo")
        return COMMANDS[args.command](cfg, out)
    except PoolBudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConfigError, SpecError, AlgebraError, OrdinalError, HFError, PreconditionError, EncoderError,
            ReplayError, AnalysisError, UnsupportedSpec, Star0Violation, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
