"""Finitely described infinite sequences and pairs of them."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from math import lcm
from typing import Optional

from .ordinal import Ordinal, format_ordinal, parse_ordinal

ALMOST_EQUAL, DIVERGENT = "almost-equal", "divergent"


class SpecError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SequenceSpec:
    """Eventually periodic (``head`` then ``cycle`` repeated) or ramp
    (``slope*n + offset``) sequence, with ``edits`` applied last."""

    kind: str = "ep"
    head: tuple = ()
    cycle: tuple = ()
    slope: int = 0
    offset: int = 0
    edits: tuple = ()  # sorted ((index, value), ...)

    def __post_init__(self):
        if self.kind not in ("ep", "ramp"):
            raise SpecError(f"unknown sequence kind {self.kind!r}")
        if self.kind == "ep" and not self.cycle:
            raise SpecError("cycle must be nonempty")
        if self.kind == "ramp" and (self.slope < 0 or self.offset < 0):
            raise SpecError("ramp slope and offset are naturals")
        edits = dict(self.edits)
        if any(i < 0 for i in edits):
            raise SpecError("edit indices are naturals")
        object.__setattr__(self, "head", tuple(self.head))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        object.__setattr__(self, "edits", tuple(sorted(edits.items())))

    def base_entry(self, n: int):
        if self.kind == "ramp":
            return self.slope * n + self.offset
        if n < len(self.head):
            return self.head[n]
        return self.cycle[(n - len(self.head)) % len(self.cycle)]

    def entry(self, n: int):
        for i, v in self.edits:
            if i == n:
                return v
        return self.base_entry(n)

    def prefix(self, n: int) -> list:
        edits = dict(self.edits)
        return [edits[i] if i in edits else self.base_entry(i) for i in range(n)]

    @property
    def stable_from(self) -> int:
        """First index from which the sequence follows its unedited law."""
        start = len(self.head) if self.kind == "ep" else 0
        if self.edits:
            start = max(start, self.edits[-1][0] + 1)
        return start

    @property
    def period(self) -> int:
        if self.kind == "ep":
            return len(self.cycle)
        return 1

    def tail_values(self) -> Optional[tuple]:
        """Values occurring infinitely often, or None if the sequence is unbounded."""
        if self.kind == "ep":
            return tuple(sorted(set(self.cycle)))
        if self.slope == 0:
            return (self.offset,)
        return None

    def describe(self) -> str:
        return format_spec(self)


def seq_entry(spec: SequenceSpec, n: int):
    return spec.entry(n)


def perturb(spec: SequenceSpec, edits) -> SequenceSpec:
    merged = dict(spec.edits)
    merged.update(dict(edits))
    return replace(spec, edits=tuple(merged.items()))


# -- pairs --------------------------------------------------------------------

def _as_periodic(spec: SequenceSpec):
    """(start, period) beyond which ``spec`` is periodic, or None if unbounded."""
    if spec.kind == "ramp" and spec.slope > 0:
        return None
    return spec.stable_from, spec.period


def eventually_equal(a: SequenceSpec, b: SequenceSpec) -> bool:
    """Structural decision of (for all but finitely many n) a(n) == b(n)."""
    pa, pb = _as_periodic(a), _as_periodic(b)
    if pa is None or pb is None:
        if pa is None and pb is None:
            return a.slope == b.slope and a.offset == b.offset
        return False
    start = max(pa[0], pb[0])
    period = lcm(pa[1], pb[1])
    return all(a.entry(n) == b.entry(n) for n in range(start, start + period))


def last_difference(a: SequenceSpec, b: SequenceSpec) -> int:
    """Largest index where two eventually equal sequences differ (-1 if none)."""
    if not eventually_equal(a, b):
        raise PreconditionError("sequences are not almost equal")
    pa, pb = _as_periodic(a), _as_periodic(b)
    end = max(a.stable_from, b.stable_from)
    if pa is not None:
        end += lcm(pa[1], pb[1])
    last = -1
    for n in range(end):
        if a.entry(n) != b.entry(n):
            last = n
    return last


@dataclass(frozen=True)
class PairSpec:
    left: SequenceSpec
    right: SequenceSpec
    relation: str = ALMOST_EQUAL

    def __post_init__(self):
        if self.relation not in (ALMOST_EQUAL, DIVERGENT):
            raise SpecError(f"unknown relation {self.relation!r}")

    def certify(self) -> "PairSpec":
        actual = ALMOST_EQUAL if eventually_equal(self.left, self.right) else DIVERGENT
        if actual != self.relation:
            raise PreconditionError(f"pair declared {self.relation} but is {actual}")
        return self

    @property
    def combined_period(self) -> int:
        return lcm(self.left.period, self.right.period)


# -- text / JSON forms --------------------------------------------------------------

def _parse_value(tok):
    if isinstance(tok, int):
        return tok
    tok = str(tok).strip()
    if tok.isdigit():
        return int(tok)
    return parse_ordinal(tok)


def _format_value(v) -> str:
    return str(v) if isinstance(v, int) else format_ordinal(v)


def parse_spec(text) -> SequenceSpec:
    """Parse ``ep:9;5,6[;2=9,...]``, ``ramp:1,0[;edits]`` or the JSON object form."""
    if isinstance(text, dict):
        return spec_from_json(text)
    text = text.strip()
    if text.startswith("{"):
        return spec_from_json(json.loads(text))
    kind, _, body = text.partition(":")
    parts = body.split(";")

    def values(s):
        s = s.strip()
        return tuple(_parse_value(x) for x in s.split(",")) if s else ()

    def edits(s):
        out = {}
        for item in filter(None, (x.strip() for x in s.split(","))):
            i, _, v = item.partition("=")
            out[int(i)] = _parse_value(v)
        return tuple(out.items())

    if kind == "ep":
        if len(parts) not in (2, 3):
            raise SpecError(f"expected ep:HEAD;CYCLE[;EDITS], got {text!r}")
        return SequenceSpec("ep", values(parts[0]), values(parts[1]),
                            edits=edits(parts[2]) if len(parts) == 3 else ())
    if kind == "ramp":
        slope, _, offset = parts[0].partition(",")
        return SequenceSpec("ramp", slope=int(slope), offset=int(offset or 0),
                            edits=edits(parts[1]) if len(parts) > 1 else ())
    raise SpecError(f"unknown sequence text {text!r}")


def format_spec(spec: SequenceSpec) -> str:
    edits = ",".join(f"{i}={_format_value(v)}" for i, v in spec.edits)
    if spec.kind == "ep":
        body = ",".join(map(_format_value, spec.head)) + ";" + ",".join(map(_format_value, spec.cycle))
    else:
        body = f"{spec.slope},{spec.offset}"
    return f"{spec.kind}:{body}" + (f";{edits}" if edits else "")


def spec_to_json(spec: SequenceSpec) -> dict:
    out = {"kind": spec.kind}
    if spec.kind == "ep":
        out["head"] = [v if isinstance(v, int) else format_ordinal(v) for v in spec.head]
        out["cycle"] = [v if isinstance(v, int) else format_ordinal(v) for v in spec.cycle]
    else:
        out["slope"], out["offset"] = spec.slope, spec.offset
    if spec.edits:
        out["edits"] = {str(i): (v if isinstance(v, int) else format_ordinal(v)) for i, v in spec.edits}
    return out


def spec_from_json(obj: dict) -> SequenceSpec:
    kind = obj.get("kind")
    edits = tuple((int(i), _parse_value(v)) for i, v in obj.get("edits", {}).items())
    if kind == "ep":
        return SequenceSpec("ep", tuple(map(_parse_value, obj.get("head", []))),
                            tuple(map(_parse_value, obj["cycle"])), edits=edits)
    if kind == "ramp":
        return SequenceSpec("ramp", slope=int(obj["slope"]), offset=int(obj.get("offset", 0)), edits=edits)
    raise SpecError(f"unknown sequence kind {kind!r}")


def parse_pair(text) -> PairSpec:
    """``LEFT|RIGHT[|relation]`` in text form, or a JSON object with left/right/relation."""
    if isinstance(text, dict):
        obj = text
    elif text.strip().startswith("{"):
        obj = json.loads(text)
    else:
        parts = text.split("|")
        if len(parts) not in (2, 3):
            raise SpecError(f"expected LEFT|RIGHT[|relation], got {text!r}")
        left, right = parse_spec(parts[0]), parse_spec(parts[1])
        if len(parts) == 3:
            return PairSpec(left, right, parts[2].strip())
        rel = ALMOST_EQUAL if eventually_equal(left, right) else DIVERGENT
        return PairSpec(left, right, rel)
    left, right = parse_spec(obj["left"]), parse_spec(obj["right"])
    rel = obj.get("relation") or (ALMOST_EQUAL if eventually_equal(left, right) else DIVERGENT)
    return PairSpec(left, right, rel)


def pair_to_json(pair: PairSpec) -> dict:
    return {"left": spec_to_json(pair.left), "right": spec_to_json(pair.right), "relation": pair.relation}


# -- seeded generators ------------------------------------------------------------------

def random_ep_spec(rng: random.Random, max_head: int = 6, max_cycle: int = 4, max_value: int = 12) -> SequenceSpec:
    head = tuple(rng.randint(0, max_value) for _ in range(rng.randint(0, max_head)))
    cycle = tuple(rng.randint(0, max_value) for _ in range(rng.randint(1, max_cycle)))
    return SequenceSpec("ep", head, cycle)


def random_almost_equal_pair(rng: random.Random, max_edits: int = 3, edit_span: int = 16,
                             **kw) -> PairSpec:
    base = random_ep_spec(rng, **kw)
    max_value = kw.get("max_value", 12)
    edits = {rng.randrange(edit_span): rng.randint(0, max_value) for _ in range(rng.randint(0, max_edits))}
    return PairSpec(base, perturb(base, edits), ALMOST_EQUAL)


def random_divergent_pair(rng: random.Random, **kw) -> PairSpec:
    left = random_ep_spec(rng, **kw)
    max_cycle, max_value = kw.get("max_cycle", 4), kw.get("max_value", 12)
    while True:
        cycle = tuple(rng.randint(0, max_value) for _ in range(rng.randint(1, max_cycle)))
        right = SequenceSpec("ep", left.head, cycle)
        if not eventually_equal(left, right):
            return PairSpec(left, right, DIVERGENT)
