"""Signatures, term enumeration, evaluation and closure for the built-in algebras.

Three algebras are provided:

* :class:`PredecessorAlgebra` -- naturals with ``p(k) = max(k - 1, 0)``; exact
  closure, satisfies the tail-closure property on every eventually periodic or
  ramp sequence.
* :class:`SuccessorAlgebra` -- naturals with ``s(k) = k + 1``; the negative
  control (fails the tail-closure property on ramps).
* :class:`LayeredAlgebra` -- ordinals below ``w^N`` with binary ``f``/``g`` that
  biject the predecessors of an infinite ordinal with the ordinals below the
  power of ``w`` at its level, plus every natural as a constant.  Closure is
  only semi-decided (bounded goal-directed search).
"""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .ordinal import (
    Ordinal,
    OrdinalError,
    ord_code,
    ord_decode,
    ord_level,
)


class AlgebraError(ValueError):
    pass


# -- terms --------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class Const:
    index: int

    def __str__(self):
        return f"c{self.index}"


@dataclass(frozen=True)
class App:
    """Application of an operation of arity >= 2 (unary ones are :class:`Iter`)."""

    op: str
    args: tuple

    def __str__(self):
        return f"{self.op}({','.join(map(str, self.args))})"


@dataclass(frozen=True)
class Iter:
    """``op`` applied ``count >= 1`` times to ``arg``; the normal form of unary chains.

    Keeping the chain flat means deep powers such as ``p^10000(x0)`` hash,
    compare and print without recursion.
    """

    op: str
    count: int
    arg: object

    def __str__(self):
        return f"{self.op}(" * self.count + str(self.arg) + ")" * self.count


Term = object  # Var | Const | App | Iter


def power(op: str, count: int, arg):
    """``op^count(arg)``, merged with ``arg`` when it is already a chain of ``op``."""
    if count == 0:
        return arg
    if isinstance(arg, Iter) and arg.op == op:
        return Iter(op, count + arg.count, arg.arg)
    return Iter(op, count, arg)


def make_app(op: str, args):
    args = tuple(args)
    if len(args) == 1:
        return power(op, 1, args[0])
    return App(op, args)


def map_leaves(t, fn):
    """Rebuild ``t`` in normal form with every variable ``v`` replaced by ``fn(v)``."""
    if isinstance(t, Var):
        return fn(t)
    if isinstance(t, Iter):
        return power(t.op, t.count, map_leaves(t.arg, fn))
    if isinstance(t, App):
        return make_app(t.op, (map_leaves(a, fn) for a in t.args))
    return t


def variables(t):
    """Variable leaves of ``t`` from left to right."""
    if isinstance(t, Var):
        yield t
    elif isinstance(t, Iter):
        yield from variables(t.arg)
    elif isinstance(t, App):
        for a in t.args:
            yield from variables(a)


def canonical(t):
    return map_leaves(t, lambda v: v)


def term_size(t) -> int:
    if isinstance(t, Iter):
        return t.count + term_size(t.arg)
    if isinstance(t, App):
        return 1 + sum(term_size(a) for a in t.args)
    return 1


def max_var(t) -> int:
    """Largest variable index in ``t`` (-1 if none)."""
    return max((v.index for v in variables(t)), default=-1)


def substitute(t, mapping: Sequence):
    """Replace ``x_i`` by ``mapping[i]``."""
    return map_leaves(t, lambda v: mapping[v.index])


def unary_power(op: str, depth: int, var: int = 0):
    return power(op, depth, Var(var))


_TOKEN = re.compile(r"\s*(?:(x\d+)|(c\d+)|([A-Za-z_]\w*)|(\()|(\))|(,))")


def parse_term(text: str, signature: "Signature"):
    """Parse ``p(p(x0))`` / ``f(x0,c3)`` into a term over ``signature``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise AlgebraError(f"bad term text at {text[pos:]!r}")
        tokens.append(m.group(0).strip())
        pos = m.end()
    arities = dict(signature.ops)

    def parse(i):
        tok = tokens[i]
        if tok.startswith("x") and tok[1:].isdigit():
            return Var(int(tok[1:])), i + 1
        if tok.startswith("c") and tok[1:].isdigit():
            return Const(int(tok[1:])), i + 1
        if tok not in arities:
            raise AlgebraError(f"unknown operation {tok!r}")
        if i + 1 >= len(tokens) or tokens[i + 1] != "(":
            raise AlgebraError(f"expected '(' after {tok}")
        args = []
        j = i + 2
        while True:
            arg, j = parse(j)
            args.append(arg)
            if tokens[j] == ",":
                j += 1
                continue
            if tokens[j] == ")":
                j += 1
                break
            raise AlgebraError("expected ',' or ')'")
        if len(args) != arities[tok]:
            raise AlgebraError(f"{tok} takes {arities[tok]} arguments")
        return make_app(tok, args), j

    try:
        term, end = parse(0)
    except IndexError:
        raise AlgebraError(f"truncated term {text!r}") from None
    if end != len(tokens):
        raise AlgebraError(f"trailing input in {text!r}")
    return term


# -- signatures and enumeration -------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """Operation symbols plus constants.

    ``constants`` lists finitely many constant symbols; ``infinite_constants``
    instead declares one constant ``c_k`` per natural ``k``.
    """

    ops: tuple
    constants: tuple = ()
    infinite_constants: bool = False

    def __post_init__(self):
        names = [name for name, _ in self.ops]
        if len(set(names)) != len(names):
            raise AlgebraError("operation names must be unique")
        for name, arity in self.ops:
            if arity < 1:
                raise AlgebraError("operations need arity >= 1; use constants")

    @property
    def has_constants(self) -> bool:
        return self.infinite_constants or bool(self.constants)

    def const_weight(self, k: int) -> int:
        # With infinitely many constants, c_k weighs k+1 so that every weight
        # class stays finite.
        return k + 1 if self.infinite_constants else 1


def term_weight(t, sig: Signature) -> int:
    if isinstance(t, Iter):
        return t.count + term_weight(t.arg, sig)
    if isinstance(t, App):
        return 1 + sum(term_weight(a, sig) for a in t.args)
    if isinstance(t, Const):
        return sig.const_weight(t.index)
    return 1


class TermEnumeration:
    """Bijection ``l -> tau^n_l`` between naturals and n-place terms.

    Terms are ordered by weight (node count; see :meth:`Signature.const_weight`),
    then variables in index order, then constants, then applications in
    signature order with children compared lexicographically by
    (weight, rank within weight).
    """

    def __init__(self, sig: Signature, arity: int):
        if arity < 0:
            raise AlgebraError("arity must be >= 0")
        if arity == 0 and not sig.has_constants:
            raise AlgebraError("no 0-place terms without constants")
        self.sig = sig
        self.n = arity
        self._count = [0]          # _count[s] = number of terms of weight s
        self._cum = [0]            # _cum[s] = number of terms of weight <= s
        self._tuples = {}
        # a lone unary operation over finitely many leaves: weight s is op^(s-1)(leaf)
        self._chain_op = None
        if len(sig.ops) == 1 and sig.ops[0][1] == 1 and not sig.infinite_constants:
            self._chain_op = sig.ops[0][0]

    def _leaf_consts(self, s: int) -> list:
        sig = self.sig
        if sig.infinite_constants:
            return [s - 1]
        return list(range(len(sig.constants))) if s == 1 else []

    def _leaves(self, s: int) -> int:
        return (self.n if s == 1 else 0) + len(self._leaf_consts(s))

    def count(self, s: int) -> int:
        while len(self._count) <= s:
            w = len(self._count)
            c = self._leaves(w)
            for _, a in self.sig.ops:
                c += self.tuples(a, w - 1)
            self._count.append(c)
            self._cum.append(self._cum[-1] + c)
        return self._count[s]

    def tuples(self, a: int, t: int) -> int:
        """Number of a-tuples of terms with total weight t."""
        if a == 0:
            return 1 if t == 0 else 0
        if t < a:
            return 0
        if a == 1:
            return self.count(t)
        key = (a, t)
        if key not in self._tuples:
            self._tuples[key] = sum(
                self.count(s1) * self.tuples(a - 1, t - s1)
                for s1 in range(1, t - a + 2)
            )
        return self._tuples[key]

    def _weight_of_index(self, idx: int) -> int:
        s = max(1, len(self._cum) - 1)  # smaller weights are already cached below idx
        while True:
            self.count(s)
            if self._cum[s] > idx:
                return s
            if len(self._cum) > 64 and all(c == 0 for c in self._count[-32:]):
                raise AlgebraError("term index out of range")
            s += 1

    def unrank(self, idx: int):
        if idx < 0:
            raise AlgebraError("term index must be >= 0")
        s = bisect.bisect_right(self._cum, idx) if self._cum[-1] > idx else None
        if s is None:
            s = self._weight_of_index(idx)
        return self._unrank_in_weight(s, idx - self._cum[s - 1])

    def _unrank_in_weight(self, s: int, r: int):
        if self._chain_op is not None and s > 1:
            return power(self._chain_op, s - 1, self._unrank_in_weight(1, r))
        chain = []  # unary operations peeled off, outermost first
        node = None
        while node is None:
            if s == 1 and r < self.n:
                node = Var(r)
                break
            if s == 1:
                r -= self.n
            consts = self._leaf_consts(s)
            if r < len(consts):
                node = Const(consts[r])
                break
            r -= len(consts)
            for name, a in self.sig.ops:
                c = self.tuples(a, s - 1)
                if r < c:
                    if a == 1:
                        # a 1-tuple has the rank of its single entry
                        chain.append(name)
                        s -= 1
                    else:
                        node = App(name, self._unrank_tuple(a, s - 1, r))
                    break
                r -= c
            else:
                raise AlgebraError("rank exceeds weight class")
        for name in reversed(chain):
            node = power(name, 1, node)
        return node

    def _unrank_tuple(self, a: int, t: int, r: int) -> tuple:
        if a == 0:
            return ()
        for s1 in range(1, t - a + 2):
            rest = self.tuples(a - 1, t - s1)
            block = self.count(s1) * rest
            if r < block:
                first, tail = divmod(r, rest)
                return (self._unrank_in_weight(s1, first),) + self._unrank_tuple(a - 1, t - s1, tail)
            r -= block
        raise AlgebraError("rank exceeds tuple class")

    def rank(self, t) -> int:
        t = canonical(t)
        if max_var(t) >= self.n:
            raise AlgebraError(f"term {t} uses a variable >= {self.n}")
        s = term_weight(t, self.sig)
        self.count(s)
        return self._cum[s - 1] + self._rank_in_weight(t, s)

    def _rank_in_weight(self, t, s: int) -> int:
        if self._chain_op is not None and isinstance(t, Iter) and t.op == self._chain_op:
            if isinstance(t.arg, (Var, Const)):
                return self._rank_in_weight(t.arg, 1)
        total = 0
        while True:
            if isinstance(t, Var):
                return total + t.index
            base = self.n if s == 1 else 0
            consts = self._leaf_consts(s)
            if isinstance(t, Const):
                if t.index not in consts:
                    raise AlgebraError(f"unknown constant {t}")
                return total + base + consts.index(t.index)
            base += len(consts)
            arity = 1 if isinstance(t, Iter) else len(t.args)
            for name, a in self.sig.ops:
                if name == t.op:
                    if arity != a:
                        raise AlgebraError(f"arity mismatch in {t}")
                    break
                base += self.tuples(a, s - 1)
            else:
                raise AlgebraError(f"unknown operation {t.op}")
            if isinstance(t, App):
                return total + base + self._rank_tuple(t.args, s - 1)
            total += base
            t = power(t.op, t.count - 1, t.arg)
            s -= 1

    def _rank_tuple(self, args: tuple, t: int) -> int:
        if not args:
            return 0
        a = len(args)
        w0 = term_weight(args[0], self.sig)
        r = sum(self.count(s1) * self.tuples(a - 1, t - s1) for s1 in range(1, w0))
        rest = self.tuples(a - 1, t - w0)
        return r + self._rank_in_weight(args[0], w0) * rest + self._rank_tuple(args[1:], t - w0)


_ENUMS = {}


def _enumeration(sig: Signature, n: int) -> TermEnumeration:
    key = (sig, n)
    if key not in _ENUMS:
        _ENUMS[key] = TermEnumeration(sig, n)
    return _ENUMS[key]


def enumerate_term(n: int, index: int, sig: Signature):
    """tau^n_index under the global term order."""
    return _enumeration(sig, n).unrank(index)


def term_index(t, n: int, sig: Signature) -> int:
    return _enumeration(sig, n).rank(t)


# -- closure verdicts -------------------------------------------------------------

IN, OUT, UNKNOWN = "in", "out", "unknown"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a closure query.

    For ``in`` the witness term evaluated on ``[gens[i] for i in args]`` (gens
    in :func:`canonical_gens` order) yields the target.
    """

    status: str
    witness: object = None
    args: tuple = ()
    depth: Optional[int] = None


def canonical_gens(gens) -> list:
    return sorted(set(gens))


# -- algebras -----------------------------------------------------------------------

class Algebra:
    kind = "abstract"
    closure_mode = "exact"
    closure_depth: Optional[int] = None
    signature: Signature

    def apply(self, op: str, args: Sequence):
        raise NotImplementedError

    def constant(self, k: int):
        if self.signature.infinite_constants:
            return k
        return self.signature.constants[k]

    def in_carrier(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and x >= 0

    def code(self, x) -> int:
        """Natural-number code used for the eta injection."""
        return x

    def rewrite(self, t):
        return canonical(t)

    def descriptor(self) -> dict:
        return {"kind": self.kind}

    def closure_contains(self, target, gens) -> Verdict:
        raise NotImplementedError

    def accumulator(self):
        return _GenericAccumulator(self)

    def min_term_index(self, target, args: Sequence, limit: int = 100_000) -> int:
        """Least l with tau^{len(args)}_l(args) == target (linear search)."""
        enum = _enumeration(self.signature, len(args))
        for idx in range(limit):
            if eval_term(self, enum.unrank(idx), args) == target:
                return idx
        raise AlgebraError(f"no term below index {limit} produces {target}")

    def __repr__(self):
        return f"{type(self).__name__}()"


class _GenericAccumulator:
    def __init__(self, alg):
        self.alg = alg
        self.gens = []

    def add(self, x):
        self.gens.append(x)

    def contains(self, target) -> bool:
        return self.alg.closure_contains(target, self.gens).status == IN


def eval_term(alg: Algebra, t, args: Sequence):
    if isinstance(t, Var):
        if t.index >= len(args):
            raise AlgebraError(f"term needs at least {t.index + 1} arguments")
        return args[t.index]
    if isinstance(t, Const):
        return alg.constant(t.index)
    if isinstance(t, Iter):
        x = eval_term(alg, t.arg, args)
        if isinstance(alg, UnaryAlgebra):
            return alg.iterate(x, t.count)
        for _ in range(t.count):
            x = alg.apply(t.op, [x])
        return x
    return alg.apply(t.op, [eval_term(alg, a, args) for a in t.args])


class UnaryAlgebra(Algebra):
    """Constant-free algebra with a single unary operation.

    Every n-place term is ``h^e(x_j)`` and has enumeration index ``e*n + j``.
    """

    op = "h"

    def __init__(self):
        self.signature = Signature(ops=((self.op, 1),))

    def step(self, x):
        raise NotImplementedError

    def apply(self, op, args):
        if op != self.op or len(args) != 1:
            raise AlgebraError(f"{self.kind} has only {self.op}/1")
        return self.step(args[0])

    def iterate(self, x, e: int):
        for _ in range(e):
            nxt = self.step(x)
            if nxt == x:
                break
            x = nxt
        return x

    def first_hit(self, start, target, limit: int) -> Optional[int]:
        """Least e <= limit with h^e(start) == target."""
        x = start
        for e in range(limit + 1):
            if x == target:
                return e
            nxt = self.step(x)
            if nxt == x:
                return None
            x = nxt
        return None

    def min_term_index(self, target, args, limit: int = 100_000) -> int:
        n = len(args)
        best = None
        for j, v in enumerate(args):
            e = self.first_hit(v, target, limit)
            if e is not None and (best is None or e * n + j < best):
                best = e * n + j
        if best is None:
            raise AlgebraError(f"{target} is not reachable from {list(args)}")
        return best

    def power_term(self, e: int, var: int = 0):
        return unary_power(self.op, e, var)


class PredecessorAlgebra(UnaryAlgebra):
    kind = "predecessor"
    op = "p"

    def step(self, x):
        return x - 1 if x > 0 else 0

    def iterate(self, x, e):
        return max(x - e, 0)

    def first_hit(self, start, target, limit):
        if start < target:
            return None
        e = start - target
        return e if e <= limit else None

    def closure_contains(self, target, gens) -> Verdict:
        gens = canonical_gens(gens)
        i = bisect.bisect_left(gens, target)
        if i == len(gens):
            return Verdict(OUT)
        return Verdict(IN, self.power_term(gens[i] - target), (i,))

    def accumulator(self):
        return _MaxAccumulator()

    def closure_set(self, gens) -> frozenset:
        gens = list(gens)
        return frozenset(range(max(gens) + 1)) if gens else frozenset()


class _MaxAccumulator:
    def __init__(self):
        self.top = None

    def add(self, x):
        if self.top is None or x > self.top:
            self.top = x

    def contains(self, target):
        return self.top is not None and target <= self.top


class _MinAccumulator:
    def __init__(self):
        self.bottom = None

    def add(self, x):
        if self.bottom is None or x < self.bottom:
            self.bottom = x

    def contains(self, target):
        return self.bottom is not None and target >= self.bottom


class SuccessorAlgebra(UnaryAlgebra):
    kind = "successor"
    op = "s"

    def step(self, x):
        return x + 1

    def iterate(self, x, e):
        return x + e

    def first_hit(self, start, target, limit):
        e = target - start
        return e if 0 <= e <= limit else None

    def closure_contains(self, target, gens) -> Verdict:
        gens = canonical_gens(gens)
        i = bisect.bisect_right(gens, target)
        if i == 0:
            return Verdict(OUT)
        return Verdict(IN, self.power_term(target - gens[i - 1]), (i - 1,))

    def accumulator(self):
        return _MinAccumulator()


def predecessor_algebra() -> PredecessorAlgebra:
    return PredecessorAlgebra()


def successor_algebra() -> SuccessorAlgebra:
    return SuccessorAlgebra()


# -- layered f/g algebra on ordinals below w^N -----------------------------------

def _below_rank(alpha: Ordinal, beta: Ordinal) -> int:
    """Bijection from {beta < alpha} onto N (or onto range(alpha) if finite)."""
    if alpha.is_finite:
        return int(beta)
    lead, coeff = alpha.terms[0]
    rest = Ordinal(alpha.terms[1:])
    if not beta.terms or beta.terms[0][0] < lead or beta.terms[0][1] < coeff:
        q = beta.terms[0][1] if beta.terms and beta.terms[0][0] == lead else 0
        low = Ordinal(tuple(t for t in beta.terms if t[0] < lead))
        idx_a = q + coeff * ord_code(low, lead)
        if rest.is_zero:
            return idx_a
        if rest.is_finite:
            return int(rest) + idx_a
        return 2 * idx_a
    idx_b = _below_rank(rest, Ordinal(beta.terms[1:]))
    return idx_b if rest.is_finite else 2 * idx_b + 1


def _below_unrank(alpha: Ordinal, k: int) -> Ordinal:
    if alpha.is_finite:
        return Ordinal.of(k)
    lead, coeff = alpha.terms[0]
    rest = Ordinal(alpha.terms[1:])
    in_b = False
    if rest.is_zero:
        idx = k
    elif rest.is_finite:
        in_b, idx = (True, k) if k < int(rest) else (False, k - int(rest))
    else:
        in_b, idx = (k % 2 == 1), k // 2
    if in_b:
        return Ordinal(((lead, coeff),) + _below_unrank(rest, idx).terms)
    q, code = idx % coeff, idx // coeff
    low = ord_decode(code, lead)
    return Ordinal((((lead, q),) if q else ()) + low.terms)


class LayeredAlgebra(Algebra):
    """``(w^N, f, g, k)_{k in N}`` with ``f(a, .)`` and ``g(a, .)`` mutually inverse.

    For infinite ``a`` of level ``L`` (``w^L <= a < w^(L+1)``), ``f(a, .)``
    maps ``{b : b < a}`` one-to-one onto ``{c : c < w^L}`` and ``g(a, .)`` is
    its inverse; every other argument pair maps to 0.
    """

    kind = "layered"
    closure_mode = "bounded"

    def __init__(self, degree: int = 4, closure_depth: int = 6, search_budget: int = 20_000):
        if degree < 1:
            raise AlgebraError("degree must be >= 1")
        self.degree = degree
        self.closure_depth = closure_depth
        self.search_budget = search_budget
        self.signature = Signature(ops=(("f", 2), ("g", 2)), infinite_constants=True)

    def descriptor(self):
        return {"kind": "layered", "N": self.degree, "closure_depth": self.closure_depth}

    def constant(self, k):
        return Ordinal.of(k)

    def in_carrier(self, x) -> bool:
        try:
            x = Ordinal.of(x)
        except (TypeError, OrdinalError):
            return False
        return all(e < self.degree for e, _ in x.terms)

    def code(self, x) -> int:
        return ord_code(x, self.degree)

    def f(self, alpha, beta) -> Ordinal:
        alpha, beta = Ordinal.of(alpha), Ordinal.of(beta)
        if alpha.is_finite or not beta < alpha:
            return Ordinal()
        level = ord_level(alpha)
        return ord_decode(_below_rank(alpha, beta), level)

    def g(self, alpha, gamma) -> Ordinal:
        alpha, gamma = Ordinal.of(alpha), Ordinal.of(gamma)
        if alpha.is_finite:
            return Ordinal()
        level = ord_level(alpha)
        if gamma.terms and gamma.terms[0][0] >= level:
            return Ordinal()
        return _below_unrank(alpha, ord_code(gamma, level))

    def apply(self, op, args):
        if op == "f":
            return self.f(*args)
        if op == "g":
            return self.g(*args)
        raise AlgebraError(f"unknown operation {op}")

    def closure_contains(self, target, gens, depth: Optional[int] = None) -> Verdict:
        target = Ordinal.of(target)
        gens = canonical_gens(Ordinal.of(g) for g in gens)
        depth = self.closure_depth if depth is None else depth
        search = _LayeredSearch(self, gens, self.search_budget)
        wit = search.find(target, depth)
        if wit is None:
            return Verdict(UNKNOWN, depth=depth)
        used = sorted({v.index for v in variables(wit)})
        remap = {old: new for new, old in enumerate(used)}
        return Verdict(IN, map_leaves(wit, lambda v: Var(remap[v.index])), tuple(used), depth)


class _LayeredSearch:
    """Goal-directed bounded search for a closure witness.

    A target is reached if it is a natural (constant), a generator, ``g(a, c)``
    with ``a`` a pivot above the target and ``c = f(a, target)`` reachable, or
    ``f(a, b)`` with ``b = g(a, target)`` reachable.
    """

    def __init__(self, alg: LayeredAlgebra, gens: list, budget: int):
        self.alg = alg
        self.gens = gens
        self.index = {g: i for i, g in enumerate(gens)}
        self.pivots = [g for g in gens if not g.is_finite]
        self.budget = budget
        self.failed = {}

    def find(self, target: Ordinal, depth: int):
        if target.is_finite:
            return Const(int(target))
        if target in self.index:
            return Var(self.index[target])
        if depth <= 0 or self.budget <= 0:
            return None
        if self.failed.get(target, -1) >= depth:
            return None
        self.budget -= 1
        for a in self.pivots:
            level = ord_level(a)
            if target < a:
                wit = self.find(self.alg.f(a, target), depth - 1)
                if wit is not None:
                    return App("g", (Var(self.index[a]), wit))
            if not target.terms or target.terms[0][0] < level:
                wit = self.find(self.alg.g(a, target), depth - 1)
                if wit is not None:
                    return App("f", (Var(self.index[a]), wit))
        self.failed[target] = max(self.failed.get(target, -1), depth)
        return None


def layered_algebra(N: int = 4, closure_depth: int = 6) -> LayeredAlgebra:
    return LayeredAlgebra(N, closure_depth)


def layered_f(alg: LayeredAlgebra, alpha, beta) -> Ordinal:
    return alg.f(alpha, beta)


def layered_g(alg: LayeredAlgebra, alpha, gamma) -> Ordinal:
    return alg.g(alpha, gamma)


def algebra_from_descriptor(desc) -> Algebra:
    """Build an algebra from ``{"kind": ...}`` or a bare name."""
    if isinstance(desc, str):
        desc = {"kind": desc}
    kind = desc.get("kind")
    if kind in ("predecessor", "pred"):
        return PredecessorAlgebra()
    if kind in ("successor", "succ"):
        return SuccessorAlgebra()
    if kind == "layered":
        return LayeredAlgebra(int(desc.get("N", 4)), int(desc.get("closure_depth", 6)))
    raise AlgebraError(f"unknown algebra kind {kind!r}")
