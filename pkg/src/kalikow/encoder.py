"""The code family F_n: prefix statistics, term pools, F0 values and decoding.

Notation follows the construction: for a prefix ``a`` of length ``n``

* ``u(a)``   -- indices ``l`` with ``a_l`` outside the closure of ``a(l, n)``, plus 0
* ``f_l, g_l`` -- the first window end covering ``a_l`` and the least term index
  producing it from that window
* ``k0 < k1`` and ``k < m <= l <= k1`` -- cut points; ``F_n(a)`` is
  ``F0_{k, l, n}(a)`` read as a natural number.

``a(i, j)`` always means the entries with index strictly between ``i`` and ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

from .algebra import (
    Algebra,
    AlgebraError,
    UnaryAlgebra,
    Var,
    enumerate_term,
    eval_term,
    map_leaves,
    substitute,
    term_index,
    variables,
)
from .hf import Bits, hf_to_code
from .ordinal import DEFAULT_DEGREE, Ordinal, ord_code

DEFAULT_POOL_BUDGET = 10 ** 7


class EncoderError(ValueError):
    pass


class PoolBudgetError(EncoderError):
    def __init__(self, size, budget):
        super().__init__(f"term pool work {size} exceeds budget {budget}")
        self.size = size
        self.budget = budget


@dataclass(frozen=True)
class CutPoints:
    k0: int
    k1: int
    l: int
    m: int
    k: int

    def as_dict(self):
        return {"k0": self.k0, "k1": self.k1, "l": self.l, "m": self.m, "k": self.k}


def _require_exact(alg: Algebra):
    if alg.closure_mode != "exact":
        raise EncoderError(f"{alg.kind} algebra has {alg.closure_mode} closure; the encoder needs exact closure")


# -- eta --------------------------------------------------------------------------

def eta_prefix(e, length: int, degree: Optional[int] = None) -> tuple:
    """First ``length`` bits (LSB first) of the code of ``e``.

    Naturals code as themselves; ordinals use :func:`ord_code` at ``degree``.
    """
    if isinstance(e, int) and not isinstance(e, bool):
        code = e if degree is None else ord_code(e, degree)
    else:
        code = ord_code(Ordinal.of(e), degree or DEFAULT_DEGREE)
    return tuple((code >> i) & 1 for i in range(length))


def eta_bits(alg: Algebra, value, length: int) -> Bits:
    code = alg.code(value)
    return Bits(tuple((code >> i) & 1 for i in range(length)))


# -- sessions -------------------------------------------------------------------------

class Session:
    """Incrementally computed u/f/g and cut points for the prefixes of one sequence.

    ``source`` is either a finite sequence or an object with ``entry(i)``
    (a :class:`~kalikow.sequences.SequenceSpec`).  ``f_l`` depends only on the
    sequence, not on the prefix length, so each is found once by a forward scan.
    """

    def __init__(self, alg: Algebra, source, pool_budget: int = DEFAULT_POOL_BUDGET, observer=None):
        _require_exact(alg)
        self.alg = alg
        self.pool_budget = pool_budget
        self.observer = observer
        if hasattr(source, "entry"):
            self._entry = source.entry
            self.limit = None
        else:
            values = list(source)
            self._entry = values.__getitem__
            self.limit = len(values)
        self.vals = []
        self._f = {}
        self._pending = {}
        self._g = {}
        self._u = {}
        self._cuts = {}
        self._codes = {}

    def ensure(self, n: int):
        if self.limit is not None and n > self.limit:
            raise EncoderError(f"prefix length {n} exceeds the available {self.limit} entries")
        for t in range(len(self.vals), n):
            v = self._entry(t)
            self.vals.append(v)
            done = []
            for ell, acc in self._pending.items():
                acc.add(v)
                if acc.contains(self.vals[ell]):
                    self._f[ell] = t + 1
                    done.append(ell)
            for ell in done:
                del self._pending[ell]
            self._pending[t] = self.alg.accumulator()

    def f(self, ell: int, n: Optional[int] = None) -> Optional[int]:
        """f_l, or None if a_l is not covered within the first ``n`` entries."""
        n = len(self.vals) if n is None else n
        self.ensure(max(n, ell + 1))
        f = self._f.get(ell)
        return f if f is not None and f <= n else None

    def f_inf(self, ell: int, search_limit: int = 100_000) -> int:
        """f_l against the infinite sequence; the caller guarantees it is finite."""
        n = max(len(self.vals), ell + 2)
        while ell not in self._f:
            if n > search_limit:
                raise EncoderError(f"f_{ell} not found below {search_limit}")
            n *= 2
            self.ensure(n)
        return self._f[ell]

    def g(self, ell: int) -> int:
        if ell not in self._g:
            f = self._f.get(ell)
            if f is None:
                raise EncoderError(f"g_{ell} undefined: f_{ell} unknown")
            self._g[ell] = self.alg.min_term_index(self.vals[ell], self.vals[ell + 1:f])
        return self._g[ell]

    def u(self, n: int) -> frozenset:
        if n not in self._u:
            self.ensure(n)
            self._u[n] = frozenset(
                {0} | {ell for ell in range(n) if self._f.get(ell, n + 1) > n}
            )
        return self._u[n]

    def cutpoints(self, n: int) -> CutPoints:
        if n < 2:
            raise EncoderError("cut points need a prefix of length >= 2")
        for j in range(2, n):
            if j not in self._cuts:
                self.cutpoints(j)
        if n not in self._cuts:
            u_n = self.u(n)
            k1 = min((self.u(n - 1) - u_n) | {n - 1})
            k0 = max(x for x in u_n if x < k1)
            l = k1
            for i in range(k0 + 1, k1):
                if self.g(i) > n:
                    l = i
                    break
            lo = max(1, k0)
            m = min(l, lo)
            for j in range(l, lo, -1):
                if self.cutpoints(j).k0 == k0:
                    m = j
                    break
            k = self.cutpoints(m).l if m > 1 else -1
            self._cuts[n] = CutPoints(k0, k1, l, m, k)
        return self._cuts[n]

    def prefix(self, n: int) -> list:
        self.ensure(n)
        return self.vals[:n]

    def F0(self, n: int):
        cut = self.cutpoints(n)
        return encode_F0(self.alg, cut.k, cut.l, n, self.prefix(n), budget=self.pool_budget)

    def code(self, n: int) -> int:
        if n not in self._codes:
            if n < 2:
                self._codes[n] = 0
            else:
                hf = self.F0(n)
                code = hf_to_code(hf)
                if self.observer is not None:
                    self.observer(hf, code)
                self._codes[n] = code
        return self._codes[n]


# -- stateless operations ---------------------------------------------------------------

def compute_u(alg: Algebra, pre: Sequence) -> frozenset:
    if len(pre) < 1:
        raise EncoderError("u needs a nonempty prefix")
    return Session(alg, pre).u(len(pre))


def compute_fg(alg: Algebra, pre: Sequence, ell: int):
    """(f_l, g_l) for the prefix; the defining minimum must exist within it."""
    n = len(pre)
    if not 0 <= ell < n:
        raise EncoderError(f"index {ell} outside prefix of length {n}")
    s = Session(alg, pre)
    f = s.f(ell, n)
    if f is None:
        raise EncoderError(f"a_{ell} is not in the closure of the later entries (l in u)")
    return f, s.g(ell)


def compute_cutpoints(alg: Algebra, pre: Sequence):
    cut = compute_lmk(alg, pre)
    return cut.k0, cut.k1


def compute_lmk(alg: Algebra, pre: Sequence) -> CutPoints:
    if len(pre) < 2:
        raise EncoderError("cut points need a prefix of length >= 2")
    return Session(alg, pre).cutpoints(len(pre))


# -- term pools ------------------------------------------------------------------------------

def unary_pool_bounds(n1: int, n2: int) -> tuple:
    """For a single unary operation h: ``bounds[m-1][j]`` is the largest e with
    ``h^e(x_j)`` in the m-place part of T_{n1,n2}.

    Simple terms give ``e*m + j <= n2``; a depth-d composition adds up to
    ``(d-1)*n2`` more applications (the outer factors are ``h^a(x_0)`` with
    ``a <= n2``).
    """
    width = n2 - n1
    return tuple(
        tuple((n2 - j) // m + (n2 - 1) * n2 for j in range(m)) for m in range(1, width + 1)
    )


def _pool_size_unary(n1, n2) -> int:
    return sum(b + 1 for row in unary_pool_bounds(n1, n2) for b in row)


def term_pool(alg: Algebra, n1: int, n2: int, budget: int = DEFAULT_POOL_BUDGET) -> frozenset:
    """T_{n1,n2} as a set of ``(arity, index)`` pairs."""
    if n1 > n2:
        raise EncoderError("term pool needs n1 <= n2")
    if isinstance(alg, UnaryAlgebra):
        size = _pool_size_unary(n1, n2)
        if size > budget:
            raise PoolBudgetError(size, budget)
        return frozenset(
            (m, e * m + j)
            for m, row in enumerate(unary_pool_bounds(n1, n2), start=1)
            for j, bound in enumerate(row)
            for e in range(bound + 1)
        )
    return frozenset(pool_by_composition(alg, n1, n2, budget))


def pool_by_composition(alg: Algebra, n1: int, n2: int, budget: int = DEFAULT_POOL_BUDGET) -> set:
    """T_{n1,n2} computed by iterating substitution of simple terms (any signature)."""
    sig = alg.signature
    width = n2 - n1
    arities = [m for m in range(0, width + 1) if m > 0 or sig.has_constants]
    simple = {m: {alg.rewrite(enumerate_term(m, idx, sig)) for idx in range(n2 + 1)} for m in arities}
    pools = {m: set(ts) for m, ts in simple.items()}
    outer = [(k, t) for k in arities if k > 0 for t in simple[k]]
    for _ in range(1, n2):
        work = sum(len(pools[m]) ** k for m in arities for k, _ in outer)
        if work > budget:
            raise PoolBudgetError(work, budget)
        grown = False
        for m in arities:
            inner = list(pools[m])
            new = set()
            for k, tau in outer:
                for sigma in product(inner, repeat=k):
                    new.add(alg.rewrite(substitute(tau, sigma)))
            if not new <= pools[m]:
                pools[m] |= new
                grown = True
        if not grown:
            break
    return {(m, term_index(t, m, sig)) for m in arities for t in pools[m]}


# -- F0 --------------------------------------------------------------------------------------

def encode_F0(alg: Algebra, n0: int, n1: int, n2: int, pre: Sequence, *, compact: Optional[bool] = None,
              budget: int = DEFAULT_POOL_BUDGET):
    """The HF value F0_{n0,n1,n2}(pre) as a 5-tuple (a)..(e).

    ``compact=False`` builds the clause sets literally.  ``compact=True`` (the
    default for single-unary-operation algebras) stores an equivalent summary:
    (b) the per-variable exponent bounds of the pool, (c) the eta prefix of
    each value class, (d) for each i in [n0, n1) the class equal to a_i, and
    (e) the value classes as runs of (index, exponent).  Two prefixes get equal
    compact values exactly when their literal values are equal.
    """
    if len(pre) != n2:
        raise EncoderError(f"prefix length {len(pre)} != n2 = {n2}")
    if not (n0 <= n1 <= n2) or n0 < -1:
        raise EncoderError(f"need -1 <= n0 <= n1 <= n2, got {(n0, n1, n2)}")
    if compact is None:
        compact = isinstance(alg, UnaryAlgebra)
    if compact:
        if not isinstance(alg, UnaryAlgebra):
            raise EncoderError("compact F0 needs a single-unary-operation algebra")
        return _compact_F0(alg, n0, n1, n2, list(pre), budget)
    return _literal_F0(alg, n0, n1, n2, list(pre), budget)


def _literal_F0(alg, n0, n1, n2, pre, budget):
    sig = alg.signature
    lo = max(0, n0)
    window = range(n1, n2)
    pool = term_pool(alg, n1, n2, budget)
    work = sum(len(window) ** m for m, _ in pool)
    if work > budget:
        raise PoolBudgetError(work, budget)
    evaluated = []  # (m, idx, args, value)
    for m, idx in sorted(pool):
        term = enumerate_term(m, idx, sig)
        for args in product(window, repeat=m):
            evaluated.append((m, idx, args, eval_term(alg, term, [pre[i] for i in args])))
    clause_c = frozenset((eta_bits(alg, v, n2), m, idx, args) for m, idx, args, v in evaluated)
    clause_d = frozenset(
        (m, idx, args, i) for m, idx, args, v in evaluated for i in range(lo, n1) if pre[i] == v
    )
    by_value = {}
    for m, idx, args, v in evaluated:
        if all(a < b for a, b in zip(args, args[1:])):
            by_value.setdefault(v, []).append((m, idx, args))
    if sum(len(g) ** 2 for g in by_value.values()) > budget:
        raise PoolBudgetError(sum(len(g) ** 2 for g in by_value.values()), budget)
    clause_e = frozenset(
        (m1, i1, m2, i2, a1, a2)
        for group in by_value.values()
        for m1, i1, a1 in group
        for m2, i2, a2 in group
    )
    return ((n0, n1, n2), pool, clause_c, clause_d, clause_e)


def _compact_F0(alg: UnaryAlgebra, n0, n1, n2, pre, budget):
    lo = max(0, n0)
    header = (n0, n1, n2)
    if n2 == n1:
        return (header, (), (), (), ())
    bounds = unary_pool_bounds(n1, n2)
    top = bounds[0][0]
    classes = {}
    work = 0
    for s in range(n1, n2):
        x = pre[s]
        for e in range(top + 1):
            nxt = alg.step(x)
            if nxt == x:
                classes.setdefault(x, []).append((s, e, top))
                break
            classes.setdefault(x, []).append((s, e, e))
            x = nxt
            work += 1
            if work > budget:
                raise PoolBudgetError(work, budget)
    ordered = sorted(classes.items(), key=lambda kv: kv[1])
    etas = tuple(eta_bits(alg, v, n2) for v, _ in ordered)
    members = tuple(tuple(runs) for _, runs in ordered)
    position = {v: i for i, (v, _) in enumerate(ordered)}
    links = tuple(position.get(pre[i], -1) for i in range(lo, n1))
    return (header, bounds, etas, links, members)


def encode_Fn(alg: Algebra, pre: Sequence, budget: int = DEFAULT_POOL_BUDGET) -> int:
    n = len(pre)
    if n < 2:
        _require_exact(alg)
        return 0
    return Session(alg, pre, budget).code(n)


# -- prefix-monotone variant ------------------------------------------------------------------

def monotone_encode(alg: Algebra, pre: Sequence, budget: int = DEFAULT_POOL_BUDGET) -> list:
    """Blocks ``F_1(pre|1), ..., F_n(pre|n)`` laid end to end, one symbol each.

    Each block is a single natural (the alphabet is N), so block j always sits
    at position j-1 and eventual equality of the block streams is preserved.
    """
    s = Session(alg, pre, budget)
    return [s.code(j) for j in range(1, len(pre) + 1)]


def monotone_blocks(stream: Sequence) -> list:
    """Split a monotone stream back into ``(j, code)`` blocks."""
    return [(j, code) for j, code in enumerate(stream, start=1)]


# -- reading F0 values back ----------------------------------------------------------------

class LiteralView:
    def __init__(self, hf):
        self.header = hf[0]
        self._eta = {(m, idx, args): bits for bits, m, idx, args in hf[2]}
        self._wit = {}
        for m, idx, args, i in hf[3]:
            key = (m, idx, args)
            if i not in self._wit or key < self._wit[i]:
                self._wit[i] = key

    def witness(self, i):
        return self._wit.get(i)

    def eta(self, m, idx, args):
        return self._eta.get((m, idx, tuple(args)))


class CompactView:
    def __init__(self, hf):
        self.header = hf[0]
        n0, n1, n2 = self.header
        self._lo, self._n1, self._n2 = max(0, n0), n1, n2
        self._bounds, self._etas, self._links, self._members = hf[1], hf[2], hf[3], hf[4]

    def witness(self, i):
        if not self._lo <= i < self._n1 or not self._links:
            return None
        c = self._links[i - self._lo]
        if c < 0:
            return None
        e, s = min((e_lo, s) for s, e_lo, _ in self._members[c])
        return (1, e, (s,))

    def eta(self, m, idx, args):
        args = tuple(args)
        if not 1 <= m <= len(self._bounds) or len(args) != m:
            return None
        if any(not self._n1 <= a < self._n2 for a in args):
            return None
        e, j = divmod(idx, m)
        if e > self._bounds[m - 1][j]:
            return None
        s = args[j]
        for c, runs in enumerate(self._members):
            for rs, e_lo, e_hi in runs:
                if rs == s and e_lo <= e <= e_hi:
                    return self._etas[c]
        return None


def f0_view(hf):
    return CompactView(hf) if isinstance(hf[1], tuple) else LiteralView(hf)


# -- decode replay ----------------------------------------------------------------------------

RECOVERED, MISMATCH, NOT_RECOVERABLE = "recovered", "mismatch", "not-recoverable-by-chain"


@dataclass
class ReplayReport:
    target: int
    nprime: int
    n_double_prime: Optional[int] = None
    max_u: Optional[int] = None
    chain: list = field(default_factory=list)
    levels: list = field(default_factory=list)
    start_level: Optional[int] = None
    steps: list = field(default_factory=list)
    composite: Optional[str] = None
    recovered: Optional[str] = None
    expected: Optional[str] = None
    status: str = NOT_RECOVERABLE
    reason: str = ""

    @property
    def match(self) -> bool:
        return self.status == RECOVERED

    def as_dict(self):
        return {
            "target": self.target, "nprime": self.nprime, "n_double_prime": self.n_double_prime,
            "max_u": self.max_u, "chain": self.chain, "levels": self.levels,
            "start_level": self.start_level, "steps": self.steps, "composite": self.composite,
            "recovered": self.recovered, "expected": self.expected, "status": self.status,
            "reason": self.reason,
        }


class ReplayError(EncoderError):
    pass


def _leaves(t):
    return (v.index for v in variables(t))


def _reindex(t, mapping):
    return map_leaves(t, lambda v: mapping[v.index])


def decode_replay(alg: Algebra, spec, target: int, nprime: int, search_limit: int = 4096,
                  budget: int = DEFAULT_POOL_BUDGET) -> ReplayReport:
    """Recover ``eta(a_target) | m_0`` from the F0 values along the m-chain.

    The chain ``m_0 = n'', m_{k+1} = m(a|m_k)`` is located white-box; the
    recovery itself reads only the F0 values at ``m_0 .. m_{k*-1}``: clause (d)
    witnesses are composed upward from the level whose [k, l) window holds the
    target, and clause (c) of the top value yields the eta prefix.
    """
    from .symbolic import tail_u

    if nprime <= target:
        raise ReplayError("nprime must exceed the target index")
    u_inf, _ = tail_u(alg, spec)
    top_u = max(u_inf)
    session = Session(alg, spec, budget)
    rep = ReplayReport(target=target, nprime=nprime, max_u=top_u)

    n2 = None
    for cand in range(nprime + 1, search_limit + 1):
        cut = session.cutpoints(cand)
        if cut.m > nprime and cut.k0 == top_u:
            n2 = cand
            break
    if n2 is None:
        raise ReplayError(f"no n'' > {nprime} with m > {nprime} and k0 = max u below {search_limit}")
    rep.n_double_prime = n2

    chain = [n2]
    while chain[-1] > target and chain[-1] >= 2:
        chain.append(session.cutpoints(chain[-1]).m)
    rep.chain = chain
    top_levels = len(chain) - 1  # levels 0 .. k*-1 carry F0 values
    values = [session.F0(chain[i]) for i in range(top_levels)]

    # Black-box phase: only ``values`` from here on.
    views = [f0_view(hf) for hf in values]
    rep.levels = [{"m": v.header[2], "k": v.header[0], "l": v.header[1]} for v in views]
    start = None
    for lvl in range(top_levels - 1, -1, -1):
        k, l, _ = views[lvl].header
        if max(0, k) <= target < l:
            start = lvl
            break
    if start is None:
        rep.reason = "target lies in no [k, l) window of the chain"
        return rep
    rep.start_level = start

    sig = alg.signature
    term = Var(target)
    for lvl in range(start, -1, -1):
        mapping = {}
        for s in sorted(set(_leaves(term))):
            wit = views[lvl].witness(s)
            if wit is None:
                rep.reason = f"no clause (d) witness for index {s} at level {lvl}"
                return rep
            m, idx, args = wit
            mapping[s] = substitute(enumerate_term(m, idx, sig), [Var(a) for a in args])
            rep.steps.append({"level": lvl, "index": s, "arity": m, "term_index": idx, "args": list(args)})
        term = _reindex(term, mapping)

    used = sorted(set(_leaves(term)))
    local = alg.rewrite(_reindex(term, {s: Var(i) for i, s in enumerate(used)}))
    rep.composite = f"{local} @ {used}"
    try:
        idx = term_index(local, len(used), sig)
    except AlgebraError as exc:
        rep.reason = str(exc)
        return rep
    bits = views[0].eta(len(used), idx, used)
    if bits is None:
        rep.reason = "composite term not covered by clause (c) of the top value"
        return rep
    m0 = chain[0]
    expected = eta_bits(alg, session.vals[target], m0)
    rep.recovered, rep.expected = str(bits), str(expected)
    rep.status = RECOVERED if bits == expected else MISMATCH
    return rep
