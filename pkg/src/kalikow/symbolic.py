"""Symbolic closure of infinite tails for the order-type unary algebras.

For the predecessor algebra ``cl(X)`` is the down-set of ``sup X``; for the
successor algebra it is the up-set of ``min X``.  Both can therefore decide
``a_l in cl({a_k : k > l})`` on an eventually periodic or ramp sequence by
looking at the finite edited stretch plus the values that recur forever.
"""

from __future__ import annotations


class Star0Violation(Exception):
    """The tail-closure property fails: infinitely many indices escape their tail's closure."""

    def __init__(self, indices, message="u-set is infinite"):
        super().__init__(f"{message}; witnesses {list(indices)}")
        self.indices = tuple(indices)


class UnsupportedSpec(Exception):
    pass


def supports_symbolic(alg) -> bool:
    return getattr(alg, "kind", None) in ("predecessor", "successor")


def tail_u(alg, spec, witness_count: int = 16):
    """Return ``(u_inf, n_star)`` for the infinite sequence described by ``spec``.

    ``u_inf`` is ``{l : a_l not in cl(tail beyond l)} | {0}`` and
    ``n_star = 1 + max(u_inf)``.  Raises :class:`Star0Violation` when the set
    is infinite.
    """
    if not supports_symbolic(alg):
        raise UnsupportedSpec(f"no symbolic tail closure for {getattr(alg, 'kind', alg)!r}")
    downward = alg.kind == "predecessor"
    stable = spec.stable_from
    recurring = spec.tail_values()
    prefix = spec.prefix(stable)
    u = {0}
    if recurring is None:
        # Strictly increasing ramp beyond ``stable``.
        if not downward:
            start = max(stable, 0)
            raise Star0Violation(range(start, start + witness_count))
        return frozenset(u), 1
    bound = max(recurring) if downward else min(recurring)
    for ell in range(stable - 1, -1, -1):
        v = prefix[ell]
        if (v > bound) if downward else (v < bound):
            u.add(ell)
        bound = max(bound, v) if downward else min(bound, v)
    return frozenset(u), 1 + max(u)


def tail_bound(alg, spec, ell: int):
    """sup (predecessor) or min (successor) of the entries beyond ``ell``; None for an unbounded sup."""
    downward = alg.kind == "predecessor"
    stable = spec.stable_from
    recurring = spec.tail_values()
    start = max(ell + 1, stable)
    if recurring is None:
        if downward:
            return None
        recurring = (spec.base_entry(start),)
    pick = max if downward else min
    return pick([*spec.prefix(stable)[ell + 1:], *recurring])


def tail_contains(alg, spec, ell: int) -> bool:
    """Whether ``a_ell`` lies in the closure of the entries with larger index."""
    if not supports_symbolic(alg):
        raise UnsupportedSpec(f"no symbolic tail closure for {getattr(alg, 'kind', alg)!r}")
    bound = tail_bound(alg, spec, ell)
    v = spec.entry(ell)
    if alg.kind == "predecessor":
        return bound is None or v <= bound
    return v >= bound
