"""Slow, independent reference implementations used as test oracles."""

from itertools import product

from kalikow.algebra import Const, Var, enumerate_term, eval_term, make_app


def pred_closure(gens):
    """Saturate ``gens`` under p(k) = max(k-1, 0)."""
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        x = frontier.pop()
        y = max(x - 1, 0)
        if y not in seen:
            seen.add(y)
            frontier.append(y)
    return seen


def terms_by_weight(sig, n, max_weight):
    """Every n-place term of weight <= max_weight, grouped by weight."""
    by_w = {w: [] for w in range(1, max_weight + 1)}
    for i in range(n):
        by_w[1].append(Var(i))
    if sig.infinite_constants:
        for k in range(max_weight):
            by_w[k + 1].append(Const(k))
    else:
        for k in range(len(sig.constants)):
            by_w[1].append(Const(k))
    for w in range(2, max_weight + 1):
        for op, arity in sig.ops:
            for split in _compositions(w - 1, arity):
                for children in product(*(by_w[s] for s in split)):
                    by_w[w].append(make_app(op, children))
    return by_w


def _compositions(total, parts):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def brute_u(pre):
    n = len(pre)
    return {0} | {ell for ell in range(n) if pre[ell] not in pred_closure(pre[ell + 1:])}


def brute_fg(alg, pre, ell):
    f = next(j for j in range(ell + 2, len(pre) + 1) if pre[ell] in pred_closure(pre[ell + 1:j]))
    args = pre[ell + 1:f]
    g = 0
    while eval_term(alg, enumerate_term(len(args), g, alg.signature), args) != pre[ell]:
        g += 1
    return f, g


def brute_cutpoints(alg, pre):
    """(k0, k1, l, m, k) straight from the max-form definitions."""
    n = len(pre)
    u = brute_u(pre)
    k1 = min((brute_u(pre[:-1]) - u) | {n - 1})
    k0 = max(x for x in u if x < k1)

    def l_ok(j):
        return j <= k0 or all(brute_fg(alg, pre, i)[1] <= n for i in range(k0 + 1, j))

    l = max(j for j in range(k1 + 1) if l_ok(j))

    def m_ok(j):
        return j <= max(1, k0) or brute_cutpoints(alg, pre[:j])[0] == k0

    m = max(j for j in range(l + 1) if m_ok(j))
    k = brute_cutpoints(alg, pre[:m])[2] if m > 1 else -1
    return k0, k1, l, m, k
