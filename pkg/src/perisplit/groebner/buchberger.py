"""Buchberger's algorithm on raw term dictionaries.

Polynomials here are plain ``dict[exp_tuple, Fraction]``.  Pair selection is
the normal strategy; useless pairs are dropped with the Gebauer-Moeller
criteria (which subsume the product and chain criteria).
"""
from __future__ import annotations

import heapq
from fractions import Fraction

from ..errors import BudgetExceeded
from .orders import MonomialOrder


class Budget:
    """Mutable step counter shared by the reductions of one computation."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def spend(self, k: int = 1) -> None:
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"Groebner step budget of {self.limit} exhausted")


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def leading(p: dict, order: MonomialOrder) -> tuple:
    return max(p, key=order.key)


class _Basis:
    """Leading data of the polynomials collected so far."""

    def __init__(self):
        self.polys: list[dict] = []
        self.lts: list[tuple] = []
        self.lcs: list[Fraction] = []

    def add(self, p: dict, lt: tuple) -> int:
        self.polys.append(p)
        self.lts.append(lt)
        self.lcs.append(p[lt])
        return len(self.polys) - 1


def reduce_full(p: dict, divisors: list[tuple[tuple, Fraction, dict]], order: MonomialOrder,
                budget: Budget | None = None) -> dict:
    """Fully reduce ``p`` by ``divisors`` given as (lt, lc, poly) triples."""
    p = dict(p)
    out: dict = {}
    key = order.key
    while p:
        m = max(p, key=key)
        c = p.pop(m)
        for lt, lc, g in divisors:
            if _divides(lt, m):
                if budget is not None:
                    budget.spend()
                f = c / lc
                shift = tuple(a - b for a, b in zip(m, lt))
                for e, gc in g.items():
                    if e == lt:
                        continue
                    ne = tuple(a + b for a, b in zip(e, shift))
                    v = p.get(ne, 0) - f * gc
                    if v:
                        p[ne] = v
                    else:
                        p.pop(ne, None)
                break
        else:
            out[m] = c
    return out


def reduce_top(p: dict, divisors, order: MonomialOrder, budget: Budget | None = None) -> dict:
    """Reduce only until the leading term is irreducible (or p is zero)."""
    p = dict(p)
    key = order.key
    while p:
        m = max(p, key=key)
        for lt, lc, g in divisors:
            if _divides(lt, m):
                if budget is not None:
                    budget.spend()
                f = p[m] / lc
                shift = tuple(a - b for a, b in zip(m, lt))
                for e, gc in g.items():
                    ne = tuple(a + b for a, b in zip(e, shift))
                    v = p.get(ne, 0) - f * gc
                    if v:
                        p[ne] = v
                    else:
                        p.pop(ne, None)
                break
        else:
            return p
    return p


def _spoly(f: dict, lf: tuple, g: dict, lg: tuple) -> dict:
    lcm = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    cf = f[lf]
    cg = g[lg]
    out: dict = {}
    for e, c in f.items():
        ne = tuple(a + b for a, b in zip(e, sf))
        out[ne] = c / cf
    for e, c in g.items():
        ne = tuple(a + b for a, b in zip(e, sg))
        v = out.get(ne, 0) - c / cg
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    return out


def groebner(polys: list[dict], order: MonomialOrder, weights: tuple, budget: Budget | None = None) -> list[dict]:
    """Reduced monic Groebner basis, sorted by decreasing leading monomial."""
    budget = budget or Budget(None)
    key = order.key
    basis = _Basis()
    pairs: list = []  # heap of (lcm degree, lcm key, counter, i, j, lcm)
    counter = 0
    current: list[int] = []

    def wdeg(e):
        return sum(a * b for a, b in zip(e, weights))

    def update(h: int):
        nonlocal counter, pairs, current
        lh = basis.lts[h]
        cands = [(g, _lcm(basis.lts[g], lh)) for g in current]
        # Gebauer-Moeller step 1: keep a pair (g,h) only if no other new pair's lcm
        # properly divides its lcm, and among equal lcms keep one (prefer coprime).
        cps = [_coprime(basis.lts[g], lh) for g, _ in cands]
        kept = []
        for idx, (g, l) in enumerate(cands):
            dominated = False
            for jdx, (g2, l2) in enumerate(cands):
                if jdx == idx:
                    continue
                if l2 != l:
                    if _divides(l2, l):
                        dominated = True
                        break
                elif (cps[jdx] and not cps[idx]) or (cps[jdx] == cps[idx] and jdx < idx):
                    dominated = True
                    break
            if not dominated:
                kept.append((g, l, cps[idx]))
        # Buchberger's product criterion on the survivors
        new_pairs = [(g, l) for g, l, cp in kept if not cp]
        # Gebauer-Moeller step 2: prune old pairs whose lcm is strictly divisible by lh
        survivors = []
        for item in pairs:
            _, _, _, i, j, l = item
            if _divides(lh, l) and _lcm(basis.lts[i], lh) != l and _lcm(basis.lts[j], lh) != l:
                continue
            survivors.append(item)
        pairs = survivors
        heapq.heapify(pairs)
        for g, l in new_pairs:
            counter += 1
            heapq.heappush(pairs, (wdeg(l), key(l), counter, g, h, l))
        current = [g for g in current if not _divides(lh, basis.lts[g])] + [h]

    # seed: reduce inputs against each other as they arrive, smallest first
    seeds = [dict(p) for p in polys if p]
    seeds.sort(key=lambda p: key(leading(p, order)))
    for p in seeds:
        divs = [(basis.lts[g], basis.lcs[g], basis.polys[g]) for g in current]
        r = reduce_top(p, divs, order, budget)
        if r:
            lt = leading(r, order)
            update(basis.add(r, lt))

    while pairs:
        _, _, _, i, j, l = heapq.heappop(pairs)
        budget.spend()
        s = _spoly(basis.polys[i], basis.lts[i], basis.polys[j], basis.lts[j])
        if not s:
            continue
        divs = [(basis.lts[g], basis.lcs[g], basis.polys[g]) for g in current]
        r = reduce_top(s, divs, order, budget)
        if r:
            lt = leading(r, order)
            update(basis.add(r, lt))

    # minimal basis, then interreduce and normalize
    gens = [(basis.lts[g], basis.polys[g]) for g in current]
    gens.sort(key=lambda t: key(t[0]))
    minimal = []
    for lt, p in gens:
        if not any(_divides(olt, lt) for olt, _ in minimal):
            minimal.append((lt, p))
    result = []
    for idx, (lt, p) in enumerate(minimal):
        others = [(olt, op[olt], op) for k, (olt, op) in enumerate(minimal) if k != idx]
        lc = p[lt]
        tail = {e: c for e, c in p.items() if e != lt}
        tail = reduce_full(tail, others, order, budget)
        q = {lt: Fraction(1)}
        for e, c in tail.items():
            q[e] = c / lc
        result.append(q)
    result.sort(key=lambda p: key(leading(p, order)), reverse=True)
    return result
