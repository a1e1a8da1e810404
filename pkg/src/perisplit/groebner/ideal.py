"""Ideals in weighted polynomial rings over Q, and what their Groebner bases tell us."""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import PerisplitError
from ..exactcore.poly import MPoly, PolyRing
from .buchberger import Budget, _divides, groebner as _groebner, reduce_full
from .hilbert import HilbertSeries, monomial_numerator
from .orders import MonomialOrder

DEFAULT_BUDGET = 20_000_000

INFINITE = float("inf")


def default_budget() -> int:
    raw = os.environ.get("PERISPLIT_BUDGET")
    if raw:
        try:
            val = int(raw)
        except ValueError:
            raise PerisplitError(f"PERISPLIT_BUDGET must be an integer, got {raw!r}") from None
        if val <= 0:
            raise PerisplitError("PERISPLIT_BUDGET must be positive")
        return val
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class IdealPresentation:
    """A polynomial ring with weights plus a finite list of generators."""

    ring: PolyRing
    generators: tuple[MPoly, ...]
    graded: bool = True

    def __init__(self, ring: PolyRing, generators: Iterable[MPoly] = (), graded: bool | None = None):
        gens = []
        for g in generators:
            if not isinstance(g, MPoly):
                g = ring.const(g)
            g = g.embed(ring)
            if g.is_zero():
                continue
            gens.append(g)
        homog = all(g.is_homogeneous() for g in gens)
        if graded is None:
            graded = homog
        elif graded and not homog:
            bad = next(g for g in gens if not g.is_homogeneous())
            raise ValueError(f"generator is not weight-homogeneous: {bad}")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "graded", graded)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def with_generators(self, more: Iterable[MPoly]) -> "IdealPresentation":
        return IdealPresentation(self.ring, list(self.generators) + list(more))

    def embed(self, ring: PolyRing) -> "IdealPresentation":
        return IdealPresentation(ring, [g.embed(ring) for g in self.generators])

    def to_json(self) -> dict:
        return {
            "variables": [{"name": n, "weight": w} for n, w in zip(self.ring.names, self.ring.weights)],
            "generators": [str(g) for g in self.generators],
        }


def make_order(ring: PolyRing, order: str | MonomialOrder = "grevlex", kill: Iterable[str] = ()) -> MonomialOrder:
    if isinstance(order, MonomialOrder):
        return order
    block = [ring.index(nm) for nm in kill]
    if block:
        return MonomialOrder("elim", ring.weights, block)
    return MonomialOrder(order, ring.weights)


class GroebnerBasis:
    """A reduced Groebner basis together with its ring and order."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, polys: list[dict]):
        self.ring = ring
        self.order = order
        self._raw = polys
        self.leading = [max(p, key=order.key) for p in polys]
        self.polys = [MPoly(ring, p, _trusted=True) for p in polys]
        self._divs = [(lt, p[lt], p) for lt, p in zip(self.leading, polys)]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def is_unit(self) -> bool:
        return any(not any(lt) for lt in self.leading)

    def reduce(self, p: MPoly) -> MPoly:
        p = p.embed(self.ring)
        return MPoly(self.ring, reduce_full(p.terms, self._divs, self.order), _trusted=True)

    def reduce_terms(self, terms: dict) -> dict:
        return reduce_full(terms, self._divs, self.order)

    def contains(self, p: MPoly) -> bool:
        return self.reduce(p).is_zero()

    def is_standard(self, exp: tuple) -> bool:
        return not any(_divides(lt, exp) for lt in self.leading)

    def serialize(self) -> list[str]:
        return [str(p) for p in self.polys]

    def hilbert_series(self) -> HilbertSeries:
        num = monomial_numerator(self.leading, self.ring.weights)
        return HilbertSeries(tuple(num), tuple(self.ring.weights))


def groebner_basis(I: IdealPresentation, order: str | MonomialOrder = "grevlex",
                   budget: int | None = None) -> GroebnerBasis:
    """Reduced monic Groebner basis of ``I`` for the given order tag."""
    mo = make_order(I.ring, order)
    if mo.tag != "lex" and any(w == 0 for w in I.ring.weights):
        raise PerisplitError("graded orders need every variable weight to be positive")
    raw = _groebner([g.terms for g in I.generators], mo, I.ring.weights,
                    Budget(default_budget() if budget is None else budget))
    return GroebnerBasis(I.ring, mo, raw)


def eliminate(I: IdealPresentation, kill: Iterable[str], budget: int | None = None) -> IdealPresentation:
    """I intersected with the subring on the variables not in ``kill``."""
    kill = list(kill)
    mo = make_order(I.ring, kill=kill)
    gb = GroebnerBasis(I.ring, mo, _groebner([g.terms for g in I.generators], mo, I.ring.weights,
                                             Budget(default_budget() if budget is None else budget)))
    idx = [I.ring.index(k) for k in kill]
    sub = I.ring.drop(kill)
    keep = [p for p, lt in zip(gb.polys, gb.leading) if all(lt[i] == 0 for i in idx)]
    # leading term free of killed variables implies the whole polynomial is, for an elimination order
    return IdealPresentation(sub, [p.embed(sub) for p in keep])


def standard_monomials(gb: GroebnerBasis, degree: int | None = None, limit: int | None = None) -> list[tuple]:
    """Standard monomials (of a given weighted degree, or all when finite)."""
    ring = gb.ring
    n = ring.nvars
    w = ring.weights
    if degree is None:
        if not_finite(gb):
            raise PerisplitError("the staircase is unbounded")
        out = []
        frontier = [(0,) * n]
        seen = set(frontier)
        while frontier:
            nxt = []
            for e in frontier:
                if gb.is_standard(e):
                    out.append(e)
                    for i in range(n):
                        ne = e[:i] + (e[i] + 1,) + e[i + 1:]
                        if ne not in seen:
                            seen.add(ne)
                            nxt.append(ne)
            frontier = nxt
            if limit is not None and len(out) > limit:
                raise PerisplitError("too many standard monomials")
        return sorted(out, key=lambda e: (ring.wdeg(e), e))
    return monomials_of_degree(w, degree, gb.is_standard)


def monomials_of_degree(weights: Sequence[int], degree: int, keep=None) -> list[tuple]:
    """All exponent vectors of the given weighted degree, optionally filtered.

    The filter must be closed under taking divisors (an order ideal), since
    it is applied to partial monomials during the search.
    """
    n = len(weights)
    out = []

    def rec(i, rem, cur):
        if i == n:
            if rem == 0:
                e = tuple(cur)
                if keep is None or keep(e):
                    out.append(e)
            return
        wi = weights[i]
        if wi == 0:
            raise PerisplitError("weight-0 variable in a graded enumeration")
        k = 0
        while k * wi <= rem:
            cur.append(k)
            partial = tuple(cur) + (0,) * (n - i - 1)
            if keep is None or keep(partial):
                rec(i + 1, rem - k * wi, cur)
            cur.pop()
            if keep is not None and not keep(tuple(cur) + (k + 1,) + (0,) * (n - i - 1)):
                break
            k += 1

    rec(0, degree, [])
    return out


def not_finite(gb: GroebnerBasis) -> bool:
    """True when some variable has no pure power among the leading monomials."""
    if gb.is_unit():
        return False
    n = gb.ring.nvars
    pure = set()
    for lt in gb.leading:
        nz = [i for i, x in enumerate(lt) if x]
        if len(nz) == 1:
            pure.add(nz[0])
    return len(pure) < n


def quotient_dimension(I: IdealPresentation | GroebnerBasis, budget: int | None = None):
    """dim_Q of ring/I, or INFINITE."""
    gb = I if isinstance(I, GroebnerBasis) else groebner_basis(I, budget=budget)
    if gb.is_unit():
        return 0
    if not_finite(gb):
        return INFINITE
    return len(standard_monomials(gb))


def hilbert_series(I: IdealPresentation | GroebnerBasis, budget: int | None = None) -> HilbertSeries:
    if isinstance(I, IdealPresentation) and not I.graded:
        raise PerisplitError("Hilbert series needs a weight-homogeneous ideal")
    gb = I if isinstance(I, GroebnerBasis) else groebner_basis(I, budget=budget)
    return gb.hilbert_series()


def ideal_contains(I: IdealPresentation | GroebnerBasis, polys: Iterable[MPoly], budget: int | None = None) -> bool:
    gb = I if isinstance(I, GroebnerBasis) else groebner_basis(I, budget=budget)
    return all(gb.contains(p) for p in polys)


def ideals_equal(I: IdealPresentation, J: IdealPresentation, budget: int | None = None) -> bool:
    """Mutual membership test of two ideals in the same ring."""
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")
    return ideal_contains(I, J.generators, budget) and ideal_contains(J, I.generators, budget)

