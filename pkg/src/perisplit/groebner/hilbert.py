"""Hilbert series of monomial ideals (Bigatti-style pivot recursion)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


def _padd(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pmul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(a: list[int], k: int) -> list[int]:
    return [0] * k + a if a else []


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _minimalize(gens: list[tuple]) -> list[tuple]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple] = []
    for g in gens:
        if not any(all(x <= y for x, y in zip(h, g)) for h in out):
            out.append(g)
    return out


def monomial_numerator(gens: Sequence[tuple], weights: Sequence[int]) -> list[int]:
    """Numerator N(t) with HS(S/I) = N(t) / prod(1 - t^w) for a monomial ideal I."""
    weights = tuple(weights)
    memo: dict = {}

    def wdeg(e):
        return sum(a * b for a, b in zip(e, weights))

    def rec(gs: tuple) -> list[int]:
        if gs in memo:
            return memo[gs]
        gl = list(gs)
        if not gl:
            res = [1]
        else:
            nonpure = [g for g in gl if sum(1 for x in g if x) > 1]
            if not nonpure:
                # pure powers in distinct variables: a complete intersection
                res = [1]
                for g in gl:
                    res = _pmul(res, _padd([1], _shift([-1], wdeg(g))))
            else:
                n = len(weights)
                counts = [sum(1 for g in nonpure if g[v]) for v in range(n)]
                v = max(range(n), key=lambda k: counts[k])
                exps = sorted(g[v] for g in nonpure if g[v])
                e = exps[(len(exps) - 1) // 2]
                pivot = tuple(e if k == v else 0 for k in range(n))
                plus = _minimalize(gl + [pivot])
                colon = _minimalize([tuple(max(x - y, 0) for x, y in zip(g, pivot)) for g in gl])
                res = _padd(rec(tuple(sorted(plus))), _shift(rec(tuple(sorted(colon))), wdeg(pivot)))
        memo[gs] = res
        return res

    gens = _minimalize([tuple(g) for g in gens])
    if any(not any(g) for g in gens):
        return []  # the unit ideal
    return rec(tuple(sorted(gens)))


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / prod_i (1 - t^{weights[i]})`` with integer numerator coefficients."""

    numerator: tuple[int, ...]
    weights: tuple[int, ...]
    expansion: tuple[int, ...] = field(default=(), compare=False)

    def expand(self, order: int) -> list[int]:
        """Coefficients of t^0..t^order."""
        series = [0] * (order + 1)
        for i, c in enumerate(self.numerator):
            if i <= order:
                series[i] = c
        for w in self.weights:
            if w == 0:
                raise ValueError("weight-0 variable: Hilbert series is not a power series")
            for d in range(w, order + 1):
                series[d] += series[d - w]
        return series

    def reduced(self) -> tuple[list[int], int]:
        """Cancel factors (1-t) as far as possible: returns (numerator, #remaining (1-t^w) factors)."""
        num = list(self.numerator)
        dens = list(self.weights)
        # write each 1 - t^w = (1 - t)(1 + ... + t^{w-1}); cancel (1 - t) from num while possible
        k = 0
        while num and sum(num) == 0 and k < len(dens):
            num = _divide_by_one_minus_t(num)
            k += 1
        return num, len(dens) - k

    def krull_dimension(self) -> int:
        if not self.numerator:
            return -1
        return self.reduced()[1]

    def is_polynomial(self) -> bool:
        return self.krull_dimension() == 0

    def as_polynomial(self) -> list[int]:
        """The Hilbert polynomial of a finite-length quotient (raises otherwise)."""
        num = list(self.numerator)
        for w in self.weights:
            num = _divide_exact(num, [1] + [0] * (w - 1) + [-1])
            if num is None:
                raise ValueError("quotient is not finite-dimensional")
        return num

    def dimension(self) -> int | None:
        """Total vector-space dimension, or None when infinite."""
        if not self.numerator:
            return 0
        if self.krull_dimension() > 0:
            return None
        return sum(self.as_polynomial())

    def numerator_str(self, var: str = "t") -> str:
        return poly_str(self.numerator, var)


def _divide_by_one_minus_t(num: list[int]) -> list[int]:
    # num / (1 - t) when num(1) = 0: partial sums
    out = []
    acc = 0
    for c in num[:-1]:
        acc += c
        out.append(acc)
    return _trim(out)


def _divide_exact(num: list[int], den: list[int]) -> list[int] | None:
    num = [Fraction(x) for x in num]
    if not any(num):
        return []
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return None
    q = [Fraction(0)] * (len(num) - dd)
    rem = list(num)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + dd] / lead
        q[k] = c
        for i, d in enumerate(den):
            rem[k + i] -= c * d
    if any(rem):
        return None
    if any(x.denominator != 1 for x in q):
        return None
    return _trim([int(x) for x in q])


def poly_str(coeffs: Sequence[int], var: str = "t") -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        a = abs(c)
        body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append((" - " if c < 0 else " + ") + body)
    return "".join(terms) or "0"
