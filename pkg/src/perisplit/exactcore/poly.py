"""Sparse multivariate polynomials over Q on a named, weighted variable table."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .dual import as_rat

Exp = tuple  # exponent vector, tuple[int, ...]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PolyRing:
    """An ordered table of variable names with nonnegative integer weights."""

    __slots__ = ("names", "weights", "_index", "_hash")

    def __init__(self, names: Sequence[str], weights: Sequence[int] | None = None):
        names = tuple(names)
        weights = tuple(1 for _ in names) if weights is None else tuple(int(w) for w in weights)
        if len(weights) != len(names):
            raise ValueError("names and weights differ in length")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for nm in names:
            if not _NAME.match(nm) or nm == "eps":
                raise ValueError(f"invalid variable name {nm!r}")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        self.names = names
        self.weights = weights
        self._index = {nm: i for i, nm in enumerate(names)}
        self._hash = hash((names, weights))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.weights == other.weights

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        return f"PolyRing({body})"

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def weight_of(self, name: str) -> int:
        return self.weights[self.index(name)]

    def wdeg(self, exp: Exp) -> int:
        return sum(e * w for e, w in zip(exp, self.weights))

    def zero(self) -> "MPoly":
        return MPoly(self, {}, _trusted=True)

    def one(self) -> "MPoly":
        return self.const(1)

    def const(self, c) -> "MPoly":
        c = as_rat(c)
        if c == 0:
            return self.zero()
        return MPoly(self, {(0,) * self.nvars: c}, _trusted=True)

    def gen(self, name: str) -> "MPoly":
        i = self.index(name)
        exp = tuple(1 if k == i else 0 for k in range(self.nvars))
        return MPoly(self, {exp: Fraction(1)}, _trusted=True)

    def gens(self) -> list["MPoly"]:
        return [self.gen(nm) for nm in self.names]

    def monomial(self, exp: Exp, coeff=1) -> "MPoly":
        return MPoly(self, {tuple(exp): coeff})

    def extend(self, names: Sequence[str], weights: Sequence[int] | None = None) -> "PolyRing":
        weights = [1] * len(names) if weights is None else list(weights)
        return PolyRing(self.names + tuple(names), self.weights + tuple(weights))

    def drop(self, names: Iterable[str]) -> "PolyRing":
        kill = set(names)
        keep = [(n, w) for n, w in zip(self.names, self.weights) if n not in kill]
        return PolyRing([n for n, _ in keep], [w for _, w in keep])

    def reweighted(self, weights: Mapping[str, int] | Sequence[int]) -> "PolyRing":
        if isinstance(weights, Mapping):
            w = [weights.get(n, ow) for n, ow in zip(self.names, self.weights)]
        else:
            w = list(weights)
        return PolyRing(self.names, w)

    def parse(self, text: str) -> "MPoly":
        return MPoly.parse(self, text)

    def __call__(self, x) -> "MPoly":
        if isinstance(x, MPoly):
            return x.embed(self)
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)


def _exp_str(ring: PolyRing, exp: Exp) -> str:
    parts = []
    for nm, e in zip(ring.names, exp):
        if e == 1:
            parts.append(nm)
        elif e > 1:
            parts.append(f"{nm}^{e}")
    return "*".join(parts)


class MPoly:
    """Immutable polynomial: ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping | None = None, _trusted: bool = False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        clean = {}
        n = ring.nvars
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {n} variables")
            c = as_rat(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    # -- coercion -----------------------------------------------------------
    def _lift(self, other) -> "MPoly | None":
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        t = dict(self.terms)
        for e, c in o.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return MPoly(self.ring, t, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ring, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return MPoly(self.ring, {e: c * other for e, c in self.terms.items()}, _trusted=True)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if len(o.terms) > len(self.terms):
            a, b = o.terms, self.terms
        else:
            a, b = self.terms, o.terms
        t: dict = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    del t[e]
        return MPoly(self.ring, t, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a polynomial by zero")
            inv = 1 / Fraction(other)
            return self * inv
        if isinstance(other, MPoly) and other.is_constant():
            return self / other.constant_value()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {(0,) * self.ring.nvars: Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # -- inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def degree(self) -> int:
        """Weighted total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.wdeg(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({self.ring.wdeg(e) for e in self.terms}) <= 1

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            used.update(nm for nm, k in zip(self.ring.names, e) if k)
        return used

    def sorted_terms(self) -> list[tuple[Exp, Fraction]]:
        ring = self.ring
        return sorted(self.terms.items(), key=lambda t: (ring.wdeg(t[0]), t[0]), reverse=True)

    def homogeneous_part(self, d: int) -> "MPoly":
        return MPoly(self.ring, {e: c for e, c in self.terms.items() if self.ring.wdeg(e) == d}, _trusted=True)

    # -- transformations ----------------------------------------------------
    def embed(self, ring: PolyRing) -> "MPoly":
        """Re-express in ``ring``, matching variables by name."""
        if ring == self.ring:
            return self
        pos = []
        for i, nm in enumerate(self.ring.names):
            if nm in ring:
                pos.append(ring.index(nm))
            else:
                pos.append(None)
        n = ring.nvars
        t = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.ring.names[i]} missing from target ring")
                    new[pos[i]] = k
            t[tuple(new)] = c
        return MPoly(ring, t, _trusted=True)

    def subs(self, mapping: Mapping[str, object], ring: PolyRing | None = None) -> "MPoly":
        """Substitute polynomials or scalars for variables; result lives in ``ring``."""
        target = ring or self.ring
        images = []
        for nm in self.ring.names:
            if nm in mapping:
                v = mapping[nm]
                images.append(v.embed(target) if isinstance(v, MPoly) else target.const(v))
            else:
                images.append(target.gen(nm) if nm in target else None)
        result = target.zero()
        cache: dict = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    if images[i] is None:
                        raise ValueError(f"no image for variable {self.ring.names[i]}")
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    term = term * cache[key]
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at scalars of any ring type supporting + and * with Fractions."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for nm, k in zip(self.ring.names, e):
                if k:
                    v = v * values[nm] ** k
            total = total + v
        return total

    def diff(self, name: str) -> "MPoly":
        i = self.ring.index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return MPoly(self.ring, t, _trusted=True)

    def coefficients_in(self, name: str) -> dict[int, "MPoly"]:
        """View as a univariate polynomial in ``name``: power -> coefficient."""
        i = self.ring.index(name)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            out.setdefault(k, {})[tuple(ne)] = c
        return {k: MPoly(self.ring, t, _trusted=True) for k, t in sorted(out.items())}

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Quotient of an exact division; raises ValueError if a remainder is left."""
        o = self._lift(other)
        if not o.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        ring = self.ring

        def key(e):
            return (ring.wdeg(e), e)

        lead = max(o.terms, key=key)
        lc = o.terms[lead]
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            m = max(rem, key=key)
            if any(a < b for a, b in zip(m, lead)):
                raise ValueError("division is not exact")
            q = tuple(a - b for a, b in zip(m, lead))
            f = rem[m] / lc
            quot[q] = f
            for e, c in o.terms.items():
                ne = tuple(a + b for a, b in zip(e, q))
                v = rem.get(ne, 0) - f * c
                if v:
                    rem[ne] = v
                else:
                    rem.pop(ne, None)
        return MPoly(ring, quot, _trusted=True)

    # -- serialization ------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            mono = _exp_str(self.ring, e)
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            if idx == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"MPoly({self})"

    _TERM = re.compile(r"([+-]?)([^+-]+)")

    @classmethod
    def parse(cls, ring: PolyRing, text: str) -> "MPoly":
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        if s == "0":
            return ring.zero()
        pos = 0
        terms: dict = {}
        n = ring.nvars
        for m in cls._TERM.finditer(s):
            if m.start() != pos:
                raise ValueError(f"cannot parse polynomial {text!r}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            coeff = Fraction(sign)
            exp = [0] * n
            for factor in m.group(2).split("*"):
                if not factor:
                    raise ValueError(f"empty factor in {text!r}")
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    coeff *= Fraction(factor)
                    continue
                base, _, power = factor.partition("^")
                if base not in ring:
                    raise ValueError(f"unknown variable {base!r} in {text!r}")
                k = int(power) if power else 1
                exp[ring.index(base)] += k
            key = tuple(exp)
            terms[key] = terms.get(key, 0) + coeff
        if pos != len(s):
            raise ValueError(f"cannot parse polynomial {text!r}")
        return MPoly(ring, terms)


def poly_sum(ring: PolyRing, items: Iterable[MPoly]) -> MPoly:
    acc: dict = {}
    for p in items:
        for e, c in p.terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
    return MPoly(ring, acc, _trusted=True)
