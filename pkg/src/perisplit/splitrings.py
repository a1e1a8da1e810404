"""Splitting and factorization rings of even monic polynomials.

Every ring is a presentation: a weighted polynomial ring (base variables plus
the new roots/coefficients) and an ideal.  Conventions:

* f(u) = sum_i a_{2i} u^{2n-2i} with a_0 = 1, and f = prod (u^2 - eta_i^2),
  so a_{2i} = (-1)^i e_i(eta^2).
* With a chosen square root alpha = eta_1 ... eta_n we get
  a_{2n} = (-1)^n alpha^2.  For u^m-polynomials with alpha^p this reads
  a_{mn} = (-1)^n alpha^p.
* g is monic of degree p, so the factorization is f = (-1)^p g(u) g(-u) h(u).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from .errors import InvariantViolation, PerisplitError
from .exactcore.matrix import ExactMatrix, det, elementary_symmetric
from .exactcore.poly import MPoly, PolyRing
from .groebner import HilbertSeries, IdealPresentation, groebner_basis, hilbert_series, ideals_equal, quotient_dimension

RingPresentation = IdealPresentation

KINDS = ("A", "B-signed", "D", "B-fact", "D-fact", "generalized")


def base_field() -> IdealPresentation:
    """Q as a presentation: no variables, zero ideal."""
    return IdealPresentation(PolyRing([]), [])


class EvenMonicPoly:
    """f = u^{mn} + a_m u^{m(n-1)} + ... + a_{mn} over a base presentation (m = 2 by default)."""

    def __init__(self, base: IdealPresentation, coeffs: Sequence, alpha=None, m: int = 2, alpha_power: int = 2):
        ring = base.ring
        cs = []
        for c in coeffs:
            if isinstance(c, MPoly):
                if c.ring != ring:
                    if not c.variables() <= set(ring.names):
                        raise PerisplitError(f"coefficient {c} is not in the base ring")
                    c = c.embed(ring)
            else:
                c = ring.const(c)
            cs.append(c)
        if not cs:
            raise PerisplitError("a polynomial of degree 0 has nothing to split")
        self.base = base
        self.coeffs = tuple(cs)
        self.n = len(cs)
        self.m = m
        self.alpha_power = alpha_power
        if alpha is not None and not isinstance(alpha, MPoly):
            alpha = ring.const(alpha)
        if alpha is not None and alpha.ring != ring:
            alpha = alpha.embed(ring)
        self.alpha = alpha
        if alpha is not None:
            rel = alpha**alpha_power - cs[-1] * (-1) ** self.n
            if not rel.is_zero() and not groebner_basis(base).contains(rel):
                raise InvariantViolation(
                    "alpha does not square to the constant term", f"alpha^{alpha_power} = (-1)^n a_{{{m}n}}"
                )

    def coefficient(self, k: int) -> MPoly:
        """a_{mk}; a_0 = 1."""
        if k == 0:
            return self.base.ring.one()
        return self.coeffs[k - 1]

    def as_poly(self, var: str = "u") -> MPoly:
        ring = self.base.ring
        R = ring if var in ring else ring.extend([var], [1])
        u = R.gen(var)
        return sum((self.coefficient(k).embed(R) * u ** (self.m * (self.n - k)) for k in range(self.n + 1)), R.zero())

    def reduced_poly(self, var: str = "v") -> MPoly:
        """f~ with f~(u^m) = f(u)."""
        ring = self.base.ring
        R = ring if var in ring else ring.extend([var], [self.m])
        v = R.gen(var)
        return sum((self.coefficient(k).embed(R) * v ** (self.n - k) for k in range(self.n + 1)), R.zero())


def universal_poly(n: int, kind: str = "B", m: int = 2) -> EvenMonicPoly:
    """Universal f over Q[a_2..a_2n] (kind B) or Q[a_2..a_{2n-2}, alpha] (kind D)."""
    if kind == "B":
        names = [f"a{m * i}" for i in range(1, n + 1)]
        ring = PolyRing(names, [m * i for i in range(1, n + 1)])
        return EvenMonicPoly(IdealPresentation(ring, []), ring.gens(), m=m)
    if kind == "D":
        names = [f"a{m * i}" for i in range(1, n)] + ["alpha"]
        ring = PolyRing(names, [m * i for i in range(1, n)] + [n])
        alpha = ring.gen("alpha")
        coeffs = ring.gens()[:-1] + [alpha**2 * (-1) ** n]
        return EvenMonicPoly(IdealPresentation(ring, []), coeffs, alpha=alpha, m=m)
    raise ValueError(f"unknown universal kind {kind!r}")


def zero_poly(n: int, with_alpha: bool = False, m: int = 2, alpha_power: int = 2) -> EvenMonicPoly:
    """f = u^{mn} over Q, with alpha = 0 if requested."""
    base = base_field()
    return EvenMonicPoly(base, [0] * n, alpha=0 if with_alpha else None, m=m, alpha_power=alpha_power)


@dataclass
class SplitRing:
    kind: str
    n: int
    base: IdealPresentation
    ideal: IdealPresentation
    new_vars: tuple[str, ...]
    group: dict | None
    params: dict = field(default_factory=dict)

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def etas(self) -> list[str]:
        return [v for v in self.new_vars if v.startswith("eta")]

    def relations(self) -> list[MPoly]:
        """Generators beyond the base ideal."""
        return list(self.ideal.generators[len(self.base.generators):])

    def fiber(self) -> IdealPresentation:
        """Set every base variable to zero (the universal fiber over a = 0)."""
        zero = {v: 0 for v in self.base.ring.names}
        sub = self.ring.drop(self.base.ring.names)
        return IdealPresentation(sub, [g.subs(zero, sub) for g in self.ideal.generators])

    def fiber_dimension(self, budget: int | None = None):
        return quotient_dimension(self.fiber(), budget=budget)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "params": dict(self.params),
            "variables": [{"name": nm, "weight": w} for nm, w in zip(self.ring.names, self.ring.weights)],
            "base_generators": [str(g) for g in self.base.generators],
            "generators": [str(g) for g in self.relations()],
            "group": self.group,
        }


def _bind(A: IdealPresentation | None, f: EvenMonicPoly) -> EvenMonicPoly:
    """Rebuild f over the base A (which may add relations to f's own base)."""
    if A is None or A is f.base:
        return f
    if not set(f.base.ring.names) <= set(A.ring.names):
        raise PerisplitError("coefficient is not in the base ring")
    return EvenMonicPoly(A, f.coeffs, alpha=f.alpha, m=f.m, alpha_power=f.alpha_power)


def _extend(base: IdealPresentation, names: Sequence[str], weights: Sequence[int]) -> PolyRing:
    clash = [nm for nm in names if nm in base.ring]
    if clash:
        raise PerisplitError(f"variable names already used by the base ring: {clash}")
    return base.ring.extend(names, weights)


def _eta_names(n: int, prefix: str = "eta", start: int = 1) -> list[str]:
    return [f"{prefix}{i}" for i in range(start, start + n)]


def signed_split(A: IdealPresentation | None, f: EvenMonicPoly, names: Sequence[str] | None = None) -> SplitRing:
    """Adjoin eta_1..eta_n with f = prod (u^2 - eta_i^2)."""
    f = _bind(A, f)
    if f.m != 2:
        raise PerisplitError("signed splitting needs a polynomial in u^2")
    n = f.n
    names = list(names) if names is not None else _eta_names(n)
    ring = _extend(f.base, names, [1] * n)
    sq = [ring.gen(nm) ** 2 for nm in names]
    rel = [f.coefficient(i).embed(ring) - elementary_symmetric(i, sq) * (-1) ** i for i in range(1, n + 1)]
    ideal = IdealPresentation(ring, [g.embed(ring) for g in f.base.generators] + rel)
    return SplitRing("B-signed", n, f.base, ideal, tuple(names), {"type": "B", "n": n})


def typeD_split(A: IdealPresentation | None, f: EvenMonicPoly, names: Sequence[str] | None = None) -> SplitRing:
    """Signed splitting plus the choice eta_1 ... eta_n = alpha."""
    f = _bind(A, f)
    if f.alpha is None:
        raise PerisplitError("type D splitting needs alpha")
    if f.m != 2:
        raise PerisplitError("type D splitting needs a polynomial in u^2")
    n = f.n
    names = list(names) if names is not None else _eta_names(n)
    ring = _extend(f.base, names, [1] * n)
    etas = [ring.gen(nm) for nm in names]
    sq = [e**2 for e in etas]
    rel = [f.coefficient(i).embed(ring) - elementary_symmetric(i, sq) * (-1) ** i for i in range(1, n)]
    prod = ring.one()
    for e in etas:
        prod = prod * e
    rel.append(prod - f.alpha.embed(ring))
    ideal = IdealPresentation(ring, [g.embed(ring) for g in f.base.generators] + rel)
    return SplitRing("D", n, f.base, ideal, tuple(names), {"type": "D", "n": n})


def generalized_split(A: IdealPresentation | None, f: EvenMonicPoly, p: int, names: Sequence[str] | None = None) -> SplitRing:
    """Roots eta_i of f~ in u^m, with (eta_1...eta_n)^{m/p} = alpha and alpha^p = (-1)^n a_{mn}."""
    f = _bind(A, f)
    m = f.m
    if p <= 0 or m % p:
        raise PerisplitError(f"p={p} must divide m={m}")
    if f.alpha is None:
        if p != 1:
            raise PerisplitError("alpha is required when p > 1")
        alpha = f.coefficient(f.n) * (-1) ** f.n
    else:
        if f.alpha_power != p:
            raise PerisplitError("alpha was declared with a different power")
        alpha = f.alpha
    n = f.n
    names = list(names) if names is not None else _eta_names(n)
    ring = _extend(f.base, names, [1] * n)
    etas = [ring.gen(nm) for nm in names]
    pw = [e**m for e in etas]
    rel = [f.coefficient(i).embed(ring) - elementary_symmetric(i, pw) * (-1) ** i for i in range(1, n)]
    prod = ring.one()
    for e in etas:
        prod = prod * e
    rel.append(prod ** (m // p) - alpha.embed(ring))
    ideal = IdealPresentation(ring, [g.embed(ring) for g in f.base.generators] + rel)
    kind = "A" if (m, p) == (1, 1) else "generalized"
    return SplitRing(kind, n, f.base, ideal, tuple(names), {"type": "G", "m": m, "p": p, "n": n}, {"m": m, "p": p})


def type_a_split(base: IdealPresentation, coeffs: Sequence, names: Sequence[str] | None = None) -> SplitRing:
    """Roots of the monic u^n + c_1 u^{n-1} + ... + c_n."""
    f = EvenMonicPoly(base, coeffs, m=1, alpha_power=1)
    return generalized_split(None, f, 1, names)


def _coefficient_equations(f: EvenMonicPoly, ring: PolyRing, product: MPoly) -> list[MPoly]:
    """a_{2i} - [u^{2n-2i}] product for i = 1..n; product must be monic of degree 2n in u."""
    coeffs = product.coefficients_in("u")
    n = f.n
    out = []
    for d, c in coeffs.items():
        if d % 2 and not c.is_zero():
            raise InvariantViolation("factorization product has an odd coefficient", "g(u)g(-u)h(u) is even")
    if coeffs.get(2 * n) != 1 or max(coeffs) != 2 * n:
        raise InvariantViolation("factorization product is not monic", "(-1)^p g(u) g(-u) h(u) monic")
    for i in range(1, n + 1):
        c = coeffs.get(2 * n - 2 * i, None)
        cc = c.embed(ring) if c is not None else ring.zero()
        out.append(f.coefficient(i).embed(ring) - cc)
    return out


def _g_poly(R: PolyRing, p: int) -> MPoly:
    u = R.gen("u")
    return sum((R.gen(f"b{i}") * u ** (p - i) for i in range(1, p + 1)), u**p)


def signed_fact(A: IdealPresentation | None, f: EvenMonicPoly, p: int, q: int) -> SplitRing:
    """Adjoin b_1..b_p, c_2..c_2q with f = (-1)^p g(u) g(-u) h(u)."""
    f = _bind(A, f)
    if p < 0 or q < 0 or p + q != f.n:
        raise PerisplitError(f"p + q must equal n = {f.n}")
    bn = [f"b{i}" for i in range(1, p + 1)]
    cn = [f"c{2 * i}" for i in range(1, q + 1)]
    ring = _extend(f.base, bn + cn, list(range(1, p + 1)) + [2 * i for i in range(1, q + 1)])
    R = ring.extend(["u"], [1])
    u = R.gen("u")
    g = _g_poly(R, p)
    g_neg = g.subs({"u": -u})
    h = sum((R.gen(f"c{2 * i}") * u ** (2 * q - 2 * i) for i in range(1, q + 1)), u ** (2 * q))
    prod = g * g_neg * h * (-1) ** p
    rel = _coefficient_equations(f, ring, prod)
    ideal = IdealPresentation(ring, [g.embed(ring) for g in f.base.generators] + rel)
    return SplitRing("B-fact", f.n, f.base, ideal, tuple(bn + cn), None, {"p": p, "q": q})


def typeD_fact(A: IdealPresentation | None, f: EvenMonicPoly, p: int, q: int) -> SplitRing:
    """Adjoin b_1..b_p, c_2..c_{2q-2}, beta with h(0) = (-1)^q beta^2 and alpha = (-1)^p b_p beta.

    For q = 0 there is no beta; the relation is alpha = (-1)^n b_n.
    """
    f = _bind(A, f)
    if f.alpha is None:
        raise PerisplitError("type D factorization needs alpha")
    if p < 0 or q < 0 or p + q != f.n:
        raise PerisplitError(f"p + q must equal n = {f.n}")
    bn = [f"b{i}" for i in range(1, p + 1)]
    cn = [f"c{2 * i}" for i in range(1, q)]
    extra = ["beta"] if q >= 1 else []
    weights = list(range(1, p + 1)) + [2 * i for i in range(1, q)] + ([q] if q >= 1 else [])
    ring = _extend(f.base, bn + cn + extra, weights)
    R = ring.extend(["u"], [1])
    u = R.gen("u")
    g = _g_poly(R, p)
    g_neg = g.subs({"u": -u})
    if q >= 1:
        beta = R.gen("beta")
        h = sum((R.gen(f"c{2 * i}") * u ** (2 * q - 2 * i) for i in range(1, q)), u ** (2 * q))
        h = h + beta**2 * (-1) ** q
    else:
        h = R.one()
    prod = g * g_neg * h * (-1) ** p
    rel = _coefficient_equations(f, ring, prod)
    bp = ring.gen(f"b{p}") if p >= 1 else ring.one()
    bt = ring.gen("beta") if q >= 1 else ring.one()
    rel.append(f.alpha.embed(ring) - bp * bt * (-1) ** p)
    ideal = IdealPresentation(ring, [g.embed(ring) for g in f.base.generators] + rel)
    return SplitRing("D-fact", f.n, f.base, ideal, tuple(bn + cn + extra), None, {"p": p, "q": q})


# -- discriminants --------------------------------------------------------------

def sylvester(pc: Sequence, qc: Sequence) -> ExactMatrix:
    """Sylvester matrix of two polynomials given by descending coefficient lists."""
    m = len(pc) - 1
    k = len(qc) - 1
    size = m + k
    zero = pc[0] * 0
    rows = []
    for i in range(k):
        rows.append([zero] * i + list(pc) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(qc) + [zero] * (size - k - 1 - i))
    return ExactMatrix(rows)


def _reduced_discriminant_tilde(f: EvenMonicPoly) -> MPoly:
    ring = f.base.ring
    n = f.n
    if n == 1:
        return ring.one()
    pc = [f.coefficient(k) for k in range(n + 1)]
    dc = [pc[k] * (n - k) for k in range(n)]
    res = det(sylvester(pc, dc))
    return res * (-1) ** (n * (n - 1) // 2)


def discriminant(f: EvenMonicPoly) -> tuple[MPoly, MPoly]:
    """(Delta, Delta~) with Delta~ = disc(f~) and Delta = 4^n a_2n Delta~."""
    if f.m != 2:
        raise PerisplitError("discriminant is defined here for polynomials in u^2")
    dt = _reduced_discriminant_tilde(f)
    return dt * f.coefficient(f.n) * 4**f.n, dt


def reduced_discriminant(f: EvenMonicPoly) -> MPoly:
    """Delta-bar = (-4)^n alpha Delta~, so that alpha * Delta-bar = Delta."""
    if f.alpha is None:
        raise PerisplitError("reduced discriminant needs alpha")
    _, dt = discriminant(f)
    return dt * f.alpha * (-4) ** f.n


def univariate_discriminant(coeffs: Sequence) -> object:
    """disc of a monic univariate polynomial with descending coefficients (any exact ring)."""
    n = len(coeffs) - 1
    if n <= 1:
        return coeffs[0] * 0 + 1
    dc = [coeffs[k] * (n - k) for k in range(n)]
    return det(sylvester(list(coeffs), dc)) * (-1) ** (n * (n - 1) // 2)


def is_squarefree(p: MPoly) -> bool:
    """Squarefree as a polynomial over Q: every irreducible factor has multiplicity one."""
    import sympy

    if p.is_zero():
        return False
    if p.is_constant():
        return True
    syms = sympy.symbols(list(p.ring.names))
    expr = sympy.sympify(str(p).replace("^", "**"), locals=dict(zip(p.ring.names, syms)))
    _, factors = sympy.factor_list(expr, *syms)
    return all(k == 1 for _, k in factors)


# -- Weyl group actions ---------------------------------------------------------

def group_contains(group: dict, perm: Sequence[int], signs: Sequence[int]) -> bool:
    n = group["n"]
    if sorted(perm) != list(range(n)) or len(signs) != n or any(s not in (1, -1) for s in signs):
        return False
    neg = sum(1 for s in signs if s == -1)
    t = group["type"]
    if t == "S":
        return neg == 0
    if t == "B":
        return True
    if t == "D":
        return neg % 2 == 0
    if t == "G":
        m, p = group["m"], group["p"]
        if neg and m % 2:
            return False  # -1 is not an m-th root of unity
        return (m // p) % 2 == 0 or neg % 2 == 0
    return False


def weyl_action(R: SplitRing, perm: Sequence[int], signs: Sequence[int] | None = None) -> dict[str, MPoly]:
    """Substitution eta_i -> signs[i] * eta_{perm[i]} (base variables fixed)."""
    if R.group is None:
        raise PerisplitError(f"no Weyl group acts on a {R.kind} ring by permuting roots")
    etas = list(R.new_vars)
    n = len(etas)
    signs = list(signs) if signs is not None else [1] * n
    if not group_contains(R.group, perm, signs):
        raise PerisplitError(f"element ({list(perm)}, {signs}) is not in the group {R.group}")
    ring = R.ring
    return {etas[i]: ring.gen(etas[perm[i]]) * signs[i] for i in range(n)}


def verify_weyl(R: SplitRing, perm: Sequence[int], signs: Sequence[int] | None = None, gb=None) -> bool:
    """The substitution maps every ideal generator into the ideal."""
    sub = weyl_action(R, perm, signs)
    gb = gb or groebner_basis(R.ideal)
    return all(gb.contains(g.subs(sub)) for g in R.ideal.generators)


def group_generators(group: dict) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    n = group["n"]
    ident = tuple(range(n))
    out = []
    for i in range(n - 1):
        perm = list(ident)
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        out.append((tuple(perm), (1,) * n))
    flip1 = tuple(-1 if k == 0 else 1 for k in range(n))
    flip2 = tuple(-1 if k < 2 else 1 for k in range(n))
    if group["type"] == "B":
        out.append((ident, flip1))
    elif group["type"] == "D" and n >= 2:
        out.append((ident, flip2))
    elif group["type"] == "G":
        if group_contains(group, ident, flip1):
            out.append((ident, flip1))
        elif n >= 2 and group_contains(group, ident, flip2):
            out.append((ident, flip2))
    return out


def group_elements(group: dict) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All rational elements (signed permutations) of a small group."""
    n = group["n"]
    out = []
    for perm in permutations(range(n)):
        for mask in range(2**n):
            signs = tuple(-1 if mask >> k & 1 else 1 for k in range(n))
            if group_contains(group, perm, signs):
                out.append((perm, signs))
    return out


# -- cohomology specializations -------------------------------------------------

def specialized_ring(kind: str, n: int, p: int | None = None) -> SplitRing:
    """The ring over Q with f = u^{2n} (and alpha = 0) for a given kind."""
    if n < 1:
        raise PerisplitError("n must be positive")
    if kind == "B-signed":
        return signed_split(None, zero_poly(n))
    if kind == "D":
        return typeD_split(None, zero_poly(n, with_alpha=True))
    if kind == "A":
        return type_a_split(base_field(), [0] * n)
    if kind in ("B-fact", "D-fact"):
        if p is None or not 0 <= p <= n:
            raise PerisplitError(f"{kind} needs 0 <= p <= n")
        if kind == "B-fact":
            return signed_fact(None, zero_poly(n), p, n - p)
        return typeD_fact(None, zero_poly(n, with_alpha=True), p, n - p)
    raise PerisplitError(f"unknown kind {kind!r}; expected one of A, B-signed, D, B-fact, D-fact")


def cohomology_specialize(kind: str, n: int, p: int | None = None, weights: str = "cohomological") -> HilbertSeries:
    """Hilbert series of the f = u^{2n} specialization.

    ``weights="cohomological"`` doubles every weight (roots in degree 2), so
    the result is the Poincare polynomial of the matching isotropic flag
    variety or Grassmannian; ``"algebraic"`` keeps roots in degree 1.
    """
    if weights not in ("cohomological", "algebraic"):
        raise PerisplitError("weights must be 'cohomological' or 'algebraic'")
    R = specialized_ring(kind, n, p)
    ideal = R.ideal
    if weights == "cohomological":
        ring2 = ideal.ring.reweighted([2 * w for w in ideal.ring.weights])
        ideal = IdealPresentation(ring2, [MPoly(ring2, g.terms) for g in ideal.generators])
    hs = hilbert_series(ideal)
    if hs.dimension() is None:
        raise InvariantViolation("specialized ring is not finite-dimensional", "rank of the universal fiber")
    return hs


def expected_rank(kind: str, n: int, p: int | None = None) -> int:
    """Closed-form ranks of the universal fibers."""
    from math import comb, factorial

    if kind == "A":
        return factorial(n)
    if kind == "B-signed":
        return 2**n * factorial(n)
    if kind == "D":
        return 2 ** (n - 1) * factorial(n)
    if kind == "B-fact":
        return 2**p * comb(n, p)
    if kind == "D-fact":
        return 2 ** (n - 1) if p == n else 2**p * comb(n, p)
    raise PerisplitError(f"unknown kind {kind!r}")


def universal_ring(kind: str, n: int, p: int | None = None) -> SplitRing:
    if kind == "B-signed":
        return signed_split(None, universal_poly(n, "B"))
    if kind == "D":
        return typeD_split(None, universal_poly(n, "D"))
    if kind == "B-fact":
        return signed_fact(None, universal_poly(n, "B"), p, n - p)
    if kind == "D-fact":
        return typeD_fact(None, universal_poly(n, "D"), p, n - p)
    if kind == "A":
        names = [f"a{i}" for i in range(1, n + 1)]
        ring = PolyRing(names, list(range(1, n + 1)))
        return type_a_split(IdealPresentation(ring, []), ring.gens())
    raise PerisplitError(f"unknown kind {kind!r}")


# -- factorization compatibility ------------------------------------------------

def _fact_pair(kind: str, n: int, p: int):
    """Direct and iterated presentations in the common ring A[b, c, (beta), eta]."""
    q = n - p
    if kind == "B":
        f = universal_poly(n, "B")
        C = signed_fact(None, f, p, q)
    else:
        f = universal_poly(n, "D")
        C = typeD_fact(None, f, p, q)
    etas = _eta_names(n)
    ring = C.ring.extend(etas, [1] * n)
    eta = [ring.gen(e) for e in etas]
    low = eta[:p]
    high_sq = [e**2 for e in eta[p:]]
    # splitting relations of g and h inside the common ring
    g_rel = [ring.gen(f"b{i}") - elementary_symmetric(i, low) * (-1) ** i for i in range(1, p + 1)]
    if kind == "B":
        h_rel = [ring.gen(f"c{2 * i}") - elementary_symmetric(i, high_sq) * (-1) ** i for i in range(1, q + 1)]
    else:
        h_rel = [ring.gen(f"c{2 * i}") - elementary_symmetric(i, high_sq) * (-1) ** i for i in range(1, q)]
        if q >= 1:
            prod = ring.one()
            for e in eta[p:]:
                prod = prod * e
            h_rel.append(prod - ring.gen("beta"))
    direct = (signed_split(None, f) if kind == "B" else typeD_split(None, f)).ideal
    direct_ideal = IdealPresentation(ring, [g.embed(ring) for g in direct.generators] + g_rel + h_rel)
    # iterated: split g over C (type A), then split h over that (signed or type D)
    g_ring = type_a_split(C.ideal, [C.ring.gen(f"b{i}") for i in range(1, p + 1)], etas[:p]) if p else None
    stage = g_ring.ideal if g_ring is not None else C.ideal
    if q:
        if kind == "B":
            hpoly = EvenMonicPoly(stage, [stage.ring.gen(f"c{2 * i}") for i in range(1, q + 1)])
            last = signed_split(None, hpoly, etas[p:])
        else:
            cs = [stage.ring.gen(f"c{2 * i}") for i in range(1, q)]
            beta = stage.ring.gen("beta")
            hpoly = EvenMonicPoly(stage, cs + [beta**2 * (-1) ** q], alpha=beta)
            last = typeD_split(None, hpoly, etas[p:])
        stage = last.ideal
    iterated_ideal = IdealPresentation(ring, [g.embed(ring) for g in stage.generators])
    return direct_ideal, iterated_ideal


def factorization_compatible(kind: str, n: int, p: int, budget: int | None = None) -> bool:
    """Direct splitting equals splitting g then h over the factorization ring."""
    if kind not in ("B", "D"):
        raise PerisplitError("kind must be 'B' or 'D'")
    if not 0 <= p <= n:
        raise PerisplitError("need 0 <= p <= n")
    direct, iterated = _fact_pair(kind, n, p)
    return ideals_equal(direct, iterated, budget)


def base_change_equal(f: EvenMonicPoly, extra: Iterable[MPoly], kind: str = "B-signed") -> bool:
    """Building over A/J equals building over A and adding J."""
    extra = [e.embed(f.base.ring) for e in extra]
    quotient = IdealPresentation(f.base.ring, list(f.base.generators) + extra)
    f_q = EvenMonicPoly(quotient, f.coeffs, alpha=f.alpha, m=f.m, alpha_power=f.alpha_power)
    build = {"B-signed": signed_split, "D": typeD_split}[kind]
    over_quotient = build(None, f_q).ideal
    plain = build(None, f).ideal
    added = plain.with_generators([e.embed(plain.ring) for e in extra])
    return ideals_equal(over_quotient, added)
