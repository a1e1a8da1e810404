"""Acceptance gate: one test group per criterion, each with its time limit."""
import random
import time
from fractions import Fraction
from math import comb, factorial

import pytest
import sympy

from perisplit import detvar, jpw, splitrings
from perisplit.exactcore import DualRat, PolyRing
from perisplit.groebner import IdealPresentation, euler_check, groebner_basis, koszul_tor


class Timer:
    def __init__(self, limit: float):
        self.limit = limit

    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


# -- 1 ----------------------------------------------------------------------------

def _rank_table():
    cases = []
    for n in range(1, 5):
        cases.append(("B-signed", n, None, 2**n * factorial(n)))
        cases.append(("D", n, None, 2 ** (n - 1) * factorial(n)))
        for p in range(n + 1):
            cases.append(("B-fact", n, p, 2**p * comb(n, p)))
            cases.append(("D-fact", n, p, 2**p * comb(n, p) if p < n else 2 ** (n - 1)))
    return cases


@pytest.mark.criterion(1)
def test_rank_literals():
    # published values for n = 1..4
    signed = [splitrings.universal_ring("B-signed", n).fiber_dimension() for n in range(1, 5)]
    typed = [splitrings.universal_ring("D", n).fiber_dimension() for n in range(1, 5)]
    assert signed == [2, 8, 48, 384]
    assert typed == [1, 4, 24, 192]


@pytest.mark.criterion(1)
def test_all_universal_ranks_within_a_minute():
    with Timer(60):
        for kind, n, p, want in _rank_table():
            got = splitrings.universal_ring(kind, n, p).fiber_dimension()
            assert got == want, (kind, n, p)


# -- 2 ----------------------------------------------------------------------------

def _sympy_disc(f: splitrings.EvenMonicPoly) -> sympy.Expr:
    names = f.base.ring.names
    syms = sympy.symbols(names)
    loc = dict(zip(names, syms))
    v = sympy.Symbol("v")
    coeffs = [sympy.sympify(str(f.coefficient(k)).replace("^", "**"), locals=loc) for k in range(f.n + 1)]
    return sympy.expand(sympy.discriminant(sum(c * v ** (f.n - k) for k, c in enumerate(coeffs)), v)), loc


@pytest.mark.criterion(2)
def test_discriminant_identities():
    with Timer(30):
        for n in range(1, 4):
            f = splitrings.universal_poly(n, "B")
            D, Dt = splitrings.discriminant(f)
            assert D == Dt * f.coefficient(n) * 4**n
            # second route: sympy's resultant-based discriminant of f~
            ref, loc = _sympy_disc(f)
            assert sympy.expand(sympy.sympify(str(Dt).replace("^", "**"), locals=loc) - ref) == 0

            g = splitrings.universal_poly(n, "D")
            D, Dt = splitrings.discriminant(g)
            assert g.alpha * splitrings.reduced_discriminant(g) == D
            assert D == Dt * g.coefficient(n) * 4**n


@pytest.mark.criterion(2)
def test_quartic_family():
    ring = PolyRing(["b", "c"], [2, 4])
    b, c = ring.gens()
    f = splitrings.EvenMonicPoly(IdealPresentation(ring, []), [b, c])
    _, Dt = splitrings.discriminant(f)
    assert Dt == b * b - c * 4
    assert Dt * c == (b**2 - 4 * c) * c


# -- 3 ----------------------------------------------------------------------------

@pytest.mark.criterion(3)
@pytest.mark.parametrize("family", detvar.FAMILIES)
@pytest.mark.parametrize("lams", [(2, 3), (Fraction(1, 2), 5)])
def test_epsilon_probes(family, lams):
    with Timer(5):
        res = detvar.epsilon_probe(family, lams)
    assert res.discriminant.value == 0
    assert res.discriminant.slope != 0
    if family == "B-case-VA":
        assert res.quartic.value == 0
        assert res.quartic.slope == 16


@pytest.mark.criterion(3)
def test_quartic_factor_literal():
    # t^4 + (2 + 2e) t^2 + (1 - 2e): discriminant of v^2 + b v + c, times c
    b, c = DualRat(2, 2), DualRat(1, -2)
    tilde = splitrings.univariate_discriminant([DualRat(1), b, c])
    assert tilde == b * b - c * 4
    assert tilde * c == DualRat(0, 16)


# -- 4 ----------------------------------------------------------------------------

def _eigen(rng: random.Random, k: int) -> list[Fraction]:
    vals: list[Fraction] = []
    while len(vals) < k:
        x = Fraction(rng.randint(1, 9), rng.randint(1, 3))
        if x not in vals:
            vals.append(x)
    return vals


@pytest.mark.criterion(4)
def test_phi_chi_identity_on_samples():
    with Timer(120):
        for n, r in ((3, 1), (4, 1), (4, 2), (5, 2)):
            rng = random.Random(1000 * n + r)
            for seed in range(100):
                eig = _eigen(rng, detvar.eigen_length(n, r))
                pt = detvar.sample_Z_point(n, r, eig, seed=seed)
                assert detvar.on_Z(pt)
                ok, rep = detvar.verify_phi_chi(pt)
                assert ok, rep
                chi0 = detvar.chi_bar_coeffs(pt.f, pt.g, n, r)[0]
                want = 1
                for x in eig:
                    want *= -x * x
                assert chi0 == want


@pytest.mark.criterion(4)
def test_chi_bar_even_and_divisible():
    u = sympy.Symbol("u")
    with Timer(120):
        for n, r in ((3, 1), (4, 1), (4, 2), (5, 2), (3, 2), (4, 3), (5, 3)):
            rng = random.Random(7 * n + r)
            for seed in range(100):
                eig = _eigen(rng, detvar.eigen_length(n, r))
                pt = detvar.sample_Z_point(n, r, eig, seed=seed)
                # raises if an odd coefficient survives or the division is inexact
                coeffs = detvar.chi_bar_coeffs(pt.f, pt.g, n, r)
                want = sympy.Poly(sympy.prod([u**2 - x**2 for x in map(sympy.Rational, eig)]), u)
                got = sympy.Poly(sum(sympy.Rational(c) * u**k for k, c in enumerate(coeffs)), u)
                assert got == want


# -- 5, 6 ------------------------------------------------------------------------

BETTI_CASES = [
    ((4, 3), 2, 4),
    ((5, 4), 3, 6),
    ((3, 1), 2, 6),
    ((4, 1), 2, 6),
]


def _ideal(n, r):
    if 2 * r > n:
        return detvar.z_ideal(n, r, ambient="essential"), None
    z = detvar.z_prime_ideal(n, r)
    return z.ideal, [v for v in z.ideal.ring.names if v.startswith("g")]


_ORACLE = {}


def _oracle(n, r, mi, mj):
    key = (n, r, mi, mj)
    if key not in _ORACLE:
        I, kv = _ideal(n, r)
        gb = groebner_basis(I)
        _ORACLE[key] = (I, kv, gb, koszul_tor(I, mi, mj, koszul_vars=kv, gb=gb))
    return _ORACLE[key]


@pytest.mark.criterion(5)
def test_betti_oracle_agreement():
    with Timer(20 * 60):
        for (n, r), mi, mj in BETTI_CASES:
            *_, table = _oracle(n, r, mi, mj)
            closed = jpw.betti_table_jpw(n, r, mi, mj)
            assert closed.diff(table) == [], (n, r)


@pytest.mark.criterion(5)
def test_pfaffian_five_cells():
    *_, table = _oracle(5, 4, 3, 6)
    assert table.entries == {(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1}


@pytest.mark.criterion(5)
def test_principal_pfaffian_ideal_shape():
    I, _ = _ideal(4, 3)
    assert len(I.generators) == 1 and len(I.ring.names) == 6


@pytest.mark.criterion(6)
@pytest.mark.parametrize("case", BETTI_CASES, ids=lambda c: f"n{c[0][0]}r{c[0][1]}")
def test_euler_consistency(case):
    (n, r), mi, mj = case
    I, kv, gb, table = _oracle(n, r, mi, mj)
    bad, checked = euler_check(table, I, kv, gb=gb)
    assert checked
    assert bad == []
    closed = jpw.betti_table_jpw(n, r, mi, mj)
    bad, _ = euler_check(closed, I, kv, gb=gb)
    assert bad == []


# -- 7 ----------------------------------------------------------------------------

@pytest.mark.criterion(7)
def test_factorization_compatibility():
    with Timer(120):
        for kind in ("B", "D"):
            for n in range(1, 4):
                for p in range(n + 1):
                    assert splitrings.factorization_compatible(kind, n, p), (kind, n, p)


# -- 8 ----------------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_cohomology_specialization():
    t = sympy.Symbol("t")
    with Timer(60):
        for k in range(1, 5):
            got = splitrings.cohomology_specialize("B-fact", k, k, weights="algebraic").as_polynomial()
            want = sympy.Poly(sympy.prod([1 + t**i for i in range(1, k + 1)]), t).all_coeffs()[::-1]
            assert got == [int(x) for x in want]
            assert sum(got) == 2**k
            assert sum(splitrings.cohomology_specialize("B-signed", k).as_polynomial()) == 2**k * factorial(k)
            assert sum(splitrings.cohomology_specialize("D", k).as_polynomial()) == 2 ** (k - 1) * factorial(k)


@pytest.mark.criterion(8)
@pytest.mark.parametrize("n,r", [(3, 2), (4, 1), (5, 4), (4, 3), (3, 1), (5, 2)])
def test_poincare_totals_match_free_rank(n, r):
    total = sum(jpw.A_poincare(n, r))
    assert total == (2 ** (n - r) if 2 * r > n else 2 ** (r - 1))


# -- 9 ----------------------------------------------------------------------------

@pytest.mark.criterion(9)
@pytest.mark.parametrize("n,r", [(4, 3), (5, 4), (3, 1), (4, 1)])
def test_multiplicity_free(n, r):
    ok, violation = jpw.multiplicity_free_check(n, r, 6)
    assert ok, violation
    for k in range(7):
        assert all(s.rep.multiplicity == 1 for s in jpw.L_module(n, r, k))


# -- 10 ---------------------------------------------------------------------------

@pytest.mark.criterion(10)
@pytest.mark.parametrize("n", range(1, 6))
def test_boundary_cases(n):
    top = n * (n - 1) // 2
    assert jpw.boundary_dims(n, n, top + 2) == [comb(top, j) for j in range(top + 3)]
    top = n * (n + 1) // 2
    assert jpw.boundary_dims(n, 0, top + 2) == [comb(top, j) for j in range(top + 3)]
