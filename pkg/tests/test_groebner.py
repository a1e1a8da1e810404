import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from perisplit import BudgetExceeded
from perisplit.exactcore import MPoly, PolyRing
from perisplit.groebner import (
    INFINITE, BettiTable, IdealPresentation, TorReport, eliminate, euler_check, groebner_basis,
    hilbert_series, ideal_contains, ideals_equal, koszul_tor, quotient_dimension,
)

R = PolyRing(["x", "y", "z"])
x, y, z = R.gens()


def monic_sympy(polys, gens, order):
    G = sympy.groebner([sympy.sympify(str(p).replace("^", "**")) for p in polys], *gens, order=order, domain="QQ")
    out = set()
    for g in G.exprs:
        P = sympy.Poly(g, *gens)
        out.add(sympy.expand(g / P.LC(order=order)))
    return out


small_polys = st.lists(
    st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3).filter(bool)),
    min_size=1, max_size=3,
).map(lambda ts: MPoly(R, dict(ts)))


@settings(max_examples=40)
@given(st.lists(small_polys.filter(bool), min_size=1, max_size=3), st.sampled_from(["lex", "grlex", "grevlex"]))
def test_reduced_basis_matches_sympy(gens, order):
    I = IdealPresentation(R, gens, graded=False)
    ours = {sympy.expand(sympy.sympify(str(p).replace("^", "**"))) for p in groebner_basis(I, order)}
    assert ours == monic_sympy(gens, sympy.symbols("x y z"), order)


@settings(max_examples=25)
@given(st.lists(small_polys.filter(bool), min_size=1, max_size=3))
def test_basis_is_deterministic(gens):
    I = IdealPresentation(R, gens, graded=False)
    assert groebner_basis(I).serialize() == groebner_basis(I).serialize()


def test_examples():
    X = PolyRing(["x", "y"])
    a, b = X.gens()
    assert groebner_basis(IdealPresentation(X, [a]), "lex").serialize() == ["x"]
    assert quotient_dimension(IdealPresentation(X, [a * a - b, b * b - a], graded=False)) == 4
    E = PolyRing(["e1", "e2"])
    e1, e2 = E.gens()
    assert quotient_dimension(IdealPresentation(E, [e1**2 + e2**2, e1**2 * e2**2])) == 8
    assert quotient_dimension(IdealPresentation(X, [a * a, b * b])) == 4
    assert quotient_dimension(IdealPresentation(X, [a])) == INFINITE


def test_elimination():
    X = PolyRing(["x", "y"])
    a, b = X.gens()
    assert len(eliminate(IdealPresentation(X, [b - a * a], graded=False), ["x"])) == 0
    T = PolyRing(["t", "x", "y"])
    t, u, v = T.gens()
    E = eliminate(IdealPresentation(T, [u - t**2, v - t**3], graded=False), ["t"])
    assert ideals_equal(E, IdealPresentation(E.ring, [v**2 - u**3]))


def test_hilbert_series_examples():
    X = PolyRing(["x"])
    hs = hilbert_series(IdealPresentation(X, []))
    assert hs.expand(5) == [1] * 6
    # e1, e2 of the squares in two variables: (1 - t^2)(1 - t^4)/(1 - t)^2
    P = PolyRing(["h1", "h2"])
    h1, h2 = P.gens()
    hs = hilbert_series(IdealPresentation(P, [h1**2 + h2**2, h1**2 * h2**2]))
    assert hs.as_polynomial() == [1, 2, 2, 2, 1]
    W = PolyRing(["a2", "a4"], [2, 4])
    assert hilbert_series(IdealPresentation(W, [])).expand(8) == [1, 0, 1, 0, 2, 0, 2, 0, 3]


@settings(max_examples=30)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=3), st.integers(0, 10**6))
def test_complete_intersection_series(degrees, seed):
    # generic forms of the given degrees in as many variables form a regular sequence
    rng = random.Random(seed)
    k = len(degrees)
    ring = PolyRing([f"v{i}" for i in range(k)])
    gens = [ring.gen(f"v{i}") ** d for i, d in enumerate(degrees)]
    gens = [g + sum((rng.randint(-2, 2) * ring.gen(f"v{j}") ** d for j in range(k) if j != i), ring.zero())
            for i, (g, d) in enumerate(zip(gens, degrees))]
    I = IdealPresentation(ring, gens)
    gb = groebner_basis(I)
    dim = quotient_dimension(gb)
    want = 1
    for d in degrees:
        want *= d
    if dim != INFINITE:
        # finite quotient means a regular sequence; Bezout count is then forced
        assert dim == want
        hs = gb.hilbert_series()
        assert sum(hs.as_polynomial()) == dim
        t = sympy.Symbol("t")
        expected = sympy.Poly(sympy.prod([sum(t**e for e in range(d)) for d in degrees]), t)
        assert hs.as_polynomial() == [int(c) for c in expected.all_coeffs()[::-1]]


def test_membership_and_equality():
    I = IdealPresentation(R, [x * y, y * z])
    assert ideal_contains(I, [x * y * z, x * y + y * z])
    assert not ideal_contains(I, [x])
    assert ideals_equal(I, IdealPresentation(R, [y * z + x * y, x * y]))


def test_budget_exhaustion():
    I = IdealPresentation(R, [x * y - z**2, x * z - y**2, y * z - x**2 + x], graded=False)
    with pytest.raises(BudgetExceeded):
        groebner_basis(I, budget=2)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("PERISPLIT_BUDGET", "1")
    I = IdealPresentation(R, [x * y - z**2, x * z - y**2, y * z - x**2 + x], graded=False)
    with pytest.raises(BudgetExceeded):
        groebner_basis(I)


def test_graded_flag_validation():
    with pytest.raises(ValueError):
        IdealPresentation(R, [x - y * y], graded=True)


# -- Koszul homology --------------------------------------------------------------

def test_hypersurface():
    X = PolyRing(["x"])
    t = koszul_tor(IdealPresentation(X, [X.gen("x")]), 2, 3)
    assert t.entries == {(0, 0): 1, (1, 1): 1}


@pytest.mark.parametrize("method", ["direct", "auto"])
def test_twisted_cubic(method):
    # 2x2 minors of [[a,b,c],[b,c,d]]: Eagon-Northcott shape 1, 3 in degree 2, 2 in degree 3
    S = PolyRing(["a", "b", "c", "d"])
    a, b, c, d = S.gens()
    I = IdealPresentation(S, [a * c - b * b, a * d - b * c, b * d - c * c])
    t = koszul_tor(I, 3, 5, method=method)
    assert t.entries == {(0, 0): 1, (1, 2): 3, (2, 3): 2}
    bad, _ = euler_check(t, I)
    assert bad == []


def test_reduced_and_direct_routes_agree():
    S = PolyRing(["a", "b", "c", "d", "e"])
    a, b, c, d, e = S.gens()
    I = IdealPresentation(S, [a * b - c * d, b * e - a * a, c * e])
    rep = TorReport()
    fast = koszul_tor(I, 3, 6, report=rep)
    slow = koszul_tor(I, 3, 6, method="direct")
    assert fast.diff(slow) == []
    assert rep.method in ("reduced", "direct")


@settings(max_examples=15)
@given(st.permutations(range(4)))
def test_tor_invariant_under_variable_permutation(perm):
    names = ["a", "b", "c", "d"]
    S = PolyRing(names)
    a, b, c, d = S.gens()
    gens = [a * b, b * c - d * d, a * c * d]
    base = koszul_tor(IdealPresentation(S, gens), 3, 6, method="direct")
    T = PolyRing([names[i] for i in perm])
    moved = koszul_tor(IdealPresentation(T, [g.embed(T) for g in gens]), 3, 6, method="direct")
    assert base.diff(moved) == []


def test_koszul_subset_of_variables():
    # T = Q[a, b, y]/(y^2 - ab) is free of rank 2 over S = Q[a, b]
    T = PolyRing(["a", "b", "y"])
    a, b, yy = T.gens()
    I = IdealPresentation(T, [yy * yy - a * b])
    t = koszul_tor(I, 2, 4, koszul_vars=["a", "b"])
    assert t.entries == {(0, 0): 1, (0, 1): 1}
    assert euler_check(t, I, ["a", "b"])[0] == []


def test_betti_table_serialization():
    t = BettiTable({(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1}, 3, 6)
    assert BettiTable.from_json(t.to_json()) == t
    assert t.to_csv().splitlines()[0] == "i,j,dim,labels"
    other = BettiTable({(0, 0): 1, (1, 2): 4, (2, 3): 5, (3, 5): 1}, 3, 6)
    assert t.diff(other) == [{"i": 1, "j": 2, "left": 5, "right": 4}]
