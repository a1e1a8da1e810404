from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from perisplit import kernels
from perisplit.exactcore import (
    DualRat, ExactMatrix, MPoly, PolyRing, charpoly, charpoly_coeffs, det, elementary_symmetric,
    inverse, nullspace, pfaffian, rank, rank_fraction,
)

R3 = PolyRing(["x", "y", "z"])
rats = st.fractions(min_value=-20, max_value=20, max_denominator=6)
small_ints = st.integers(-4, 4)


def polys(ring=R3, max_terms=5, max_exp=3):
    exps = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    return st.dictionaries(exps, rats.filter(bool), max_size=max_terms).map(lambda d: MPoly(ring, d))


def to_sympy(p: MPoly):
    syms = sympy.symbols(p.ring.names)
    return sympy.expand(sympy.sympify(str(p).replace("^", "**"), locals=dict(zip(p.ring.names, syms))))


# -- polynomials ------------------------------------------------------------------

@given(polys(), polys())
def test_product_matches_sympy(p, q):
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, s):
    assert (p + q) * s == p * s + q * s
    assert p * q == q * p
    assert (p - p).is_zero()


@given(polys())
def test_serialization_round_trip(p):
    assert R3.parse(str(p)) == p
    assert MPoly.parse(R3, str(p)) == p


def test_serialization_format():
    x, y, z = R3.gens()
    assert str(x**2 * y - Fraction(1, 2) * z + 3) == "x^2*y - 1/2*z + 3"


@given(polys(), polys().filter(bool))
def test_exact_division(p, q):
    assert (p * q).exact_div(q) == p


def test_weighted_degrees():
    R = PolyRing(["a", "b"], [2, 4])
    a, b = R.gens()
    assert (a * a - b).is_homogeneous()
    assert (a - b).degree() == 4 and not (a - b).is_homogeneous()


def test_invalid_rings():
    with pytest.raises(ValueError):
        PolyRing(["x", "x"])
    with pytest.raises(ValueError):
        PolyRing(["eps"])


# -- dual numbers -----------------------------------------------------------------

@given(rats, rats, rats, rats)
def test_dual_product(a, b, c, d):
    assert DualRat(a, b) * DualRat(c, d) == DualRat(a * c, a * d + b * c)


@given(rats.filter(bool), rats)
def test_dual_inverse(a, b):
    x = DualRat(a, b)
    assert x * x.inverse() == DualRat(1)


@given(rats)
def test_dual_no_inverse_at_zero(b):
    with pytest.raises(ZeroDivisionError):
        DualRat(0, b).inverse()


@given(rats, rats)
def test_dual_round_trip(a, b):
    x = DualRat(a, b)
    assert DualRat.parse(str(x)) == x


# -- matrices ---------------------------------------------------------------------

def generic_skew(n):
    names = [f"m{i}_{j}" for i in range(n) for j in range(i + 1, n)]
    ring = PolyRing(names)

    def entry(i, j):
        if i == j:
            return ring.zero()
        return ring.gen(f"m{i}_{j}") if i < j else -ring.gen(f"m{j}_{i}")

    return ring, ExactMatrix.from_function(n, n, entry)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_pfaffian_squared_is_det_symbolic(n):
    _, M = generic_skew(n)
    assert pfaffian(M) ** 2 == det(M)


def test_pfaffian_examples():
    ring, M = generic_skew(4)
    g = ring.gen
    assert pfaffian(M) == g("m0_1") * g("m2_3") - g("m0_2") * g("m1_3") + g("m0_3") * g("m1_2")
    J = ExactMatrix([[0, 1], [-1, 0]])
    assert pfaffian(J) == 1
    assert pfaffian(ExactMatrix.block_diag(J, J)) == 1


def test_pfaffian_rejects_non_skew():
    with pytest.raises(Exception):
        pfaffian(ExactMatrix([[0, 1], [1, 0]]))


@st.composite
def int_matrices(draw, n=None, lo=-5, hi=5):
    n = n if n is not None else draw(st.integers(1, 5))
    return [[draw(st.integers(lo, hi)) for _ in range(n)] for _ in range(n)]


@given(int_matrices())
def test_det_matches_sympy(rows):
    assert det(ExactMatrix(rows)) == sympy.Matrix(rows).det()


@given(int_matrices())
def test_charpoly_matches_sympy(rows):
    ours = [sympy.Rational(c) for c in charpoly_coeffs(ExactMatrix(rows))]
    theirs = sympy.Matrix(rows).charpoly().all_coeffs()
    assert ours == list(theirs)[::-1]  # ours ascends in u


@given(int_matrices(n=2), int_matrices(n=3))
def test_charpoly_multiplicative_on_blocks(a, b):
    A, B = ExactMatrix(a), ExactMatrix(b)
    assert charpoly(ExactMatrix.block_diag(A, B)) == charpoly(A) * charpoly(B)


def test_charpoly_examples():
    u = PolyRing(["u"]).gen("u")
    assert charpoly(ExactMatrix.identity(3)) == (u - 1) ** 3
    assert charpoly(ExactMatrix([[2, 0, 0], [0, 3, 0], [0, 0, -1]])) == (u - 2) * (u - 3) * (u + 1)
    c = Fraction(7, 3)
    assert charpoly(ExactMatrix([[0, 1], [-c, 0]])) == u**2 + c


def test_elementary_symmetric():
    x, y, z = R3.gens()
    assert elementary_symmetric(1, [x, y, z]) == x + y + z
    assert elementary_symmetric(3, [x, y, z]) == x * y * z
    assert elementary_symmetric(2, [1, 2, 3]) == 11


@st.composite
def rect_matrices(draw):
    m, n, k = draw(st.integers(1, 6)), draw(st.integers(1, 6)), draw(st.integers(0, 4))
    left = [[draw(small_ints) for _ in range(k)] for _ in range(m)]
    right = [[draw(small_ints) for _ in range(n)] for _ in range(k)]
    return [[sum(left[i][t] * right[t][j] for t in range(k)) for j in range(n)] for i in range(m)]


@given(rect_matrices())
def test_rank_routes_agree(rows):
    want = sympy.Matrix(rows).rank()
    assert rank_fraction(rows) == want
    assert rank(rows, "numpy") == want
    assert rank(rows, "numba") == want


def test_rank_with_huge_entries():
    big = 10**40
    rows = [[big, 1, 0], [2 * big, 2, 0], [1, 1, big + 1]]
    assert rank(rows) == rank_fraction(rows) == 2


@given(int_matrices(n=3))
def test_nullspace_and_inverse(rows):
    for v in nullspace(rows):
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)
    if sympy.Matrix(rows).det() != 0:
        inv = inverse(rows)
        prod = ExactMatrix(rows) @ ExactMatrix(inv)
        assert prod == ExactMatrix.identity(3)


# -- kernels ----------------------------------------------------------------------

@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**16))
def test_kernel_backends_agree(m, n, seed):
    p = kernels.PRIMES[3]
    a = np.random.default_rng(seed).integers(0, 5, size=(m, n)).astype(np.int64)
    assert kernels.rank_mod_p(a, p, "numba") == kernels.rank_mod_p(a, p, "numpy")


def test_backend_env(monkeypatch):
    monkeypatch.setenv("PERISPLIT_KERNEL", "numpy")
    assert kernels.backend() == "numpy"
    monkeypatch.setenv("PERISPLIT_KERNEL", "numba")
    assert kernels.backend() == ("numba" if kernels.HAVE_NUMBA else "numpy")
