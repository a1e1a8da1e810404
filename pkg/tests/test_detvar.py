import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perisplit import InvariantViolation, PerisplitError
from perisplit import detvar as dv
from perisplit.exactcore import DualRat, ExactMatrix, PolyRing, det, inverse, rank
from perisplit.groebner import groebner_basis, quotient_dimension

PAIRS = [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 2), (5, 3)]
nonzero = st.fractions(min_value=Fraction(1, 3), max_value=9, max_denominator=3)


def eigen_for(n, r, draw_list):
    return draw_list[: dv.eigen_length(n, r)]


# -- chi-bar ----------------------------------------------------------------------

def test_chi_bar_two_by_two():
    f = ExactMatrix([[0, 1], [-1, 0]])
    g = ExactMatrix([[1, 0], [0, 0]])
    assert dv.chi_bar_coeffs(f, g, 2, 1) == [0, 0, 1]


@pytest.mark.parametrize("n,r", PAIRS)
def test_chi_bar_of_nilpotent_pair(n, r):
    f = ExactMatrix([[Fraction(i - j) for j in range(n)] for i in range(n)])
    g = ExactMatrix.zeros(n, n)
    coeffs = dv.chi_bar_coeffs(f, g, n, r)
    assert coeffs == [0] * (len(coeffs) - 1) + [1]
    assert len(coeffs) - 1 == 2 * dv.eigen_length(n, r)


def test_chi_bar_rejects_off_locus_pairs():
    # f of full rank 4 is not on Z for (n, r) = (4, 3), so u^2 cannot divide
    f = ExactMatrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    g = ExactMatrix.identity(4)
    with pytest.raises(InvariantViolation):
        dv.chi_bar_coeffs(f, g, 4, 3)


@settings(max_examples=40)
@given(st.sampled_from(PAIRS), st.lists(nonzero, min_size=2, max_size=2, unique=True), st.integers(0, 10**6))
def test_sampled_points_lie_on_z_with_prescribed_roots(nr, eig, seed):
    n, r = nr
    eig = eigen_for(n, r, eig)
    pt = dv.sample_Z_point(n, r, eig, seed=seed)
    assert dv.on_Z(pt)
    # second route: exact ranks
    assert rank(pt.f.rows) <= 2 * (n - r)
    assert rank(pt.g.rows) <= 2 * r
    want = [Fraction(1)]
    for lam in eig:  # multiply by u^2 - lam^2
        want = [(-lam * lam) * want[0]] + [
            (want[k - 2] if k >= 2 else 0) + (-lam * lam) * (want[k] if k < len(want) else 0)
            for k in range(1, len(want) + 2)
        ]
    assert dv.chi_bar_coeffs(pt.f, pt.g, n, r) == want


def test_sample_examples():
    pt = dv.sample_Z_point(3, 1, [5], seed=0)
    assert dv.chi_bar_coeffs(pt.f, pt.g, 3, 1) == [-25, 0, 1]
    ok, rep = dv.verify_phi_chi(pt)
    assert ok and rep["sign"] in (1, -1)
    pt = dv.sample_Z_point(5, 3, [2, 3], seed=4)
    coeffs = dv.chi_bar_coeffs(pt.f, pt.g, 5, 3)
    assert coeffs == [36, 0, -13, 0, 1]  # (u^2 - 4)(u^2 - 9)


def test_sample_rejects_wrong_eigen_count():
    with pytest.raises(PerisplitError):
        dv.sample_Z_point(4, 3, [2, 3])


def test_zero_eigen_gives_nilpotent_product():
    pt = dv.sample_Z_point(4, 2, [0, 0], seed=1)
    assert dv.chi_bar_coeffs(pt.f, pt.g, 4, 2) == [0, 0, 0, 0, 1]


def test_sampling_is_deterministic():
    a = dv.sample_Z_point(5, 2, [1, 3], seed=9).to_json()
    b = dv.sample_Z_point(5, 2, [1, 3], seed=9).to_json()
    assert a == b


# -- rank conditions on and off the locus -------------------------------------------

@settings(max_examples=30)
@given(st.sampled_from(PAIRS), st.integers(0, 10**6))
def test_pfaffian_rank_duality(nr, seed):
    n, r = nr
    rng = random.Random(seed)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(rng.randint(-3, 3))
            rows[i][j], rows[j][i] = v, -v
    sym = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            sym[i][j] = sym[j][i] = Fraction(rng.randint(-3, 3))
    pt = dv.ZPoint(n, r, ExactMatrix(rows), ExactMatrix(sym), ())
    by_rank = rank(rows) <= 2 * (n - r) and rank(sym) <= 2 * r
    assert dv.on_Z(pt) == by_rank


# -- Phi ----------------------------------------------------------------------------

def test_phi_of_zero_form():
    phi = ExactMatrix([[1, 0], [0, 1], [2, 3]])
    assert dv.phi_invariant(phi, ExactMatrix.zeros(3, 3)) == 0


def test_phi_square_block_witness():
    # n = 2r: Phi = Pf(f) det(phi)
    f = ExactMatrix([[0, 2, 1, 0], [-2, 0, 3, 1], [-1, -3, 0, 5], [0, -1, -5, 0]])
    phi = ExactMatrix([[1, 2, 0, 1], [0, 1, 1, 0], [3, 0, 1, 1], [0, 0, 2, 1]])
    from perisplit.exactcore import pfaffian

    assert dv.phi_invariant(phi, f) == pfaffian(f) * det(phi)


@settings(max_examples=25)
@given(st.sampled_from([(3, 1), (4, 1), (4, 2), (5, 2)]), st.integers(0, 10**6))
def test_phi_sign_under_orthogonal_changes(nr, seed):
    n, r = nr
    pt = dv.sample_Z_point(n, r, [2, 5][: dv.eigen_length(n, r)], seed=seed)
    rng = random.Random(seed)
    while True:
        A = [[Fraction(rng.randint(-2, 2)) for _ in range(r)] for _ in range(r)]
        if det(ExactMatrix(A)) != 0:
            break
    Ainv_T = ExactMatrix(inverse(A)).T
    M = ExactMatrix.block_diag(ExactMatrix(A), Ainv_T)
    J = dv.j_form(r)
    assert M @ J @ M.T == J
    base = dv.phi_invariant(pt.phi, pt.f)
    assert dv.phi_invariant(pt.phi @ M, pt.f) == base  # det M = 1
    swap = ExactMatrix.from_function(
        2 * r, 2 * r, lambda i, j: Fraction(1) if {i, j} == {0, r} or (i == j and i not in (0, r)) else Fraction(0)
    )
    assert swap @ J @ swap.T == J
    assert dv.phi_invariant(pt.phi @ swap, pt.f) == -base  # det = -1


def test_plucker_matches_minors():
    phi = ExactMatrix([[1, 0], [2, 1], [0, 3]])
    pl = dv.plucker(phi)
    assert pl == {"y1_2": 1, "y1_3": 3, "y2_3": 6}


# -- the varieties Z and Z' ---------------------------------------------------------

def test_z_ideal_generator_counts():
    I = dv.z_ideal(5, 4)
    # the five 4x4 Pfaffians of f; no minors of g since 2r + 1 > n
    assert len(I.generators) == 5
    I = dv.z_ideal(4, 1, ambient="essential")
    assert all(v.startswith("g") for v in I.ring.names)
    # 3x3 minors of a symmetric 4x4, a minor and its transpose counted once: (16 + 4) / 2
    assert len(I.generators) == 10


def test_z_prime_n2():
    res = dv.z_prime_ideal(2, 1)
    assert res.complete
    ring = res.ideal.ring
    g11, g12, g22, y = (ring.gen(v) for v in ("g1_1", "g1_2", "g2_2", "y1_2"))
    assert ring.weight_of("y1_2") == 1
    gb = groebner_basis(res.ideal)
    # with J = [[0, 1], [1, 0]] one has det g = -y^2
    assert gb.contains(y * y + g11 * g22 - g12 * g12)
    assert len(res.ideal.generators) == 1


@pytest.mark.parametrize("n,r", [(3, 1), (4, 1)])
def test_z_prime_generators_vanish_on_parametrization(n, r):
    res = dv.z_prime_ideal(n, r)
    tgt, src, images, _ = dv.z_prime_parametrization(n, r)
    for gen in res.ideal.generators:
        assert gen.subs(images, src).is_zero()


@pytest.mark.parametrize("n,r", [(3, 1), (4, 1)])
def test_z_prime_contains_z(n, r):
    res = dv.z_prime_ideal(n, r)
    Z = dv.z_ideal(n, r, ambient="essential")
    gb = groebner_basis(res.ideal)
    assert all(gb.contains(g.embed(res.ideal.ring)) for g in Z.generators)


def test_z_prime_hilbert_function_n3():
    res = dv.z_prime_ideal(3, 1)
    assert res.hilbert_function[:4] == [1, 9, 36, 100]


# -- epsilon probes ------------------------------------------------------------------

@pytest.mark.parametrize("family", dv.FAMILIES)
def test_probe_value_vanishes(family):
    res = dv.epsilon_probe(family, [2, 3])
    assert res.discriminant.value == 0 and res.discriminant.slope != 0
    assert isinstance(res.discriminant, DualRat)


@pytest.mark.parametrize("lams", [(2,), (2, 3), (3, 5, 7)])
def test_d_case_phi_slope(lams):
    res = dv.epsilon_probe("D-case-V0", lams)
    prod = 1
    for x in lams:
        prod *= x
    assert res.phi.value == 0
    assert abs(res.phi.slope) == prod


def test_probe_quartic_only_for_va():
    assert dv.epsilon_probe("B-case-VA", [2]).quartic == DualRat(0, 16)
    assert dv.epsilon_probe("B-case-V0", [2]).quartic is None


def test_probe_rejects_bad_lambdas():
    with pytest.raises(PerisplitError):
        dv.epsilon_probe("B-case-V0", [0, 2])
    with pytest.raises(PerisplitError):
        dv.epsilon_probe("nope", [2])


def test_generic_pair_shapes():
    gp = dv.generic_pair(4, 2)
    assert gp.f.T == -gp.f
    assert gp.g.T == gp.g
    assert isinstance(gp.ring, PolyRing)


def test_small_z_quotient_is_finite_on_fiber():
    # n = 2, r = 1: Z is everything; the fiber over f = g = 0 is a point
    I = dv.z_ideal(2, 1)
    gens = I.ring.names
    from perisplit.groebner import IdealPresentation

    J = IdealPresentation(I.ring, list(I.generators) + [I.ring.gen(v) for v in gens])
    assert quotient_dimension(J) == 1
