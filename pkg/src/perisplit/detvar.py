"""Pairs (f, g) of a skew and a symmetric form, the loci Z and Z', and their invariants.

Z is cut out by the (2(n-r)+2)-Pfaffians of f and the (2r+1)-minors of g.
For 2r <= n, Z' is the image of phi -> (phi J phi^T, maximal minors of phi)
with J = [[0, I_r], [I_r, 0]].
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import InvariantViolation, PerisplitError
from .exactcore.dual import DualRat
from .exactcore.linalg import inverse, nullspace
from .exactcore.matrix import ExactMatrix, charpoly_coeffs, det, pfaffian
from .exactcore.poly import MPoly, PolyRing
from .groebner import IdealPresentation, eliminate, groebner_basis, ideals_equal
from .splitrings import univariate_discriminant


def f_name(i: int, j: int) -> str:
    return f"f{i + 1}_{j + 1}"


def g_name(i: int, j: int) -> str:
    i, j = min(i, j), max(i, j)
    return f"g{i + 1}_{j + 1}"


def y_name(S: Sequence[int]) -> str:
    return "y" + "_".join(str(s + 1) for s in S)


@dataclass
class GenericPair:
    n: int
    r: int
    ring: PolyRing
    f: ExactMatrix
    g: ExactMatrix


def generic_pair(n: int, r: int) -> GenericPair:
    if n < 1 or not 0 <= r <= n:
        raise PerisplitError("need n >= 1 and 0 <= r <= n")
    fn = [f_name(i, j) for i in range(n) for j in range(i + 1, n)]
    gn = [g_name(i, j) for i in range(n) for j in range(i, n)]
    ring = PolyRing(fn + gn)

    def fe(i, j):
        if i == j:
            return ring.zero()
        return ring.gen(f_name(i, j)) if i < j else -ring.gen(f_name(j, i))

    f = ExactMatrix.from_function(n, n, fe)
    g = ExactMatrix.from_function(n, n, lambda i, j: ring.gen(g_name(i, j)))
    return GenericPair(n, r, ring, f, g)


def sub_pfaffians(M: ExactMatrix, size: int) -> list:
    return [pfaffian(M.principal(S), check=False) for S in combinations(range(M.nrows), size)]


def sub_minors(M: ExactMatrix, size: int, symmetric: bool = False) -> list:
    out = []
    idx = list(combinations(range(M.nrows), size))
    for a, R in enumerate(idx):
        for b, C in enumerate(idx):
            if symmetric and b < a:
                continue  # the transpose minor is equal
            out.append(det(M.submatrix(R, C)))
    return out


def z_ideal(n: int, r: int, ambient: str = "full") -> IdealPresentation:
    """Ideal of Z in the ring on all f and g entries.

    ``ambient="essential"`` drops the variables that no generator uses (all of
    f when 2r <= n, all of g when 2r > n); Betti numbers do not change.
    """
    pair = generic_pair(n, r)
    gens = []
    pf_size = 2 * (n - r) + 2
    if pf_size <= n:
        gens += sub_pfaffians(pair.f, pf_size)
    if 2 * r + 1 <= n:
        gens += sub_minors(pair.g, 2 * r + 1, symmetric=True)
    if ambient == "full":
        return IdealPresentation(pair.ring, gens)
    if ambient != "essential":
        raise ValueError("ambient must be 'full' or 'essential'")
    keep = [nm for nm in pair.ring.names if nm.startswith("f" if 2 * r > n else "g")]
    sub = PolyRing(keep)
    return IdealPresentation(sub, [p.embed(sub) for p in gens])


# -- chi-bar and Phi ------------------------------------------------------------

def chi_shift(n: int, r: int) -> int:
    return abs(2 * r - n)


def chi_bar_coeffs(f: ExactMatrix, g: ExactMatrix, n: int, r: int, modulo=None) -> list:
    """Ascending coefficients of charpoly(fg) / u^{|2r-n|} in u.

    ``modulo`` (a Groebner basis) reduces polynomial coefficients first, for
    generic pairs taken modulo the ideal of Z.
    """
    if f.shape != (n, n) or g.shape != (n, n):
        raise PerisplitError("f and g must be n x n")
    coeffs = charpoly_coeffs(f @ g)
    if modulo is not None:
        coeffs = [modulo.reduce(c) if isinstance(c, MPoly) else c for c in coeffs]
    s = chi_shift(n, r)
    if any(c != 0 for c in coeffs[:s]):
        raise InvariantViolation("characteristic polynomial is not divisible by the expected power of u",
                                 f"u^{s} divides charpoly(fg)")
    out = coeffs[s:]
    if any(c != 0 for k, c in enumerate(out) if k % 2):
        raise InvariantViolation("chi-bar has an odd coefficient", "chi-bar is a polynomial in u^2")
    return out


def chi_bar(f: ExactMatrix, g: ExactMatrix, n: int, r: int, var: str = "u", modulo=None) -> MPoly:
    coeffs = chi_bar_coeffs(f, g, n, r, modulo)
    if any(isinstance(c, DualRat) for c in coeffs):
        raise PerisplitError("use chi_bar_coeffs for dual-number entries")
    base = next((c.ring for c in coeffs if isinstance(c, MPoly)), None)
    ring = PolyRing([var]) if base is None else (base if var in base else base.extend([var]))
    u = ring.gen(var)
    out = ring.zero()
    for k, c in enumerate(coeffs):
        out = out + (c.embed(ring) if isinstance(c, MPoly) else ring.const(c)) * u**k
    return out


def even_coeffs(coeffs: Sequence) -> list:
    """[a_2, a_4, ...] of a monic even polynomial given ascending in u."""
    deg = len(coeffs) - 1
    return [coeffs[deg - 2 * i] for i in range(1, deg // 2 + 1)]


def phi_invariant(phi: ExactMatrix, f: ExactMatrix):
    """Sum over 2r-subsets S of Pf(f_S) * det(phi_S)."""
    n, k = phi.shape
    if f.shape != (n, n):
        raise PerisplitError("phi must have as many rows as f")
    if k == 0 or k % 2 or k > n:
        raise PerisplitError("phi needs an even, positive number of columns, at most n")
    total = 0
    cols = list(range(k))
    for S in combinations(range(n), k):
        pf = pfaffian(f.principal(S))
        if pf == 0:
            continue
        d = det(phi.submatrix(S, cols))
        total = total + pf * d
    return total


def j_form(r: int, one=Fraction(1), zero=Fraction(0)) -> ExactMatrix:
    return ExactMatrix.from_function(2 * r, 2 * r, lambda i, j: one if abs(i - j) == r else zero)


def plucker(phi: ExactMatrix) -> dict[str, object]:
    n, k = phi.shape
    return {y_name(S): det(phi.submatrix(S, list(range(k)))) for S in combinations(range(n), k)}


# -- sampling from normal forms --------------------------------------------------

@dataclass
class ZPoint:
    n: int
    r: int
    f: ExactMatrix
    g: ExactMatrix
    eigen: tuple
    phi: ExactMatrix | None = None
    plucker: dict | None = None
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        doc = {
            "n": self.n, "r": self.r,
            "eigen": [str(x) for x in self.eigen],
            "f": [[str(x) for x in row] for row in self.f.rows],
            "g": [[str(x) for x in row] for row in self.g.rows],
        }
        if self.phi is not None:
            doc["phi"] = [[str(x) for x in row] for row in self.phi.rows]
            doc["plucker"] = {k: str(v) for k, v in self.plucker.items()}
        return doc


def _rand_rat(rng: random.Random, lo: int = -5, hi: int = 5) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 3))


def _nonzero(rng: random.Random) -> Fraction:
    while True:
        x = _rand_rat(rng)
        if x:
            return x


def _unimodular(n: int, rng: random.Random, steps: int | None = None) -> list[list[Fraction]]:
    """Product of random elementary matrices with a random permutation."""
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    P = [P[k] for k in perm]
    for _ in range(steps if steps is not None else 2 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]
    return P


def _antidiagonal_skew(m: int, top: Sequence, rng: random.Random) -> list[list[Fraction]]:
    """Skew m x m, zero strictly above the antidiagonal, antidiagonal top..., -reversed."""
    A = [[Fraction(0)] * m for _ in range(m)]
    k = m // 2
    for i in range(k):
        A[i][m - 1 - i] = Fraction(top[i])
        A[m - 1 - i][i] = -Fraction(top[i])
    for i in range(m):
        for j in range(i + 1, m):
            if i + j > m - 1:
                x = _rand_rat(rng)
                A[i][j] = x
                A[j][i] = -x
    return A


def _antidiagonal_sym(m: int, top: Sequence, rng: random.Random) -> list[list[Fraction]]:
    """Symmetric m x m, zero strictly below the antidiagonal, antidiagonal top..., reversed."""
    D = [[Fraction(0)] * m for _ in range(m)]
    k = m // 2
    for i in range(k):
        D[i][m - 1 - i] = Fraction(top[i])
        D[m - 1 - i][i] = Fraction(top[i])
    for i in range(m):
        for j in range(i, m):
            if i + j < m - 1:
                x = _rand_rat(rng)
                D[i][j] = x
                D[j][i] = x
    return D


def _rand_skew(m: int, rng) -> list[list[Fraction]]:
    A = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            x = _rand_rat(rng)
            A[i][j], A[j][i] = x, -x
    return A


def _rand_sym(m: int, rng) -> list[list[Fraction]]:
    A = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            A[i][j] = A[j][i] = _rand_rat(rng)
    return A


def _factor_products(eigen: Sequence, rng) -> tuple[list[Fraction], list[Fraction]]:
    """a_i, d_i with a_i * d_i = eigen_i and every a_i nonzero."""
    a, d = [], []
    for lam in eigen:
        x = _nonzero(rng)
        a.append(x)
        d.append(Fraction(lam) / x)
    return a, d


def eigen_length(n: int, r: int) -> int:
    return min(n - r, r)


def sample_Z_point(n: int, r: int, eigen: Sequence, seed: int = 0, change_basis: bool = True) -> ZPoint:
    """A rational point of Z with chi-bar = prod (u^2 - eigen_i^2).

    Built from the antidiagonal normal forms, then moved by a random
    unimodular change of basis P (f -> P^T f P, g -> P^-1 g P^-T).  When
    2r <= n a witness phi with g = phi J phi^T comes along.
    """
    if n < 1 or not 0 <= r <= n:
        raise PerisplitError("need n >= 1 and 0 <= r <= n")
    eigen = tuple(Fraction(x) for x in eigen)
    if len(eigen) != eigen_length(n, r):
        raise PerisplitError(f"expected {eigen_length(n, r)} eigenvalues for (n, r) = ({n}, {r})")
    rng = random.Random(seed)
    a, d = _factor_products(eigen, rng)
    zero = Fraction(0)
    phi = None
    if 2 * r > n:
        m = 2 * (n - r)
        s = 2 * r - n
        A = _antidiagonal_skew(m, a, rng)
        D = _antidiagonal_sym(m, d, rng)
        B = _rand_sym(s, rng)
        C = [[_rand_rat(rng) for _ in range(s)] for _ in range(m)]
        f = [[zero] * n for _ in range(n)]
        g = [[zero] * n for _ in range(n)]
        for i in range(m):
            for j in range(m):
                f[s + i][s + j] = A[i][j]
                g[s + i][s + j] = D[i][j]
        for i in range(s):
            for j in range(s):
                g[i][j] = B[i][j]
        for i in range(m):
            for j in range(s):
                g[s + i][j] = C[i][j]
                g[j][s + i] = C[i][j]
    else:
        m = 2 * r
        rest = n - m
        A = _antidiagonal_skew(m, a, rng)
        D = _antidiagonal_sym(m, d, rng)
        Bm = [[_rand_rat(rng) for _ in range(rest)] for _ in range(m)]
        Cm = _rand_skew(rest, rng)
        f = [[zero] * n for _ in range(n)]
        g = [[zero] * n for _ in range(n)]
        for i in range(m):
            for j in range(m):
                f[i][j] = A[i][j]
                g[i][j] = D[i][j]
            for j in range(rest):
                f[i][m + j] = Bm[i][j]
                f[m + j][i] = -Bm[i][j]
        for i in range(rest):
            for j in range(rest):
                f[m + i][m + j] = Cm[i][j]
        if r > 0:
            # psi = [[D1/2, I], [D2^T, 0]] satisfies psi J psi^T = D
            phi = [[zero] * m for _ in range(n)]
            for i in range(r):
                for j in range(r):
                    phi[i][j] = D[i][j] / 2
                    phi[r + i][j] = D[j][r + i]
                phi[i][r + i] = Fraction(1)
    fM, gM = ExactMatrix(f), ExactMatrix(g)
    phiM = ExactMatrix(phi) if phi is not None else None
    if change_basis:
        P = ExactMatrix(_unimodular(n, rng))
        Pinv = ExactMatrix(inverse(P.rows))
        fM = P.T @ fM @ P
        gM = Pinv @ gM @ Pinv.T
        if phiM is not None:
            phiM = Pinv @ phiM
    point = ZPoint(n, r, fM, gM, eigen, phiM, plucker(phiM) if phiM is not None else None)
    point.meta = {"a": [str(x) for x in a], "d": [str(x) for x in d], "seed": seed}
    return point


def on_Z(point: ZPoint) -> bool:
    """Rank conditions via sub-Pfaffians and minors."""
    n, r = point.n, point.r
    k = 2 * (n - r) + 2
    if k <= n and any(p != 0 for p in sub_pfaffians(point.f, k)):
        return False
    if 2 * r + 1 <= n and any(m != 0 for m in sub_minors(point.g, 2 * r + 1, symmetric=True)):
        return False
    return True


def verify_phi_chi(point: ZPoint) -> tuple[bool, dict]:
    """Phi^2 = +-chi-bar(0); returns (holds, report with the observed sign)."""
    if point.phi is None:
        raise PerisplitError("point has no phi witness (needs 0 < 2r <= n)")
    J = j_form(point.r)
    if point.phi @ J @ point.phi.T != point.g:
        raise InvariantViolation("witness does not factor g", "g = phi J phi^T")
    phi_val = phi_invariant(point.phi, point.f)
    c0 = chi_bar_coeffs(point.f, point.g, point.n, point.r)[0]
    sq = phi_val * phi_val
    if sq == c0 and c0 != 0:
        sign = 1
    elif sq == -c0 and c0 != 0:
        sign = -1
    elif sq == 0 and c0 == 0:
        sign = 0
    else:
        sign = None
    report = {"phi": str(phi_val), "chi_bar_0": str(c0), "sign": sign, "expected_sign": (-1) ** point.r}
    return sign is not None, report


# -- Z' ---------------------------------------------------------------------------

@dataclass
class ZPrimeResult:
    ideal: IdealPresentation
    max_degree: int
    complete: bool | None
    hilbert_function: list[int]


def _phi_ring(n: int, r: int) -> tuple[PolyRing, ExactMatrix]:
    names = [f"x{i + 1}_{k + 1}" for i in range(n) for k in range(2 * r)]
    ring = PolyRing(names)
    phi = ExactMatrix.from_function(n, 2 * r, lambda i, k: ring.gen(f"x{i + 1}_{k + 1}"))
    return ring, phi


def z_prime_parametrization(n: int, r: int):
    """(target ring on g and y, source ring on phi, images of each target variable)."""
    if r < 1 or 2 * r > n:
        raise PerisplitError("Z' needs 0 < 2r <= n")
    src, phi = _phi_ring(n, r)
    J = j_form(r, one=src.one(), zero=src.zero())
    gmat = phi @ J @ phi.T
    gnames = [g_name(i, j) for i in range(n) for j in range(i, n)]
    subsets = list(combinations(range(n), 2 * r))
    ynames = [y_name(S) for S in subsets]
    tgt = PolyRing(gnames + ynames, [1] * len(gnames) + [r] * len(ynames))
    images = {g_name(i, j): gmat[i, j] for i in range(n) for j in range(i, n)}
    for S in subsets:
        images[y_name(S)] = det(phi.submatrix(S, list(range(2 * r))))
    # multidegree in Z^n: number of phi-entries from each row
    multideg = {}
    for i in range(n):
        for j in range(i, n):
            v = [0] * n
            v[i] += 1
            v[j] += 1
            multideg[g_name(i, j)] = tuple(v)
    for S in subsets:
        multideg[y_name(S)] = tuple(1 if k in S else 0 for k in range(n))
    return tgt, src, images, multideg


def _monomials(weights, degree):
    from .groebner.ideal import monomials_of_degree
    return monomials_of_degree(weights, degree)


def z_prime_ideal(n: int, r: int, max_degree: int | None = None, certify: bool = True,
                  budget: int | None = None) -> ZPrimeResult:
    """Generators of the kernel of Q[g, y] -> Q[phi] up to a weighted degree.

    Works one Z^n-multidegree at a time: the kernel of the substitution map
    in that block, modulo what lower-degree generators already produce.
    With at most 12 variables in total the result is compared against a
    full elimination, which settles completeness.
    """
    tgt, src, images, multideg = z_prime_parametrization(n, r)
    if max_degree is None:
        max_degree = 2 * r + 1
    w = tgt.weights
    names = tgt.names
    mdeg_var = [multideg[nm] for nm in names]
    gens: list[MPoly] = []
    gen_md: list[tuple] = []
    hf = []
    img_cache: dict = {}

    def image(e):
        if e in img_cache:
            return img_cache[e]
        k = next(i for i, x in enumerate(e) if x)
        prev = e[:k] + (e[k] - 1,) + e[k + 1:]
        val = images[names[k]] if not any(prev) else image(prev) * images[names[k]]
        img_cache[e] = val
        return val

    def md_of(e):
        v = [0] * n
        for i, x in enumerate(e):
            if x:
                for t in range(n):
                    v[t] += x * mdeg_var[i][t]
        return tuple(v)

    for d in range(0, max_degree + 1):
        blocks: dict = {}
        for e in _monomials(w, d):
            blocks.setdefault(md_of(e), []).append(e)
        dim_d = 0
        for md, monos in sorted(blocks.items()):
            pos = {e: k for k, e in enumerate(monos)}
            # image matrix: rows = phi monomials, columns = source monomials
            rows_index: dict = {}
            cols = []
            for e in monos:
                col = {}
                if any(e):
                    for pe, c in image(e).terms.items():
                        col[rows_index.setdefault(pe, len(rows_index))] = c
                else:
                    col[rows_index.setdefault((0,) * src.nvars, len(rows_index))] = Fraction(1)
                cols.append(col)
            mat = [[col.get(k, 0) for col in cols] for k in range(len(rows_index))]
            ker = nullspace(mat, len(monos)) if mat else nullspace([], len(monos))
            dim_d += len(monos) - len(ker)
            if not ker:
                continue
            # span of lower generators times monomials, inside this block
            echelon: dict[int, list[Fraction]] = {}

            def insert(vec):
                v = list(vec)
                for pc in sorted(echelon):
                    if v[pc]:
                        row = echelon[pc]
                        c = v[pc]
                        v = [x - c * y for x, y in zip(v, row)]
                lead = next((k for k, x in enumerate(v) if x), None)
                if lead is None:
                    return False
                c = v[lead]
                v = [x / c for x in v]
                for pc in list(echelon):
                    if echelon[pc][lead]:
                        cc = echelon[pc][lead]
                        echelon[pc] = [x - cc * y for x, y in zip(echelon[pc], v)]
                echelon[lead] = v
                return True

            for G, gmd in zip(gens, gen_md):
                rest_md = tuple(a - b for a, b in zip(md, gmd))
                if min(rest_md) < 0:
                    continue
                gd = G.degree()
                for m in _monomials(w, d - gd):
                    if md_of(m) != rest_md:
                        continue
                    vec = [Fraction(0)] * len(monos)
                    for e, c in G.terms.items():
                        vec[pos[tuple(a + b for a, b in zip(e, m))]] += c
                    insert(vec)
            for kv in ker:
                if insert(kv):
                    poly = MPoly(tgt, {monos[k]: c for k, c in enumerate(kv) if c})
                    poly = _primitive(poly)
                    gens.append(poly)
                    gen_md.append(md)
        hf.append(dim_d)
    if certify:
        for G in gens:
            if not G.subs(images, src).is_zero():
                raise InvariantViolation(f"generator {G} does not vanish on the parametrization",
                                         "g = phi J phi^T, y = maximal minors of phi")
    ideal = IdealPresentation(tgt, gens)
    complete = None
    if tgt.nvars + src.nvars <= 12:
        # phi entries weigh 1 and g, y weigh twice their own weight, so the graph is homogeneous
        big = src.extend(tgt.names, [2 * x for x in tgt.weights])
        rel = [big.gen(nm) - images[nm].embed(big) for nm in tgt.names]
        elim = eliminate(IdealPresentation(big, rel), src.names, budget)
        el = IdealPresentation(tgt, [MPoly(tgt, p.terms) for p in elim.generators])
        complete = ideals_equal(el, ideal, budget)
    return ZPrimeResult(ideal, max_degree, complete, hf)


def _primitive(p: MPoly) -> MPoly:
    from math import gcd, lcm

    den = 1
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p.terms.values()]
    g = 0
    for x in ints:
        g = gcd(g, x)
    lead = p.sorted_terms()[0][1]
    scale = Fraction(den, g) * (1 if lead > 0 else -1)
    return p * scale


# -- epsilon probes -------------------------------------------------------------

FAMILIES = ("B-case-V0", "B-case-VA", "D-case-V0", "D-case-detg")


@dataclass
class ProbeResult:
    family: str
    n: int
    r: int
    discriminant: DualRat
    chi_bar: list
    phi: DualRat | None = None
    quartic: DualRat | None = None

    def to_json(self) -> dict:
        doc = {
            "family": self.family, "n": self.n, "r": self.r,
            "value": str(self.discriminant.value), "slope": str(self.discriminant.slope),
            "chi_bar": [str(c) for c in self.chi_bar],
        }
        if self.phi is not None:
            doc["phi"] = {"value": str(self.phi.value), "slope": str(self.phi.slope)}
        if self.quartic is not None:
            doc["quartic"] = {"value": str(self.quartic.value), "slope": str(self.quartic.slope)}
        return doc


def _check_lambdas(lams: Sequence[Fraction], forbid_one: bool) -> None:
    sq = [x * x for x in lams]
    if any(x == 0 for x in lams):
        raise PerisplitError("lambda values must be nonzero")
    if len(set(sq)) != len(sq):
        raise PerisplitError("lambda values must be distinct up to sign")
    if forbid_one and any(x == 1 for x in sq):
        raise PerisplitError("lambda values must avoid -1, 0, 1")


def _dual_matrix(rows) -> ExactMatrix:
    return ExactMatrix([[x if isinstance(x, DualRat) else DualRat(x) for x in row] for row in rows])


def _place(n: int, offset: int, block: list[list]) -> list[list]:
    out = [[DualRat(0)] * n for _ in range(n)]
    for i, row in enumerate(block):
        for j, x in enumerate(row):
            out[offset + i][offset + j] = x if isinstance(x, DualRat) else DualRat(x)
    return out


def _lambda_blocks(lams):
    blocks = []
    for lam in lams:
        blocks.append([[0, lam], [-lam, 0]])
    return blocks


def _block_diag(blocks: list[list[list]]) -> list[list]:
    m = sum(len(b) for b in blocks)
    out = [[DualRat(0)] * m for _ in range(m)]
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = DualRat(x) if not isinstance(x, DualRat) else x
        k += len(b)
    return out


def _signed_disc(chi: list) -> DualRat:
    """4^k a_2k disc(chi~) for a monic even chi of degree 2k (ascending coefficients)."""
    coeffs = even_coeffs(chi)
    k = len(coeffs)
    desc = [DualRat(1)] + list(coeffs)
    return univariate_discriminant(desc) * coeffs[-1] * 4**k


def _reduced_disc(chi: list, alpha: DualRat) -> DualRat:
    coeffs = even_coeffs(chi)
    k = len(coeffs)
    desc = [DualRat(1)] + list(coeffs)
    return univariate_discriminant(desc) * alpha * (-4) ** k


def epsilon_probe(family: str, lambdas: Sequence, n: int | None = None, r: int | None = None) -> ProbeResult:
    """Evaluate the (reduced) discriminant on a first-order deformation through V(Delta)."""
    eps = DualRat(0, 1)
    lams = [Fraction(x) for x in lambdas]
    if family == "B-case-V0":
        _check_lambdas(lams, forbid_one=True)
        k = len(lams) + 1
        n, r = _default_nr(n, r, k, big=True)
        A = _block_diag([[[0, 1], [-1, 0]]] + _lambda_blocks(lams))
        B = _block_diag([[[eps, 0], [0, 1]]] + [[[1, 0], [0, 1]]] * (k - 1))
        f = _dual_matrix(_place(n, 2 * r - n, A))
        g = _dual_matrix(_place(n, 2 * r - n, B))
        chi = chi_bar_coeffs(f, g, n, r)
        return ProbeResult(family, n, r, _signed_disc(chi), chi)
    if family == "B-case-VA":
        _check_lambdas(lams, forbid_one=True)
        k = len(lams) + 2
        n, r = _default_nr(n, r, k, big=True)
        J4 = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
        G4 = [[eps, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, eps]]
        A = _block_diag([J4] + _lambda_blocks(lams))
        B = _block_diag([G4] + [[[1, 0], [0, 1]]] * (k - 2))
        f = _dual_matrix(_place(n, 2 * r - n, A))
        g = _dual_matrix(_place(n, 2 * r - n, B))
        chi = chi_bar_coeffs(f, g, n, r)
        quart = charpoly_coeffs(ExactMatrix(J4).map(DualRat) @ _dual_matrix(G4))
        b, c = quart[2], quart[0]
        if quart[1] != 0 or quart[3] != 0:
            raise InvariantViolation("the 4 x 4 block is not even", "t^4 + b t^2 + c")
        return ProbeResult(family, n, r, _signed_disc(chi), chi, quartic=(b * b - c * 4) * c)
    if family == "D-case-V0":
        _check_lambdas(lams, forbid_one=False)
        rr = len(lams) + 1
        if r is not None and r != rr:
            raise PerisplitError(f"D-case-V0 with {len(lams)} lambdas needs r = {rr}")
        r = rr
        n = 2 * r + 1 if n is None else n
        if 2 * r > n:
            raise PerisplitError("D-case-V0 needs 2r <= n")
        return _d_probe(family, n, r, [eps] + [DualRat(x) for x in lams], None)
    if family == "D-case-detg":
        _check_lambdas(lams, forbid_one=False)
        r = len(lams)
        if n is not None and n != 2 * r:
            raise PerisplitError("D-case-detg needs n = 2r")
        n = 2 * r
        return _d_probe(family, n, r, [DualRat(x) for x in lams], eps)
    raise PerisplitError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def _default_nr(n, r, k, big: bool):
    if n is None and r is None:
        n = 2 * k + 1
        r = n - k
    elif r is None:
        r = n - k
    elif n is None:
        n = r + k
    if n - r != k or 2 * r <= n:
        raise PerisplitError(f"this family needs n - r = {k} and 2r > n")
    return n, r


def _d_probe(family: str, n: int, r: int, mu: list, phi_eps) -> ProbeResult:
    """f adapted to J with f[k, k+r] = mu_k; g = phi J phi^T with phi = [0; diag(phi_eps, 1, ...)]."""
    s = n - 2 * r
    zero = DualRat(0)
    f = [[zero] * n for _ in range(n)]
    for k in range(r):
        f[s + k][s + k + r] = mu[k]
        f[s + k + r][s + k] = -mu[k]
    phi = [[zero] * (2 * r) for _ in range(n)]
    for k in range(2 * r):
        phi[s + k][k] = DualRat(1)
    if phi_eps is not None:
        phi[s][0] = phi_eps
    phiM = ExactMatrix(phi)
    J = j_form(r, one=DualRat(1), zero=zero)
    gM = phiM @ J @ phiM.T
    fM = ExactMatrix(f)
    chi = chi_bar_coeffs(fM, gM, n, r)
    phi_val = phi_invariant(phiM, fM)
    if not isinstance(phi_val, DualRat):
        phi_val = DualRat(phi_val)
    const = chi[0]
    if phi_val * phi_val * (-1) ** r != const:
        raise InvariantViolation("Phi does not square to chi-bar(0)", "Phi^2 = (-1)^r chi-bar(0)")
    return ProbeResult(family, n, r, _reduced_disc(chi, phi_val), chi, phi=phi_val)
