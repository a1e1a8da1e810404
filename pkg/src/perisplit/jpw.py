"""Closed-form Betti tables of (skew-)symmetric determinantal loci and the resulting cohomology.

Summands are Schur functors S_P V (or S_P V* for the symmetric side) indexed
by P(a, b, alpha) = (b + alpha_1, ..., b + alpha_b, b^a, alpha^T).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterator

from .errors import InvariantViolation, PerisplitError
from .groebner.koszul import BettiTable

Partition = tuple[int, ...]


def normalize(parts) -> Partition:
    p = tuple(int(x) for x in parts if x)
    if any(x < 0 for x in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise PerisplitError(f"not a partition: {parts}")
    return p


def transpose(lam) -> Partition:
    lam = normalize(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > k) for k in range(lam[0]))


def P_partition(a: int, b: int, alpha=()) -> Partition:
    alpha = normalize(alpha)
    if a < 0 or b < 0:
        raise PerisplitError("a and b must be nonnegative")
    if len(alpha) > b:
        raise PerisplitError(f"alpha = {alpha} has more than b = {b} rows")
    head = [b + (alpha[k] if k < len(alpha) else 0) for k in range(b)]
    return normalize(head + [b] * a + list(transpose(alpha)))


def schur_dim(lam, n: int) -> int:
    """dim S_lam(C^n) by the hook-content formula."""
    lam = normalize(lam)
    if len(lam) > n:
        return 0
    conj = transpose(lam)
    num = Fraction(1)
    for i, row in enumerate(lam):
        for j in range(row):
            hook = row - j + conj[j] - i - 1
            num *= Fraction(n + j - i, hook)
    assert num.denominator == 1
    return int(num)


def partitions(total: int, max_len: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``total`` in reverse lex order, with optional bounds."""
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    top = total if max_part is None else min(total, max_part)
    for first in range(top, 0, -1):
        for rest in partitions(total - first, None if max_len is None else max_len - 1, first):
            yield (first,) + rest


def strict_partitions(total: int, max_part: int | None = None) -> Iterator[Partition]:
    if total == 0:
        yield ()
        return
    top = total if max_part is None else min(total, max_part)
    for first in range(top, 0, -1):
        for rest in strict_partitions(total - first, first - 1):
            yield (first,) + rest


def from_frobenius(arms, legs) -> Partition:
    """Partition with Frobenius coordinates (arms | legs)."""
    d = len(arms)
    if len(legs) != d:
        raise PerisplitError("Frobenius coordinates need equal lengths")
    rows = [arms[i] + i + 1 for i in range(d)]
    cols = [legs[i] + i + 1 for i in range(d)]
    height = cols[0] if d else 0
    lam = []
    for i in range(height):
        if i < d:
            lam.append(rows[i])
        else:
            lam.append(sum(1 for c in cols if c > i))
    return normalize(lam)


@dataclass(frozen=True)
class PartitionRep:
    partition: Partition
    dual: bool = False
    multiplicity: int = 1

    @property
    def label(self) -> str:
        body = ",".join(str(x) for x in self.partition)
        return f"S({body})" + ("V*" if self.dual else "V")

    def dim(self, n: int) -> int:
        return self.multiplicity * schur_dim(self.partition, n)


@dataclass(frozen=True)
class Summand:
    rep: PartitionRep
    b: int
    alpha: Partition
    i: int
    j: int


def _layout(n: int, r: int) -> tuple[int, int, bool, int]:
    """(a, step, dual, sign) with step the k per unit of b and sign +1 for b(b+1)/2, -1 for b(b-1)/2."""
    if not 0 < r < n:
        raise PerisplitError("needs 0 < r < n")
    if 2 * r > n:
        return 2 * n - 2 * r + 1, n - r, False, 1
    return 2 * r - 1, r, True, -1


def _summands_for_b(n: int, r: int, b: int, max_j: int | None = None) -> list[Summand]:
    a, step, dual, sgn = _layout(n, r)
    tri = b * (b + sgn) // 2
    base = b * step + tri
    out = []
    if b == 0:
        return [Summand(PartitionRep((), dual), 0, (), 0, 0)]
    max_alpha1 = n - a - b
    if max_alpha1 < 0:
        return out
    budget = None if max_j is None else max_j - base
    if budget is not None and budget < 0:
        return out
    top = b * max_alpha1 if budget is None else min(b * max_alpha1, budget)
    for size in range(top + 1):
        for alpha in partitions(size, b, max_alpha1):
            P = P_partition(a, b, alpha)
            if len(P) > n:
                continue
            i = size + tri
            j = size + base
            if sum(P) != 2 * j:
                raise InvariantViolation(f"|P| = {sum(P)} is not twice the internal degree {j}",
                                         "internal degree = |P|/2")
            if sum(P) != 2 * size + b * b + a * b:
                raise InvariantViolation("size of P(a,b,alpha) is off", "|P| = 2|alpha| + b^2 + ab")
            out.append(Summand(PartitionRep(P, dual), b, alpha, i, j))
    return out


def max_b(n: int, r: int) -> int:
    a, _, _, _ = _layout(n, r)
    return max(n - a, 0)


def L_module(n: int, r: int, k: int) -> list[Summand]:
    """Summands of L_k; boundary r in {0, n} gives the exterior-algebra pieces of degree k."""
    if not 0 <= r <= n:
        raise PerisplitError("needs 0 <= r <= n")
    if r in (0, n):
        return boundary_piece(n, r, k)
    _, step, _, _ = _layout(n, r)
    if k < 0 or k % step:
        return []
    return _summands_for_b(n, r, k // step)


def boundary_piece(n: int, r: int, j: int) -> list[Summand]:
    """Lambda^j(Lambda^2 V) for r = n, Lambda^j(Sym^2 V*) for r = 0, as Schur functors."""
    out = []
    for alpha in strict_partitions(j):
        if r == n:
            lam = from_frobenius([x - 1 for x in alpha], list(alpha))
            rep = PartitionRep(lam, False)
        elif r == 0:
            lam = from_frobenius(list(alpha), [x - 1 for x in alpha])
            rep = PartitionRep(lam, True)
        else:
            raise PerisplitError("boundary pieces need r = 0 or r = n")
        if len(lam) <= n:
            out.append(Summand(rep, 0, alpha, j, j))
    return out


def boundary_dims(n: int, r: int, max_j: int) -> list[int]:
    return [sum(s.rep.dim(n) for s in boundary_piece(n, r, j)) for j in range(max_j + 1)]


def summands(n: int, r: int, max_j: int, pipeline: str = "Z'") -> list[Summand]:
    """All summands with internal degree <= max_j (b ascending, alpha in order)."""
    if pipeline not in ("Z", "Z'"):
        raise PerisplitError("pipeline must be 'Z' or \"Z'\"")
    _, step, _, sgn = _layout(n, r)
    out = []
    for b in range(0, max_b(n, r) + 1):
        if b * step + b * (b + sgn) // 2 > max_j:
            break  # the minimal degree grows with b
        if pipeline == "Z" and 2 * r <= n and b % 2:
            continue
        out.extend(_summands_for_b(n, r, b, max_j))
    return out


def betti_table_jpw(n: int, r: int, max_i: int, max_j: int, pipeline: str = "Z'") -> BettiTable:
    """Graded Betti numbers over the polynomial ring on the f and g entries.

    For 2r > n this is O_Z; for 2r <= n the default is O_{Z'} (all b), and
    ``pipeline="Z"`` keeps only even b, which is O_Z.
    """
    entries: dict = {}
    labels: dict = {}
    for s in summands(n, r, max_j, pipeline):
        if s.i > max_i or s.j > max_j:
            continue
        key = (s.i, s.j)
        entries[key] = entries.get(key, 0) + s.rep.dim(n)
        if s.rep.partition:
            labels.setdefault(key, []).append(s.rep.label)
    return BettiTable(entries, max_i, max_j, labels)


# -- cohomology -----------------------------------------------------------------

def s_values(n: int, r: int) -> tuple[int, int]:
    if not 0 < r < n:
        raise PerisplitError("needs 0 < r < n")
    if 2 * r > n:
        return 2 ** (n - r) * factorial(n - r), 2 ** (n - r)
    return 2 ** (r - 1) * factorial(r), 2 ** (r - 1)


def A_poincare(n: int, r: int) -> list[int]:
    """Poincare polynomial (cohomological degrees) of the isotropic Grassmannian factor."""
    from .splitrings import cohomology_specialize

    if not 0 < r < n:
        raise PerisplitError("needs 0 < r < n")
    if 2 * r > n:
        k = n - r
        return cohomology_specialize("B-fact", k, k).as_polynomial()
    return cohomology_specialize("D-fact", r, r).as_polynomial()


@dataclass
class CohomologyProfile:
    n: int
    r: int
    A_poincare: list[int]
    E_series: dict[int, dict[int, int]]
    H_series: dict[int, dict[int, int]]
    s0: int
    s1: int
    E_series_Z: dict[int, dict[int, int]] | None = None
    multiplicity_free: bool = True
    violation: dict | None = None
    cutoffs: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def conv(d):
            return {str(i): {str(j): v for j, v in sorted(row.items())} for i, row in sorted(d.items())}

        doc = {
            "n": self.n, "r": self.r, "A_poincare": list(self.A_poincare),
            "E_series": conv(self.E_series), "H_series": conv(self.H_series),
            "s0": self.s0, "s1": self.s1, "multiplicity_free": self.multiplicity_free,
            "violation": self.violation, "cutoffs": dict(self.cutoffs),
        }
        if self.E_series_Z is not None:
            doc["E_series_Z"] = conv(self.E_series_Z)
        return doc


def _e_series(table: BettiTable, max_k: int) -> dict[int, dict[int, int]]:
    """E^k collects Tor_p in internal degree k + p."""
    out: dict[int, dict[int, int]] = {}
    for (p, j), v in table.entries.items():
        k = j - p
        if 0 <= k <= max_k:
            out.setdefault(k, {})[j] = out.get(k, {}).get(j, 0) + v
    return out


def cohomology_series(n: int, r: int, max_k: int, max_j: int) -> CohomologyProfile:
    if r in (0, n):
        raise PerisplitError("r = 0 or r = n: the space is a point whose coordinate ring is an exterior "
                             "algebra; use boundary_dims instead")
    A = A_poincare(n, r)
    s0, s1 = s_values(n, r)
    if sum(A) != s1:
        raise InvariantViolation(f"A has total dimension {sum(A)}, expected {s1}", "total of A = s1")
    table = betti_table_jpw(n, r, max_j, max_j)
    E = _e_series(table, max_k)
    H: dict[int, dict[int, int]] = {}
    for k in range(max_k + 1):
        for i, row in E.items():
            if 0 <= k - i < len(A) and A[k - i]:
                for j, v in row.items():
                    H.setdefault(k, {})[j] = H.get(k, {}).get(j, 0) + A[k - i] * v
    EZ = None
    if 2 * r <= n:
        EZ = _e_series(betti_table_jpw(n, r, max_j, max_j, pipeline="Z"), max_k)
    ok, bad = multiplicity_free_check(n, r, max_k)
    return CohomologyProfile(n, r, A, E, H, s0, s1, EZ, ok, bad, {"max_k": max_k, "max_j": max_j})


def multiplicity_free_check(n: int, r: int, max_k: int) -> tuple[bool, dict | None]:
    """No label repeats inside any L_k, and consecutive L~_k share none.

    L~_k = sum_i A_{k-i} (x) L_i with A in cohomological (even) degrees.
    """
    A = A_poincare(n, r)
    per_k: dict[int, set] = {}
    for k in range(max_k + 1):
        labs = [s.rep.label for s in L_module(n, r, k)]
        if len(set(labs)) != len(labs):
            dup = next(x for x in labs if labs.count(x) > 1)
            return False, {"kind": "repeat within L_k", "k": k, "label": dup}
        per_k[k] = set(labs)
    tilde: dict[int, set] = {}
    for k in range(max_k + 1):
        acc = set()
        for i in range(k + 1):
            if 0 <= k - i < len(A) and A[k - i]:
                acc |= per_k.get(i, set())
        tilde[k] = acc
    for k in range(max_k):
        common = tilde[k] & tilde[k + 1]
        if common:
            return False, {"kind": "shared between consecutive", "k": k, "label": sorted(common)[0]}
    return True, None


def z_prime_hilbert_function(n: int, d: int) -> int:
    """dim of the degree-d part of the coordinate ring of Z' for r = 1 (torus-invariant monomials)."""
    return comb(n + d - 1, d) ** 2
