"""Exact linear algebra over Q.

``rank`` is the fast route (multimodular, exact by a Hadamard bound);
``rank_fraction`` and ``rref`` are plain Fraction elimination and serve as
the reference route.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .. import kernels


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def rank_sparse_columns(cols: Sequence[dict], nrows: int, which: str | None = None) -> int:
    """Rank of a matrix given as sparse columns {row: rational}."""
    int_cols = []
    for col in cols:
        den = 1
        for x in col.values():
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        c = {k: int(x * den) for k, x in col.items() if x}
        if c:
            int_cols.append(c)
    if not int_cols:
        return 0
    used_rows = sorted({k for c in int_cols for k in c})
    pos = {k: i for i, k in enumerate(used_rows)}
    m, n = len(used_rows), len(int_cols)
    col_bits = sum(0.5 * math.log2(max(sum(v * v for v in c.values()), 1)) for c in int_cols)
    row_sq = [0] * m
    for c in int_cols:
        for k, v in c.items():
            row_sq[pos[k]] += v * v
    row_bits = sum(0.5 * math.log2(max(s, 1)) for s in row_sq)
    bound = min(col_bits, row_bits) + 2.0
    target = min(m, n)
    small = all(abs(v) < 2**62 for c in int_cols for v in c.values())
    rr, cc, vv = [], [], []
    for j, c in enumerate(int_cols):
        for k, v in c.items():
            rr.append(pos[k])
            cc.append(j)
            vv.append(v)
    # keep the smaller dimension as rows: elimination cost is rows * cols * min
    transpose = m > n
    shape = (n, m) if transpose else (m, n)
    ri, ci = (np.array(cc), np.array(rr)) if transpose else (np.array(rr), np.array(cc))
    vals = np.array(vv, dtype=np.int64) if small else None
    best = 0
    used = 0.0
    for p in kernels.PRIMES:
        a = np.zeros(shape, dtype=np.int64)
        if vals is not None:
            a[ri, ci] = vals % p
        else:
            a[ri, ci] = np.array([v % p for v in vv], dtype=np.int64)
        best = max(best, kernels.rank_mod_p(a, p, which))
        used += math.log2(p)
        if best == target or used > bound:
            return best
    raise ArithmeticError("ran out of primes for the rank bound")  # pragma: no cover


def _log2_norm(vec: Sequence[int]) -> float:
    s = sum(x * x for x in vec)
    return 0.5 * math.log2(s) if s > 1 else 0.0


def rank(rows: Sequence[Sequence], which: str | None = None) -> int:
    """Exact rank of a rational matrix given as a list of rows.

    The rank mod p never exceeds the rank over Q, and some nonzero maximal
    minor is bounded by the product of row norms (Hadamard); once the product
    of the primes used exceeds that bound, one of them does not divide the
    minor, so the maximum of the modular ranks is the rational rank.
    """
    mat = [r for r in _integer_rows(rows) if any(r)]
    if not mat:
        return 0
    m, n = len(mat), len(mat[0])
    cols = list(zip(*mat))
    bound = min(sum(_log2_norm(r) for r in mat), sum(_log2_norm(c) for c in cols)) + 2.0
    target = min(m, n)
    small = all(abs(x) < 2**62 for r in mat for x in r)
    base = np.array(mat, dtype=np.int64) if small else None
    best = 0
    used = 0.0
    for p in kernels.PRIMES:
        if base is not None:
            a = base % p
        else:
            a = np.array([[x % p for x in r] for r in mat], dtype=np.int64)
        best = max(best, kernels.rank_mod_p(a, p, which))
        used += math.log2(p)
        if best == target or used > bound:
            return best
    raise ArithmeticError("ran out of primes for the rank bound")  # pragma: no cover


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                ri = a[i]
                rr = a[r]
                a[i] = [x - f * y for x, y in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def rank_fraction(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} over Q, one vector per free column."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    n = len(rows[0])
    red, piv = rref(rows)
    free = [c for c in range(n) if c not in set(piv)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for row, pc in zip(red, piv):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in red]
