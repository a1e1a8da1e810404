"""Exact matrices over Q, dual numbers or polynomial rings.

Entries may be any type closed under ``+``, ``-``, ``*`` that mixes with ints
(Fraction, DualRat, MPoly).  Nothing here divides except the Faddeev-LeVerrier
step, which divides by small integers only.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from ..errors import InvariantViolation
from .poly import MPoly, PolyRing, poly_sum


def _is_zero(x) -> bool:
    return x == 0


class ExactMatrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        if not rows:
            raise ValueError("a matrix needs at least one row")
        width = len(rows[0])
        if width == 0 or any(len(r) != width for r in rows):
            raise ValueError("rows must be nonempty and of equal length")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = width

    @classmethod
    def from_function(cls, m: int, n: int, fn: Callable[[int, int], object]) -> "ExactMatrix":
        return cls([[fn(i, j) for j in range(n)] for i in range(m)])

    @classmethod
    def identity(cls, n: int, one=Fraction(1), zero=Fraction(0)) -> "ExactMatrix":
        return cls.from_function(n, n, lambda i, j: one if i == j else zero)

    @classmethod
    def zeros(cls, m: int, n: int, zero=Fraction(0)) -> "ExactMatrix":
        return cls.from_function(m, n, lambda i, j: zero)

    @classmethod
    def block_diag(cls, *blocks: "ExactMatrix", zero=Fraction(0)) -> "ExactMatrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[zero] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    out[r + i][c + j] = b.rows[i][j]
            r += b.nrows
            c += b.ncols
        return cls(out)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "ExactMatrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.rows))

    def map(self, fn) -> "ExactMatrix":
        return ExactMatrix([[fn(x) for x in r] for r in self.rows])

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def scale(self, c) -> "ExactMatrix":
        return self.map(lambda x: x * c)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                terms = [a * b for a, b in zip(r, c) if not _is_zero(a) and not _is_zero(b)]
                row.append(_sum(terms, r[0] * 0))
            out.append(row)
        return ExactMatrix(out)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def principal(self, idx: Sequence[int]) -> "ExactMatrix":
        return self.submatrix(idx, idx)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_skew(self) -> bool:
        if not self.is_square():
            return False
        n = self.nrows
        return all(
            _is_zero(self.rows[i][j] + self.rows[j][i]) for i in range(n) for j in range(i, n)
        )

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        n = self.nrows
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i + 1, n))


def _sum(items: list, zero):
    if not items:
        return zero
    if isinstance(items[0], MPoly):
        return poly_sum(items[0].ring, items)
    acc = items[0]
    for x in items[1:]:
        acc = acc + x
    return acc


def det(M: ExactMatrix):
    """Division-free determinant by dynamic programming over column subsets."""
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = M.nrows
    zero = M.rows[0][0] * 0
    # partial[S] = signed sum over bijections rows[:|S|] -> S
    partial = {0: zero + 1}
    for i in range(n):
        nxt: dict = {}
        row = M.rows[i]
        for mask, val in partial.items():
            if _is_zero(val):
                continue
            above = 0
            for j in range(n - 1, -1, -1):
                bit = 1 << j
                if mask & bit:
                    above += 1
                    continue
                a = row[j]
                if _is_zero(a):
                    continue
                # sign of inserting column j: number of chosen columns to its right
                term = val * a
                if above % 2:
                    term = -term
                key = mask | bit
                nxt[key] = nxt[key] + term if key in nxt else term
        partial = nxt
    return partial.get((1 << n) - 1, zero)


def minor(M: ExactMatrix, rows: Sequence[int], cols: Sequence[int]):
    return det(M.submatrix(rows, cols))


def pfaffian(M: ExactMatrix, check: bool = True):
    """Pfaffian by expansion along the first row, memoized on index subsets.

    Normalized so that each [[0,1],[-1,0]] block contributes +1.
    """
    if not M.is_square():
        raise ValueError("Pfaffian of a non-square matrix")
    n = M.nrows
    if n % 2:
        raise ValueError("Pfaffian of an odd-size matrix")
    if check and not M.is_skew():
        raise InvariantViolation("Pfaffian requested for a non-skew matrix", "M^T = -M")
    rows = M.rows
    zero = rows[0][0] * 0

    @lru_cache(maxsize=None)
    def pf(idx: tuple):
        if not idx:
            return zero + 1
        i = idx[0]
        acc = []
        for pos in range(1, len(idx)):
            j = idx[pos]
            a = rows[i][j]
            if _is_zero(a):
                continue
            rest = idx[1:pos] + idx[pos + 1 :]
            sub = pf(rest)
            if _is_zero(sub):
                continue
            t = a * sub
            acc.append(t if pos % 2 else -t)
        return _sum(acc, zero)

    return pf(tuple(range(n)))


def charpoly_coeffs(M: ExactMatrix) -> list:
    """Coefficients [c_0, ..., c_n] of det(u*I - M), by Faddeev-LeVerrier."""
    if not M.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = M.nrows
    zero = M.rows[0][0] * 0
    coeffs = [None] * (n + 1)
    coeffs[n] = zero + 1
    # N_k = M * (N_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(N_k)/k
    prev = None
    for k in range(1, n + 1):
        if prev is None:
            Nk = M
        else:
            c = coeffs[n - k + 1]
            shifted = ExactMatrix(
                [[prev.rows[i][j] + c if i == j else prev.rows[i][j] for j in range(n)] for i in range(n)]
            )
            Nk = M @ shifted
        tr = _sum([Nk.rows[i][i] for i in range(n)], zero)
        coeffs[n - k] = -tr / k if not isinstance(tr, int) else Fraction(-tr, k)
        prev = Nk
    return coeffs


def charpoly(M: ExactMatrix, var: str = "u") -> MPoly:
    """det(var*I - M) as an MPoly; the base ring is extended by ``var`` if needed."""
    coeffs = charpoly_coeffs(M)
    base = next((c.ring for c in coeffs if isinstance(c, MPoly)), None)
    if base is None:
        ring = PolyRing([var])
    else:
        ring = base if var in base else base.extend([var], [1])
    u = ring.gen(var)
    out = ring.zero()
    for k, c in enumerate(coeffs):
        cc = c.embed(ring) if isinstance(c, MPoly) else ring.const(c)
        out = out + cc * u**k
    return out


def elementary_symmetric(k: int, values: Sequence):
    """e_k of ``values``; e_0 = 1."""
    n = len(values)
    if k < 0 or k > n:
        raise ValueError(f"k={k} out of range 0..{n}")
    # e[j] after processing a prefix, standard recurrence
    one = values[0] * 0 + 1 if values else Fraction(1)
    e = [one] + [one * 0] * k
    for v in values:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e[k]
