"""Graded Tor_i(S/I, Q)_j by Koszul homology.

The module ``M = T/I`` (T a weighted polynomial ring) is viewed over the
subring S generated by ``koszul_vars``.  Each internal degree j gives a
finite complex ``... -> Lambda^i(S_1) (x) M_{j-i} -> ...`` whose homology is
Tor_i(M, Q)_j.  Bases of the graded pieces of M are standard monomials.

When M is Cohen-Macaulay the computation is first cut down: generic linear
forms in the weight-1 Koszul variables are substituted away.  The cut is
accepted only after it is certified: the forms must leave a finite-length
quotient with the same Hilbert numerator, which for a system of parameters
is equivalent to being a regular sequence, and Tor does not change.
"""
from __future__ import annotations

import csv
import io
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from ..errors import PerisplitError
from ..exactcore import linalg
from .ideal import GroebnerBasis, IdealPresentation, groebner_basis, monomials_of_degree


@dataclass
class BettiTable:
    entries: dict[tuple[int, int], int]
    cutoff_i: int
    cutoff_j: int
    labels: dict[tuple[int, int], list[str]] = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {
            k: v for k, v in sorted(self.entries.items()) if v and k[0] <= self.cutoff_i and k[1] <= self.cutoff_j
        }
        if any(v < 0 for v in self.entries.values()):
            raise ValueError("negative Betti number")
        self.labels = {k: list(v) for k, v in sorted(self.labels.items()) if k in self.entries}

    def __getitem__(self, ij) -> int:
        return self.entries.get(tuple(ij), 0)

    def restrict(self, max_i: int, max_j: int) -> "BettiTable":
        return BettiTable(dict(self.entries), min(max_i, self.cutoff_i), min(max_j, self.cutoff_j), dict(self.labels))

    def euler(self, j: int) -> int:
        return sum((-1) ** i * v for (i, jj), v in self.entries.items() if jj == j)

    def diff(self, other: "BettiTable") -> list[dict]:
        """Cells where the dimensions disagree, within the common cutoffs."""
        ci = min(self.cutoff_i, other.cutoff_i)
        cj = min(self.cutoff_j, other.cutoff_j)
        keys = sorted(set(self.entries) | set(other.entries))
        out = []
        for i, j in keys:
            if i <= ci and j <= cj and self[i, j] != other[i, j]:
                out.append({"i": i, "j": j, "left": self[i, j], "right": other[i, j]})
        return out

    def to_json(self) -> dict:
        return {
            "entries": [
                {"i": i, "j": j, "dim": d, "labels": list(self.labels.get((i, j), []))}
                for (i, j), d in self.entries.items()
            ],
            "cutoff_i": self.cutoff_i,
            "cutoff_j": self.cutoff_j,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, doc: dict) -> "BettiTable":
        entries = {}
        labels = {}
        for e in doc["entries"]:
            key = (int(e["i"]), int(e["j"]))
            entries[key] = int(e["dim"])
            if e.get("labels"):
                labels[key] = list(e["labels"])
        return cls(entries, int(doc["cutoff_i"]), int(doc["cutoff_j"]), labels)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "dim", "labels"])
        for (i, j), d in self.entries.items():
            w.writerow([i, j, d, ";".join(self.labels.get((i, j), []))])
        return buf.getvalue()


@dataclass
class TorReport:
    """Diagnostics of one koszul_tor run."""

    method: str = "direct"
    attempts: int = 0
    killed: list[str] = field(default_factory=list)
    numerator: tuple[int, ...] = ()


class _Strands:
    """Graded pieces of M and multiplication by Koszul variables."""

    def __init__(self, gb: GroebnerBasis, kvars: Sequence[int]):
        self.gb = gb
        self.ring = gb.ring
        self.kvars = list(kvars)
        self._basis: dict[int, list[tuple]] = {}
        self._index: dict[int, dict[tuple, int]] = {}
        self._nf: dict = {}

    def basis(self, d: int) -> list[tuple]:
        if d < 0:
            return []
        if d not in self._basis:
            b = monomials_of_degree(self.ring.weights, d, self.gb.is_standard)
            self._basis[d] = b
            self._index[d] = {e: k for k, e in enumerate(b)}
        return self._basis[d]

    def times(self, var: int, mono: tuple) -> dict:
        key = (var, mono)
        r = self._nf.get(key)
        if r is None:
            e = mono[:var] + (mono[var] + 1,) + mono[var + 1:]
            r = {e: 1} if self.gb.is_standard(e) else self.gb.reduce_terms({e: 1})
            self._nf[key] = r
        return r

    def differential(self, i: int, j: int) -> tuple[list[dict], int]:
        """Sparse columns of d: K_{i,j} -> K_{i-1,j}, and the target dimension."""
        w = self.ring.weights
        tgt_index = {}
        for T in combinations(range(len(self.kvars)), i - 1):
            d = j - sum(w[self.kvars[t]] for t in T)
            for m in self.basis(d):
                tgt_index[(T, m)] = len(tgt_index)
        cols = []
        if not tgt_index:
            return cols, 0
        for T in combinations(range(len(self.kvars)), i):
            d = j - sum(w[self.kvars[t]] for t in T)
            for m in self.basis(d):
                col: dict = {}
                for pos, t in enumerate(T):
                    rest = T[:pos] + T[pos + 1:]
                    sign = -1 if pos % 2 else 1
                    for e, c in self.times(self.kvars[t], m).items():
                        k = tgt_index[(rest, e)]
                        col[k] = col.get(k, 0) + sign * c
                cols.append(col)
        return cols, len(tgt_index)

    def dim_chain(self, i: int, j: int) -> int:
        w = self.ring.weights
        total = 0
        for T in combinations(range(len(self.kvars)), i):
            total += len(self.basis(j - sum(w[self.kvars[t]] for t in T)))
        return total


def _rank(job) -> int:
    cols, nrows = job
    return linalg.rank_sparse_columns(cols, nrows) if cols and nrows else 0


def tor_from_basis(gb: GroebnerBasis, kvars: Sequence[int], max_i: int, max_j: int, jobs: int = 1) -> BettiTable:
    """Betti numbers of T/I over the polynomial ring on ``kvars`` (indices into T)."""
    strands = _Strands(gb, kvars)
    nk = len(kvars)
    top = min(max_i + 1, nk)
    keys = [(i, j) for j in range(max_j + 1) for i in range(1, top + 1)]
    ranks: dict = {}
    if jobs > 1:
        # one internal degree at a time keeps memory bounded by a single strand
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for j in range(max_j + 1):
                ks = [k for k in keys if k[1] == j]
                mats = [strands.differential(i, jj) for i, jj in ks]
                ranks.update(zip(ks, ex.map(_rank, mats)))
    else:
        for k in keys:
            ranks[k] = _rank(strands.differential(*k))
    entries = {}
    for j in range(max_j + 1):
        for i in range(0, min(max_i, nk) + 1):
            val = strands.dim_chain(i, j) - ranks.get((i, j), 0) - ranks.get((i + 1, j), 0)
            if val:
                entries[(i, j)] = val
    return BettiTable(entries, max_i, max_j)


def _reduce_by_generic_forms(I: IdealPresentation, gb: GroebnerBasis, kvars: list[str], rng: random.Random):
    """Substitute generic linear forms for some weight-1 Koszul variables.

    Returns (reduced ideal, its GB, killed variable names) or None if the
    substitution could not be certified as cutting by a regular sequence.
    """
    hs = gb.hilbert_series()
    dim = hs.krull_dimension()
    if dim <= 0:
        return None
    ring = I.ring
    lin = [v for v in kvars if ring.weight_of(v) == 1]
    if len(lin) < dim:
        return None
    killed = lin[:dim]
    remaining = lin[dim:]
    sub = ring.drop(killed)
    mapping = {}
    for v in killed:
        form = sub.zero()
        for u in remaining:
            form = form + sub.gen(u) * rng.randint(-9, 9)
        mapping[v] = form
    gens = [g.subs(mapping, sub) for g in I.generators]
    J = IdealPresentation(sub, gens)
    gbJ = groebner_basis(J)
    hsJ = gbJ.hilbert_series()
    if hsJ.krull_dimension() != 0 or tuple(hsJ.numerator) != tuple(hs.numerator):
        return None
    return J, gbJ, killed


def koszul_tor(I: IdealPresentation, max_i: int, max_j: int, koszul_vars: Iterable[str] | None = None,
               method: str = "auto", jobs: int = 1, seed: int = 20240101, attempts: int = 3,
               report: TorReport | None = None, gb: GroebnerBasis | None = None) -> BettiTable:
    """dim Tor_i^S(T/I, Q)_j for i <= max_i, j <= max_j.

    ``koszul_vars`` selects the variables generating S (default: all of T).
    ``method`` is ``auto`` (certified reduction, falling back to ``direct``),
    ``reduce`` (reduction or error) or ``direct``.
    """
    if not I.graded:
        raise PerisplitError("koszul_tor needs a weight-homogeneous ideal")
    ring = I.ring
    kvars = list(ring.names) if koszul_vars is None else list(koszul_vars)
    for v in kvars:
        if ring.weight_of(v) < 1:
            raise PerisplitError("Koszul variables need positive weights")
    if any(w < 1 for w in ring.weights):
        raise PerisplitError("all ambient weights must be positive")
    if method not in ("auto", "reduce", "direct"):
        raise ValueError(f"unknown method {method!r}")
    report = report if report is not None else TorReport()
    gb = gb or groebner_basis(I)
    report.numerator = tuple(gb.hilbert_series().numerator)
    if method in ("auto", "reduce"):
        rng = random.Random(seed)
        for attempt in range(attempts):
            report.attempts = attempt + 1
            cut = _reduce_by_generic_forms(I, gb, kvars, rng)
            if cut is not None:
                J, gbJ, killed = cut
                report.method = "reduced"
                report.killed = list(killed)
                rest = [J.ring.index(v) for v in kvars if v not in killed]
                return tor_from_basis(gbJ, rest, max_i, max_j, jobs)
        if method == "reduce":
            raise PerisplitError("could not certify a regular sequence of linear forms")
    report.method = "direct"
    return tor_from_basis(gb, [ring.index(v) for v in kvars], max_i, max_j, jobs)


def euler_check(table: BettiTable, I: IdealPresentation, koszul_vars: Iterable[str] | None = None,
                gb: GroebnerBasis | None = None) -> tuple[list[dict], list[int]]:
    """Compare sum_i (-1)^i Tor_{i,j} with [t^j] HS(T/I) * prod_S (1 - t^w).

    Returns (mismatches, checked degrees).  A degree j is checkable when every
    homological degree that can contribute to it, i <= min(j, #S), lies
    within the table's cutoff.
    """
    ring = I.ring
    kvars = list(ring.names) if koszul_vars is None else list(koszul_vars)
    gb = gb or groebner_basis(I)
    series = gb.hilbert_series().expand(table.cutoff_j)
    for v in kvars:
        w = ring.weight_of(v)
        series = [series[k] - (series[k - w] if k >= w else 0) for k in range(len(series))]
    bad, checked = [], []
    for j in range(table.cutoff_j + 1):
        if min(j, len(kvars)) > table.cutoff_i:
            continue
        checked.append(j)
        if series[j] != table.euler(j):
            bad.append({"j": j, "betti": table.euler(j), "hilbert": series[j]})
    return bad, checked
