"""Self-check runner behind ``perisplit verify``.

Each check returns a dict with ``name``, ``ok``, ``anchor`` (the identity it
tests) and ``detail``.  Golden Betti tables ship as package data.
"""
from __future__ import annotations

import json
import time
from importlib import resources
from math import comb, factorial
from pathlib import Path
from typing import Callable

from . import detvar, jpw, splitrings
from .errors import BudgetExceeded, InvariantViolation
from .groebner import BettiTable, euler_check, groebner_basis, koszul_tor

GOLDEN_PAIRS = ((4, 3), (5, 4), (3, 1), (4, 1))
ORACLE_CUTOFFS = {(4, 3): (2, 4), (5, 4): (3, 6), (3, 1): (2, 6), (4, 1): (2, 6)}


def golden_path(n: int, r: int, directory: str | Path | None = None):
    name = f"betti_n{n}_r{r}.json"
    if directory is not None:
        return Path(directory) / name
    return resources.files("perisplit").joinpath("data", "golden", name)


def load_golden(n: int, r: int, directory: str | Path | None = None) -> BettiTable:
    with golden_path(n, r, directory).open("r", encoding="utf-8") as fh:
        return BettiTable.from_json(json.load(fh))


def oracle_ideal(n: int, r: int):
    """The ideal whose Tor the closed form predicts, and the Koszul variables."""
    if 2 * r > n:
        return detvar.z_ideal(n, r, ambient="essential"), None
    z = detvar.z_prime_ideal(n, r)
    return z.ideal, [v for v in z.ideal.ring.names if v.startswith("g")]


def oracle_table(n: int, r: int, max_i: int, max_j: int, jobs: int = 1, seed: int = 20240101):
    I, kv = oracle_ideal(n, r)
    gb = groebner_basis(I)
    table = koszul_tor(I, max_i, max_j, koszul_vars=kv, jobs=jobs, seed=seed, gb=gb)
    bad, checked = euler_check(table, I, kv, gb=gb)
    return table, bad, checked


def _check(name: str, anchor: str, fn: Callable[[], tuple[bool, object]]) -> dict:
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except InvariantViolation as exc:
        ok, detail = False, f"invariant violation: {exc}"
    except BudgetExceeded as exc:
        ok, detail = False, f"budget exceeded: {exc}"
    return {"name": name, "ok": bool(ok), "anchor": anchor, "detail": detail,
            "seconds": round(time.perf_counter() - t, 3)}


def _ranks(max_n: int):
    bad = []
    for n in range(1, max_n + 1):
        todo = [("B-signed", None), ("D", None)] + [(k, p) for k in ("B-fact", "D-fact") for p in range(n + 1)]
        for kind, p in todo:
            got = splitrings.universal_ring(kind, n, p).fiber_dimension()
            want = splitrings.expected_rank(kind, n, p)
            if got != want:
                bad.append({"kind": kind, "n": n, "p": p, "got": got, "want": want})
    return not bad, bad or f"all kinds, n <= {max_n}"


def _discriminants(max_n: int):
    bad = []
    for n in range(1, max_n + 1):
        fB = splitrings.universal_poly(n, "B")
        D, Dt = splitrings.discriminant(fB)
        if D != Dt * fB.coefficient(n) * 4**n:
            bad.append(("Delta", n))
        fD = splitrings.universal_poly(n, "D")
        D, _ = splitrings.discriminant(fD)
        if fD.alpha * splitrings.reduced_discriminant(fD) != D:
            bad.append(("alpha Delta-bar", n))
    from .exactcore.poly import PolyRing

    ring = PolyRing(["b", "c"], [2, 4])
    b, c = ring.gens()
    quart = splitrings.EvenMonicPoly(splitrings.IdealPresentation(ring, []), [b, c])
    Dq, Dtq = splitrings.discriminant(quart)
    if Dtq * c != (b * b - c * 4) * c:
        bad.append(("quartic", 2))
    return not bad, bad or f"n <= {max_n} and the quartic family"


def _probes():
    out = {}
    ok = True
    for fam, lams in (("B-case-V0", (2, 3)), ("B-case-VA", (2, 3)), ("D-case-V0", (2, 3)), ("D-case-detg", (2, 3))):
        res = detvar.epsilon_probe(fam, lams)
        d = res.discriminant
        ok &= d.value == 0 and d.slope != 0
        if res.quartic is not None:
            ok &= res.quartic.value == 0 and res.quartic.slope == 16
        out[fam] = str(d)
    return ok, out


def _phi_chi(seeds: int):
    bad = []
    for n, r, eig in ((3, 1, (5,)), (4, 1, (2,)), (4, 2, (2, 3)), (5, 2, (1, 4))):
        for s in range(seeds):
            ok, rep = detvar.verify_phi_chi(detvar.sample_Z_point(n, r, eig, seed=s))
            if not ok:
                bad.append({"n": n, "r": r, "seed": s, **rep})
    for n, r, eig in ((3, 2, (3,)), (4, 3, (2,)), (5, 3, (2, 3))):
        for s in range(seeds):
            p = detvar.sample_Z_point(n, r, eig, seed=s)
            detvar.chi_bar_coeffs(p.f, p.g, n, r)
    return not bad, bad or f"{seeds} seeds per pair"


def _betti(pairs, golden_dir, with_oracle: bool, jobs: int):
    diffs = {}
    for n, r in pairs:
        mi, mj = ORACLE_CUTOFFS[(n, r)]
        closed = jpw.betti_table_jpw(n, r, mi, mj)
        gold = load_golden(n, r, golden_dir).restrict(mi, mj)
        d = closed.diff(gold)
        if d:
            diffs[f"golden n={n} r={r}"] = d
        if with_oracle:
            table, bad, _ = oracle_table(n, r, mi, mj, jobs)
            d = closed.diff(table)
            if d:
                diffs[f"oracle n={n} r={r}"] = d
            if bad:
                diffs[f"euler n={n} r={r}"] = bad
    return not diffs, diffs or "no differences"


def _factorization(max_n: int):
    bad = [(k, n, p) for k in "BD" for n in range(1, max_n + 1) for p in range(n + 1)
           if not splitrings.factorization_compatible(k, n, p)]
    return not bad, bad or f"n <= {max_n}, all (p, q)"


def _cohomology(max_k: int):
    bad = []
    for k in range(1, max_k + 1):
        poly = splitrings.cohomology_specialize("B-fact", k, k, weights="algebraic").as_polynomial()
        want = [1]
        for i in range(1, k + 1):
            want = [x + (want[t - i] if t >= i else 0) for t, x in enumerate(want + [0] * i)]
        if poly != want:
            bad.append(("B-fact", k))
        if sum(splitrings.cohomology_specialize("B-signed", k).as_polynomial()) != 2**k * factorial(k):
            bad.append(("B-signed", k))
        if sum(splitrings.cohomology_specialize("D", k).as_polynomial()) != 2 ** (k - 1) * factorial(k):
            bad.append(("D", k))
    return not bad, bad or f"k <= {max_k}"


def _multfree(pairs):
    bad = {}
    for n, r in pairs:
        ok, v = jpw.multiplicity_free_check(n, r, 6)
        if not ok:
            bad[f"{n},{r}"] = v
    return not bad, bad or "no repeats"


def _boundary(max_n: int):
    bad = []
    for n in range(1, max_n + 1):
        for r, top in ((n, n * (n - 1) // 2), (0, n * (n + 1) // 2)):
            if jpw.boundary_dims(n, r, top) != [comb(top, j) for j in range(top + 1)]:
                bad.append((n, r))
    return not bad, bad or f"n <= {max_n}"


def verify_all(profile: str = "quick", golden_dir: str | Path | None = None, jobs: int = 1) -> dict:
    if profile not in ("quick", "full"):
        raise ValueError("profile must be 'quick' or 'full'")
    full = profile == "full"
    checks = [
        _check("ring ranks", "universal fiber ranks 2^n n!, 2^(n-1) n!, 2^p C(n,p)", lambda: _ranks(4 if full else 3)),
        _check("discriminants", "Delta = 4^n a_2n Delta~, alpha Delta-bar = Delta", lambda: _discriminants(3)),
        _check("epsilon probes", "discriminant vanishes to first order, slope 16 for the quartic", _probes),
        _check("phi/chi-bar", "Phi^2 = +-chi-bar(0)", lambda: _phi_chi(100 if full else 10)),
        _check("betti tables", "closed-form Tor equals Koszul homology",
               lambda: _betti(GOLDEN_PAIRS, golden_dir, True, jobs)),
        _check("factorization", "splitting g then h equals splitting f", lambda: _factorization(3 if full else 2)),
        _check("cohomology", "f = u^2n specialization is a Poincare polynomial", lambda: _cohomology(4 if full else 3)),
        _check("multiplicity-free", "L_k multiplicity-free, consecutive L~_k disjoint", lambda: _multfree(GOLDEN_PAIRS)),
        _check("boundary", "exterior algebras on Lambda^2 V and Sym^2 V*", lambda: _boundary(5)),
    ]
    return {"profile": profile, "ok": all(c["ok"] for c in checks), "checks": checks}
