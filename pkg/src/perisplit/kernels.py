"""Hot kernel: rank of an integer matrix modulo a word-size prime.

Two interchangeable implementations: a numba ``@njit`` loop and a vectorized
numpy one.  ``PERISPLIT_KERNEL=numpy`` forces the numpy path; so does a
missing numba.  Both return identical results on identical input.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def _rank_mod_p_numpy(a: np.ndarray, p: int) -> int:
    a = a.copy()
    m, n = a.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        a[rank, col:] = (a[rank, col:] * inv) % p
        below = rank + 1 + np.nonzero(a[rank + 1 :, col])[0]
        if below.size:
            f = a[below, col][:, None]
            a[np.ix_(below, np.arange(col, n))] = (a[below, col:] - f * a[rank, col:]) % p
        rank += 1
    return rank


if HAVE_NUMBA:

    @njit(cache=True)
    def _modinv(x, p):
        # Fermat inverse by square-and-multiply; all products stay below 2**62
        result = 1
        base = x % p
        e = p - 2
        while e > 0:
            if e & 1:
                result = (result * base) % p
            base = (base * base) % p
            e >>= 1
        return result

    @njit(cache=True)
    def _rank_mod_p_numba_inplace(a, p):
        m, n = a.shape
        rank = 0
        for col in range(n):
            if rank == m:
                break
            piv = -1
            for i in range(rank, m):
                if a[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(col, n):
                    t = a[rank, j]
                    a[rank, j] = a[piv, j]
                    a[piv, j] = t
            inv = _modinv(a[rank, col], p)
            for j in range(col, n):
                a[rank, j] = (a[rank, j] * inv) % p
            for i in range(rank + 1, m):
                f = a[i, col]
                if f != 0:
                    for j in range(col, n):
                        v = (a[i, j] - f * a[rank, j]) % p
                        if v < 0:
                            v += p
                        a[i, j] = v
            rank += 1
        return rank

    def _rank_mod_p_numba(a: np.ndarray, p: int) -> int:
        return int(_rank_mod_p_numba_inplace(a.copy(), np.int64(p)))


def backend() -> str:
    """Name of the active rank backend."""
    choice = os.environ.get("PERISPLIT_KERNEL", "").strip().lower()
    if choice == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


def rank_mod_p(a: np.ndarray, p: int, which: str | None = None) -> int:
    """Rank of ``a`` (int64 entries already reduced into [0, p)) over GF(p)."""
    if a.size == 0:
        return 0
    which = which or backend()
    if which == "numba":
        return _rank_mod_p_numba(a, p)
    return _rank_mod_p_numpy(a, p)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in (2, 3, 5, 7, 11, 13, 17):
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below(bound: int, count: int) -> list[int]:
    out = []
    c = bound - 1
    while len(out) < count:
        if _is_prime(c):
            out.append(c)
        c -= 1
    return out


PRIMES = _primes_below(2**31, 64)
