"""Weighted monomial orders, exposed as sort keys on exponent tuples."""
from __future__ import annotations

from typing import Iterable, Sequence


class MonomialOrder:
    """A monomial order given by a key function (larger key = larger monomial).

    ``tag`` is one of ``grevlex``, ``grlex``, ``lex`` or ``elim``; the
    ``elim`` order first compares weighted degree in the variables listed in
    ``block`` and breaks ties by weighted grevlex, so it eliminates ``block``.
    """

    def __init__(self, tag: str, weights: Sequence[int], block: Iterable[int] = ()):
        if tag not in ("grevlex", "grlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {tag!r}")
        self.tag = tag
        self.weights = tuple(weights)
        self.block = tuple(sorted(set(block)))
        if tag == "elim" and not self.block:
            raise ValueError("elimination order needs a nonempty block")
        self._cache: dict = {}
        w = self.weights
        blk = self.block
        if tag == "lex":
            self._raw = lambda e: e
        elif tag == "grlex":
            self._raw = lambda e: (sum(a * b for a, b in zip(e, w)), e)
        elif tag == "grevlex":
            self._raw = lambda e: (sum(a * b for a, b in zip(e, w)), tuple(-x for x in reversed(e)))
        else:
            self._raw = lambda e: (
                sum(e[i] * max(w[i], 1) for i in blk),
                sum(a * b for a, b in zip(e, w)),
                tuple(-x for x in reversed(e)),
            )

    def key(self, exp: tuple):
        k = self._cache.get(exp)
        if k is None:
            k = self._raw(exp)
            if len(self._cache) < 2_000_000:
                self._cache[exp] = k
        return k

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and (self.tag, self.weights, self.block) == (other.tag, other.weights, other.block)
        )

    def __hash__(self):
        return hash((self.tag, self.weights, self.block))

    def __repr__(self):
        extra = f", block={self.block}" if self.block else ""
        return f"MonomialOrder({self.tag!r}{extra})"
