"""
Independent reference implementation of the canonical bracket.

Shares nothing with the engine's arithmetic: a polynomial is a dict from
(word, rate) to Fraction where a word is a tuple of variable names kept in
ALPHABETICAL order (a different total order from the engine), normalized by
explicit adjacent transpositions.  Derivatives strip occurrences one at a
time, so the power rule falls out of repetition rather than exponents.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement


class Oracle:
    def __init__(self, parities: dict, pairs: list, line: str | None = None):
        self.par = dict(parities)  # name -> 0/1
        self.pairs = list(pairs)  # (coordinate, momentum) names
        self.line = line

    # -- normal form ------------------------------------------------------

    def normalize(self, word):
        w = list(word)
        sign = 1
        changed = True
        while changed:
            changed = False
            for i in range(len(w) - 1):
                if w[i] > w[i + 1]:
                    if self.par[w[i]] and self.par[w[i + 1]]:
                        sign = -sign
                    w[i], w[i + 1] = w[i + 1], w[i]
                    changed = True
        for i in range(len(w) - 1):
            if w[i] == w[i + 1] and self.par[w[i]]:
                return 0, ()
        return sign, tuple(w)

    def poly(self, items):
        out = {}
        for (word, rate), c in items:
            s, w = self.normalize(word)
            if s:
                key = (w, Fraction(rate))
                out[key] = out.get(key, 0) + s * Fraction(c)
        return {k: v for k, v in out.items() if v != 0}

    def add(self, *ps):
        out = {}
        for p in ps:
            for k, v in p.items():
                out[k] = out.get(k, 0) + v
        return {k: v for k, v in out.items() if v != 0}

    def scale(self, p, c):
        return {k: c * v for k, v in p.items() if c * v != 0}

    def mul(self, a, b):
        items = []
        for (w1, r1), c1 in a.items():
            for (w2, r2), c2 in b.items():
                items.append(((w1 + w2, r1 + r2), c1 * c2))
        return self.poly(items)

    def word_parity(self, word):
        return sum(self.par[v] for v in word) % 2

    def parity(self, p):
        ps = {self.word_parity(w) for (w, _) in p}
        assert len(ps) <= 1, "inhomogeneous"
        return ps.pop() if ps else 0

    def d(self, p, v):
        """Left derivative: anticommute each occurrence of v to the front."""
        items = []
        for (w, r), c in p.items():
            if v == self.line and r:
                items.append(((w, r), c * r))
            for k, u in enumerate(w):
                if u != v:
                    continue
                sign = 1
                if self.par[v]:
                    if sum(self.par[x] for x in w[:k]) % 2:
                        sign = -1
                items.append(((w[:k] + w[k + 1:], r), sign * c))
        return self.poly(items)

    def bracket(self, F, G):
        f = self.parity(F)
        out = {}
        for x, px in self.pairs:
            a = self.par[x]
            t1 = self.scale(self.mul(self.d(F, px), self.d(G, x)), (-1) ** (a * f + a))
            t2 = self.scale(self.mul(self.d(F, x), self.d(G, px)), -((-1) ** (a * f)))
            out = self.add(out, t1, t2)
        return out

    def basis(self, max_degree):
        names = sorted(self.par)
        out = []
        for deg in range(max_degree + 1):
            for word in combinations_with_replacement(names, deg):
                s, w = self.normalize(word)
                if s:
                    out.append(self.poly([((w, 0), 1)]))
        return out


def from_engine(oracle: Oracle, f):
    """Read an engine SuperPoly term by term into oracle form."""
    names = [v.name for v in f.algebra.variables]
    items = []
    for m, c in f.terms.items():
        word = tuple(names[i] for i, e in m.factors for _ in range(e))
        items.append(((word, m.rate), c))
    return oracle.poly(items)


def to_engine(alg, p):
    out = alg.zero()
    for (word, rate), c in p.items():
        term = alg.exp(rate) * c if rate else alg.const(c)
        for v in word:
            term = term * alg.var(v)
        out = out + term
    return out


def for_space(space) -> Oracle:
    alg = space.algebra
    par = {v.name: int(v.parity) for v in alg.variables}
    pairs = [(alg.variables[i].name, alg.variables[j].name) for i, j in alg.pairs]
    line = alg.variables[alg.line_base].name if alg.line_base is not None else None
    return Oracle(par, pairs, line)
