"""
Phase space T*M of a supermanifold and its canonical (even) Poisson bracket.

Conventions: all partial derivatives are LEFT derivatives, and for each
conjugate pair (x^A, p_A)

    {F, G} = (-1)^(A F + A) dF/dp_A dG/dx^A  -  (-1)^(A F) dF/dx^A dG/dp_A

where A and F in the exponents are Grassmann parities.  The optional line
extension M x R adds an even pair (t, p) handled by the same formula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

import sympy

from .superpoly import (
    Algebra,
    AlgebraMismatchError,
    GradingError,
    Parity,
    SuperPoly,
    VarKind,
    left_derivative,
)

RESERVED = frozenset({"t", "p", "d", "exp"})
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
LINE_COORD = "t"
LINE_MOMENTUM = "p"


def momentum_name(coord: str) -> str:
    return f"p({coord})"


@dataclass(frozen=True)
class SuperManifold:
    """Coordinate chart of R^{n|m}: ``coords`` is an ordered tuple of (name, parity)."""

    coords: tuple

    def __post_init__(self):
        coords = tuple((n, Parity(p)) for n, p in self.coords)
        object.__setattr__(self, "coords", coords)
        names = [n for n, _ in coords]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate coordinate names: {names}")
        for n in names:
            if not _IDENT.match(n) or n in RESERVED:
                raise ValueError(f"invalid or reserved coordinate name {n!r}")

    @classmethod
    def from_names(cls, even: Sequence[str] = (), odd: Sequence[str] = ()):
        return cls(tuple((n, Parity.EVEN) for n in even) + tuple((n, Parity.ODD) for n in odd))

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.coords)

    @property
    def signature(self) -> tuple:
        n = sum(1 for _, p in self.coords if p is Parity.EVEN)
        return n, len(self.coords) - n

    def parity_of(self, name: str) -> Parity:
        return dict(self.coords)[name]


class PhaseSpace:
    """
    T*M (optionally times T*R).  Variable order: base coordinates, momenta in
    the same order, then t, p.
    """

    def __init__(self, manifold: SuperManifold, line: bool = False):
        self.manifold = manifold
        self.line = line
        specs = [(n, p, VarKind.BASE) for n, p in manifold.coords]
        specs += [(momentum_name(n), p, VarKind.MOMENTUM) for n, p in manifold.coords]
        k = len(manifold.coords)
        pairs = [(i, i + k) for i in range(k)]
        line_base = None
        if line:
            specs += [(LINE_COORD, Parity.EVEN, VarKind.LINE_BASE),
                      (LINE_MOMENTUM, Parity.EVEN, VarKind.LINE_MOMENTUM)]
            pairs.append((2 * k, 2 * k + 1))
            line_base = 2 * k
        self.algebra = Algebra.build(specs, pairs, line_base)

    def __eq__(self, other):
        return (isinstance(other, PhaseSpace) and self.manifold == other.manifold
                and self.line == other.line)

    def __hash__(self):
        return hash((self.manifold, self.line))

    def __repr__(self):
        return f"PhaseSpace({self.manifold.coords!r}, line={self.line})"

    def extend_line(self) -> "PhaseSpace":
        return PhaseSpace(self.manifold, line=True)

    def x(self, name: str) -> SuperPoly:
        return self.algebra.var(name)

    def p(self, name: str | None = None) -> SuperPoly:
        """Momentum conjugate to ``name``; with no name, the line momentum."""
        if name is None:
            return self.algebra.var(LINE_MOMENTUM)
        return self.algebra.var(momentum_name(name))

    def const(self, c) -> SuperPoly:
        return self.algebra.const(c)

    def exp(self, rate) -> SuperPoly:
        return self.algebra.exp(rate)

    def bracket(self, F: SuperPoly, G: SuperPoly) -> SuperPoly:
        if F.algebra != self.algebra or G.algebra != self.algebra:
            raise AlgebraMismatchError("bracket operands are not on this phase space")
        return canonical_poisson(F, G)


def canonical_poisson(F: SuperPoly, G: SuperPoly) -> SuperPoly:
    """Canonical Poisson bracket {F, G} on the phase space owning F and G."""
    alg = F.algebra
    if G.algebra != alg:
        raise AlgebraMismatchError("operands belong to different algebras")
    if not alg.pairs:
        raise AlgebraMismatchError("algebra carries no conjugate pairs")
    fp = int(F.parity)
    G.parity  # homogeneity check only
    out = alg.zero()
    if F.is_zero() or G.is_zero():
        return out
    used_f = F.variables_used()
    used_g = G.variables_used()
    fexp = any(m.rate for m in F.terms)
    gexp = any(m.rate for m in G.terms)
    vs = alg.variables
    for ix, ip in alg.pairs:
        a = int(vs[ix].parity)
        x_in_f = ix in used_f or (fexp and ix == alg.line_base)
        x_in_g = ix in used_g or (gexp and ix == alg.line_base)
        if ip in used_f and x_in_g:
            sign = -1 if (a * fp + a) % 2 else 1
            out = out + (left_derivative(F, vs[ip]) * left_derivative(G, vs[ix])).scale(sign)
        if x_in_f and ip in used_g:
            sign = -1 if (a * fp) % 2 else 1
            out = out - (left_derivative(F, vs[ix]) * left_derivative(G, vs[ip])).scale(sign)
    return out


@dataclass(frozen=True, eq=False)
class VectorField:
    """
    X = sum_A X^A d/dx^A with momentum-free coefficients written to the LEFT
    of the derivations.  Zero components are dropped.
    """

    space: PhaseSpace
    components: Mapping
    parity: Parity

    def __post_init__(self):
        object.__setattr__(self, "parity", Parity(self.parity))
        names = set(self.space.manifold.names)
        comps = {}
        for name, c in self.components.items():
            if name not in names:
                raise ValueError(f"{name!r} is not a base coordinate")
            if c.algebra != self.space.algebra:
                raise AlgebraMismatchError("component lives in a different algebra")
            if c.is_zero():
                continue
            if not c.is_momentum_free():
                raise ValueError(f"component along {name} contains momenta")
            want = self.parity + self.space.manifold.parity_of(name)
            if c.parity != want:
                raise GradingError(
                    f"component along {name} must be {want.name.lower()} "
                    f"for a {self.parity.name.lower()} field")
            comps[name] = c
        ordered = {n: comps[n] for n in self.space.manifold.names if n in comps}
        object.__setattr__(self, "components", MappingProxyType(ordered))

    @classmethod
    def zero(cls, space: PhaseSpace, parity=Parity.EVEN) -> "VectorField":
        return cls(space, {}, parity)

    @classmethod
    def from_symbol(cls, space: PhaseSpace, sym: SuperPoly, parity=None) -> "VectorField":
        """Read components off a fibre-linear function sum X^A p_A."""
        if sym.is_zero():
            return cls.zero(space, Parity.EVEN if parity is None else parity)
        alg = space.algebra
        by_momentum = {alg.variables[ip].index: alg.variables[ix].name
                       for ix, ip in alg.pairs
                       if alg.variables[ix].kind is VarKind.BASE}
        comps: dict = {}
        for m, c in sym:
            moms = [(pos, i) for pos, (i, _) in enumerate(m.factors) if i in by_momentum]
            if len(moms) != 1 or m.factors[moms[0][0]][1] != 1 or sym.monomial_fibre_degree(m) != 1:
                raise ValueError("symbol is not linear in the base momenta")
            pos, i = moms[0]
            # move p_A past the factors after it to the right end
            after = sum(1 for j, _ in m.factors[pos + 1:] if alg.is_odd_index(j))
            if alg.is_odd_index(i) and after % 2:
                c = -c
            rest = m.factors[:pos] + m.factors[pos + 1:]
            name = by_momentum[i]
            term = SuperPoly(alg, {type(m)(rest, m.rate): c})
            comps[name] = comps.get(name, alg.zero()) + term
        if parity is None:
            parity = sym.parity
        return cls(space, comps, parity)

    def __eq__(self, other):
        return (isinstance(other, VectorField) and self.space == other.space
                and dict(self.components) == dict(other.components)
                and (self.parity == other.parity or not self.components))

    def __add__(self, other: "VectorField") -> "VectorField":
        comps = dict(self.components)
        for n, c in other.components.items():
            comps[n] = comps.get(n, self.space.algebra.zero()) + c
        parity = self.parity if self.components else other.parity
        return VectorField(self.space, comps, parity)

    def scale(self, c) -> "VectorField":
        return VectorField(self.space, {n: v.scale(c) for n, v in self.components.items()},
                           self.parity)

    def is_zero(self) -> bool:
        return not self.components

    def __call__(self, f: SuperPoly) -> SuperPoly:
        """Action on functions: sum_A X^A d_A f."""
        out = self.space.algebra.zero()
        for n, c in self.components.items():
            out = out + c * f.derivative(n)
        return out

    def embed(self, space: PhaseSpace) -> "VectorField":
        return VectorField(space, {n: c.embed(space.algebra) for n, c in self.components.items()},
                           self.parity)

    def __repr__(self):
        from .fileformat import print_vector_field

        return f"VectorField({print_vector_field(self)!r})"


def symbol(X: VectorField) -> SuperPoly:
    """The replacement d/dx^A -> p_A, giving sum X^A p_A."""
    out = X.space.algebra.zero()
    for n, c in X.components.items():
        out = out + c * X.space.p(n)
    return out


def vf_commutator(X: VectorField, Y: VectorField) -> VectorField:
    if X.space != Y.space:
        raise AlgebraMismatchError("vector fields live on different manifolds")
    br = canonical_poisson(symbol(X), symbol(Y))
    parity = X.parity + Y.parity
    if br.is_zero():
        return VectorField.zero(X.space, parity)
    assert br.fibre_degrees() == {1}, "commutator symbol must be fibre-linear"
    return VectorField.from_symbol(X.space, br, parity)


def lie_derivative(X: VectorField, F: SuperPoly) -> SuperPoly:
    """L_X F, defined as the Hamiltonian action of the symbol of X."""
    sym = symbol(X).embed(F.algebra) if F.algebra != X.space.algebra else symbol(X)
    return canonical_poisson(sym, F)


@dataclass(frozen=True)
class LinearChange:
    """
    Invertible linear change of base coordinates, new = matrix @ old, given
    over the manifold's coordinate order.  Must not mix parities.
    """

    manifold: SuperManifold
    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        k = len(self.manifold.coords)
        if len(rows) != k or any(len(r) != k for r in rows):
            raise ValueError(f"matrix must be {k}x{k}")
        pars = [p for _, p in self.manifold.coords]
        for i in range(k):
            for j in range(k):
                if pars[i] != pars[j] and rows[i][j] != 0:
                    raise ValueError("linear change mixes even and odd coordinates")

    def inverse(self) -> tuple:
        m = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row]
                          for row in self.matrix])
        if m.det() == 0:
            raise ValueError("linear change is singular")
        inv = m.inv()
        k = len(self.matrix)
        return tuple(tuple(Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(k))
                     for i in range(k))


def cotangent_lift(change: LinearChange, F: SuperPoly) -> SuperPoly:
    """
    F rewritten in the lifted coordinates (new x = A x, new p = (A^-1)^T p).
    The new coordinates reuse the old variable names.
    """
    names = change.manifold.names
    alg = F.algebra
    A = change.matrix
    inv = change.inverse()
    k = len(names)
    images = {}
    for b in range(k):
        x_img = alg.zero()
        p_img = alg.zero()
        for c in range(k):
            if inv[b][c]:
                x_img = x_img + alg.var(names[c]).scale(inv[b][c])
            if A[c][b]:
                p_img = p_img + alg.var(momentum_name(names[c])).scale(A[c][b])
        images[names[b]] = x_img
        images[momentum_name(names[b])] = p_img
    return F.substitute(images)
