"""
Exact supercommutative polynomial arithmetic.

Polynomials live in a fixed :class:`Algebra`, a totally ordered list of
Z2-graded generators.  A monomial is stored in canonical (ascending) order
with the Koszul reordering sign already folded into its coefficient, so two
polynomials are equal iff their term tables are equal.

The algebra may carry a distinguished even "line" variable ``t``; monomials
then also carry a formal exponential ``exp(rate*t)`` with rational rate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

Scalar = Union[int, Fraction]


class AlgebraMismatchError(ValueError):
    pass


class GradingError(ValueError):
    """Raised when an operation needs a homogeneous input but gets a sum."""


class Parity(enum.IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__

    @classmethod
    def parse(cls, text: str) -> "Parity":
        key = text.strip().lower()
        if key in ("even", "0"):
            return cls.EVEN
        if key in ("odd", "1"):
            return cls.ODD
        raise ValueError(f"unknown parity {text!r}")


class VarKind(enum.Enum):
    BASE = "base"
    MOMENTUM = "momentum"
    LINE_BASE = "line-base"
    LINE_MOMENTUM = "line-momentum"
    EXPONENTIAL = "exponential"


FIBRE_KINDS = (VarKind.MOMENTUM, VarKind.LINE_MOMENTUM)


@dataclass(frozen=True)
class Variable:
    name: str
    parity: Parity
    kind: VarKind
    index: int

    @property
    def is_odd(self) -> bool:
        return self.parity is Parity.ODD


class Monomial(NamedTuple):
    # ((variable index, exponent), ...) strictly ascending by index
    factors: tuple
    rate: Fraction = Fraction(0)


ONE = Monomial((), Fraction(0))


@dataclass(frozen=True, eq=False)
class Algebra:
    """Ordered generator set.  ``pairs`` lists (coordinate, momentum) index pairs."""

    variables: tuple
    pairs: tuple = ()
    line_base: int | None = None

    def __post_init__(self):
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for i, v in enumerate(self.variables):
            if v.index != i:
                raise ValueError("variable indices must match their position")
        object.__setattr__(self, "_by_name", {v.name: v for v in self.variables})
        object.__setattr__(self, "_odd", tuple(v.is_odd for v in self.variables))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.variables, self.pairs, self.line_base) == (
            other.variables, other.pairs, other.line_base)

    def __hash__(self):
        return hash((self.variables, self.pairs, self.line_base))

    @classmethod
    def build(cls, specs: Iterable, pairs=(), line_base=None) -> "Algebra":
        """Build from ``(name, parity, kind)`` triples, indices in given order."""
        variables = tuple(
            Variable(name, Parity(parity), kind, i)
            for i, (name, parity, kind) in enumerate(specs)
        )
        return cls(variables, tuple(pairs), line_base)

    def __contains__(self, name) -> bool:
        return name in self._by_name

    def variable(self, name: str) -> Variable:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def is_odd_index(self, i: int) -> bool:
        return self._odd[i]

    def zero(self) -> "SuperPoly":
        return SuperPoly(self, {})

    def one(self) -> "SuperPoly":
        return self.const(1)

    def const(self, c: Scalar) -> "SuperPoly":
        return SuperPoly(self, {ONE: Fraction(c)})

    def var(self, name: str) -> "SuperPoly":
        v = self.variable(name)
        return SuperPoly(self, {Monomial(((v.index, 1),), Fraction(0)): Fraction(1)})

    def exp(self, rate: Scalar) -> "SuperPoly":
        """The formal generator exp(rate*t); requires a line variable."""
        if self.line_base is None and Fraction(rate) != 0:
            raise ValueError("exponential generators need a line coordinate t")
        return SuperPoly(self, {Monomial((), Fraction(rate)): Fraction(1)})

    def monomial(self, names: Iterable[str], coeff: Scalar = 1) -> "SuperPoly":
        """Ordered product of the named variables (Koszul signs applied)."""
        out = self.const(coeff)
        for n in names:
            out = out * self.var(n)
        return out


def _odd_indices(alg: Algebra, factors) -> list:
    return [i for i, _ in factors if alg.is_odd_index(i)]


def _mul_monomials(alg: Algebra, m1: Monomial, m2: Monomial):
    """Return (sign, monomial) for m1*m2 or None if an odd factor repeats."""
    merged = dict(m1.factors)
    for i, e in m2.factors:
        if i in merged:
            if alg.is_odd_index(i):
                return None
            merged[i] += e
        else:
            merged[i] = e
    odd1 = _odd_indices(alg, m1.factors)
    flips = 0
    if odd1:
        for j in _odd_indices(alg, m2.factors):
            flips += sum(1 for i in odd1 if i > j)
    sign = -1 if flips % 2 else 1
    return sign, Monomial(tuple(sorted(merged.items())), m1.rate + m2.rate)


class SuperPoly:
    """Finite rational combination of canonical monomials in one algebra."""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: Algebra, terms: Mapping | None = None):
        self.algebra = algebra
        clean = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, algebra, terms) -> "SuperPoly":
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj._terms = {m: c for m, c in terms.items() if c != 0}
        obj._hash = None
        return obj

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other) -> "SuperPoly":
        if isinstance(other, (int, Fraction)):
            return self.algebra.const(other)
        if not isinstance(other, SuperPoly):
            return NotImplemented
        if other.algebra != self.algebra:
            raise AlgebraMismatchError("operands belong to different algebras")
        return other

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.algebra.const(other)
        if not isinstance(other, SuperPoly):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "SuperPoly":
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return SuperPoly._raw(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> "SuperPoly":
        return SuperPoly._raw(self.algebra, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "SuperPoly":
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "SuperPoly":
        return (-self) + other

    def scale(self, c: Scalar) -> "SuperPoly":
        c = Fraction(c)
        return SuperPoly._raw(self.algebra, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other) -> "SuperPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        alg = self.algebra
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                r = _mul_monomials(alg, m1, m2)
                if r is None:
                    continue
                sign, m = r
                out[m] = out.get(m, 0) + sign * c1 * c2
        return SuperPoly._raw(alg, out)

    def __rmul__(self, other) -> "SuperPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "SuperPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.algebra.one()
        for _ in range(n):
            out = out * self
        return out

    # -- grading -------------------------------------------------------

    def monomial_parity(self, m: Monomial) -> Parity:
        return Parity(len(_odd_indices(self.algebra, m.factors)) % 2)

    def monomial_fibre_degree(self, m: Monomial) -> int:
        vs = self.algebra.variables
        return sum(e for i, e in m.factors if vs[i].kind in FIBRE_KINDS)

    @property
    def parity(self) -> Parity:
        """Parity of a homogeneous polynomial; zero counts as even."""
        ps = {self.monomial_parity(m) for m in self._terms}
        if len(ps) > 1:
            raise GradingError(f"parity-inhomogeneous polynomial: {self!r}")
        return ps.pop() if ps else Parity.EVEN

    def is_homogeneous(self) -> bool:
        return len({self.monomial_parity(m) for m in self._terms}) <= 1

    def fibre_degrees(self) -> set:
        return {self.monomial_fibre_degree(m) for m in self._terms}

    def variables_used(self) -> set:
        return {i for m in self._terms for i, _ in m.factors}

    def is_momentum_free(self) -> bool:
        vs = self.algebra.variables
        return all(vs[i].kind not in FIBRE_KINDS for i in self.variables_used())

    # -- calculus --------------------------------------------------------

    def derivative(self, name: str) -> "SuperPoly":
        return left_derivative(self, self.algebra.variable(name))

    def substitute(self, images: Mapping) -> "SuperPoly":
        """
        Algebra homomorphism sending each named variable to a polynomial of
        the same parity (in any target algebra).  Unlisted variables map to
        themselves, which then requires the target to be this algebra.
        Exponential factors are left untouched.
        """
        target = None
        for img in images.values():
            target = img.algebra
            break
        if target is None:
            return self
        vs = self.algebra.variables
        cache = {}
        for v in vs:
            if v.name in images:
                img = images[v.name]
                if not img.is_zero() and img.parity != v.parity:
                    raise GradingError(f"image of {v.name} has the wrong parity")
                cache[v.index] = img
            else:
                cache[v.index] = target.var(v.name)
        out = target.zero()
        for m, c in self._terms.items():
            term = target.exp(m.rate) * c if m.rate else target.const(c)
            for i, e in m.factors:
                term = term * cache[i] ** e
            out = out + term
        return out

    def embed(self, target: Algebra) -> "SuperPoly":
        """Re-express in a larger algebra containing every used variable by name."""
        if target == self.algebra:
            return self
        src = self.algebra.variables
        remap = {}
        for i in self.variables_used():
            v = target.variable(src[i].name)
            if v.parity != src[i].parity:
                raise AlgebraMismatchError(f"parity of {v.name} differs in target")
            remap[i] = v.index
        out = {}
        for m, c in self._terms.items():
            if m.rate and target.line_base is None:
                raise AlgebraMismatchError("target has no line coordinate for exp(...)")
            factors = [(remap[i], e) for i, e in m.factors]
            # re-sorting may permute odd factors; rebuild with signs
            mono = target.exp(m.rate) * c if m.rate else target.const(c)
            for j, e in factors:
                mono = mono * SuperPoly._raw(
                    target, {Monomial(((j, e),), Fraction(0)): Fraction(1)})
            for mm, cc in mono._terms.items():
                out[mm] = out.get(mm, 0) + cc
        return SuperPoly._raw(target, out)

    def __repr__(self) -> str:
        from .fileformat import print_expression

        return f"SuperPoly({print_expression(self)!r})"


def poly_mul(a: SuperPoly, b: SuperPoly) -> SuperPoly:
    return a * b


def left_derivative(a: SuperPoly, v: Variable) -> SuperPoly:
    """
    Left partial derivative: move ``v`` to the front, then strip it.

    With respect to the line variable ``t`` the exponential factor also
    contributes ``rate * exp(rate*t)``.
    """
    alg = a.algebra
    k = v.index
    if alg.variables[k] != v:
        raise AlgebraMismatchError(f"{v.name} is not a variable of this algebra")
    is_line = alg.line_base == k
    out: dict = {}
    for m, c in a._terms.items():
        if is_line and m.rate:
            out[m] = out.get(m, 0) + c * m.rate
        factors = m.factors
        for pos, (i, e) in enumerate(factors):
            if i != k:
                continue
            if v.is_odd:
                before = sum(1 for j, _ in factors[:pos] if alg.is_odd_index(j))
                coeff = -c if before % 2 else c
                rest = factors[:pos] + factors[pos + 1:]
            else:
                coeff = c * e
                rest = factors[:pos] + (((i, e - 1),) if e > 1 else ()) + factors[pos + 1:]
            mm = Monomial(rest, m.rate)
            out[mm] = out.get(mm, 0) + coeff
            break
    return SuperPoly._raw(alg, out)


def grading_info(a: SuperPoly) -> tuple:
    """
    (parity, fibre degree) of a polynomial homogeneous in both gradings.
    Zero is reported as (even, 0).
    """
    if not a.is_homogeneous():
        raise GradingError("parity-inhomogeneous polynomial")
    degs = a.fibre_degrees()
    if len(degs) > 1:
        raise GradingError(f"fibre-inhomogeneous polynomial (degrees {sorted(degs)})")
    return a.parity, (degs.pop() if degs else 0)
