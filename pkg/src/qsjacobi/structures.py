"""
Schouten, QS, odd Jacobi and exact QS structures on a phase space, the
brackets they induce on functions of the base, and exact condition checks.

Every checker returns a :class:`CheckReport` holding residual polynomials;
a condition holds iff its residual is the zero polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .cotangent import PhaseSpace, VectorField, canonical_poisson, symbol
from .superpoly import GradingError, Parity, SuperPoly, grading_info


def _sgn(n: int) -> int:
    return -1 if n % 2 else 1


def _check_odd_quadratic(S: SuperPoly, label: str):
    if S.is_zero():
        return
    if grading_info(S) != (Parity.ODD, 2):
        raise GradingError(f"{label} must be odd and quadratic in momenta")


@dataclass(frozen=True)
class CheckEntry:
    name: str
    residual: SuperPoly
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()


@dataclass
class CheckReport:
    entries: list = field(default_factory=list)

    def add(self, name: str, residual: SuperPoly, detail: str = "") -> None:
        self.entries.append(CheckEntry(name, residual, detail))

    def extend(self, other: "CheckReport") -> None:
        self.entries.extend(other.entries)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def __getitem__(self, name: str) -> CheckEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def __iter__(self):
        return iter(self.entries)

    def failures(self) -> list:
        return [e for e in self.entries if not e.passed]


# -- structure bundles ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SchoutenStructure:
    space: PhaseSpace
    S_hat: SuperPoly

    def __post_init__(self):
        _check_odd_quadratic(self.S_hat, "Schouten structure")


@dataclass(frozen=True, eq=False)
class HomologicalField:
    Q: VectorField

    def __post_init__(self):
        if not self.Q.is_zero() and self.Q.parity is not Parity.ODD:
            raise GradingError("homological vector field must be odd")

    @cached_property
    def symbol_Q(self) -> SuperPoly:
        return symbol(self.Q)

    @property
    def space(self) -> PhaseSpace:
        return self.Q.space

    @classmethod
    def zero(cls, space: PhaseSpace) -> "HomologicalField":
        return cls(VectorField.zero(space, Parity.ODD))


@dataclass(frozen=True, eq=False)
class QSStructure:
    schouten: SchoutenStructure
    homological: HomologicalField

    @property
    def space(self) -> PhaseSpace:
        return self.schouten.space

    @property
    def S_hat(self) -> SuperPoly:
        return self.schouten.S_hat

    @property
    def Q(self) -> VectorField:
        return self.homological.Q


@dataclass(frozen=True, eq=False)
class OddJacobiStructure:
    space: PhaseSpace
    S: SuperPoly
    homological: HomologicalField

    def __post_init__(self):
        _check_odd_quadratic(self.S, "almost Schouten structure")

    @property
    def Q(self) -> VectorField:
        return self.homological.Q


@dataclass(frozen=True, eq=False)
class ExactQSStructure:
    qs: QSStructure
    E: VectorField

    def __post_init__(self):
        if not self.E.is_zero() and self.E.parity is not Parity.EVEN:
            raise GradingError("homothety vector field must be even")

    @cached_property
    def symbol_E(self) -> SuperPoly:
        return symbol(self.E)

    @property
    def space(self) -> PhaseSpace:
        return self.qs.space


def make_qs(space, S_hat, Q) -> QSStructure:
    return QSStructure(SchoutenStructure(space, S_hat), HomologicalField(Q))


def make_exact_qs(space, S_hat, Q, E) -> ExactQSStructure:
    return ExactQSStructure(make_qs(space, S_hat, Q), E)


def make_odd_jacobi(space, S, Q) -> OddJacobiStructure:
    return OddJacobiStructure(space, S, HomologicalField(Q))


# -- derived brackets ---------------------------------------------------------

def _require_base(*fs: SuperPoly):
    for f in fs:
        if not f.is_momentum_free():
            raise ValueError("derived brackets act on momentum-free functions only")


def schouten_bracket(st, f: SuperPoly, g: SuperPoly) -> SuperPoly:
    """[[f, g]] = (-1)^(f+1) {{S_hat, f}, g}."""
    S = st.S_hat if hasattr(st, "S_hat") else st.S
    _require_base(f, g)
    inner = canonical_poisson(S, f)
    return canonical_poisson(inner, g).scale(_sgn(int(f.parity) + 1))


def odd_jacobi_bracket(st: OddJacobiStructure, f: SuperPoly, g: SuperPoly) -> SuperPoly:
    """[[f, g]]_J = (-1)^(f+1) ({{S, f}, g} - {Q, f g})."""
    _require_base(f, g)
    s = _sgn(int(f.parity) + 1)
    out = canonical_poisson(canonical_poisson(st.S, f), g)
    Qs = st.homological.symbol_Q
    if not Qs.is_zero():
        out = out - canonical_poisson(Qs, f * g)
    return out.scale(s)


# -- condition checks ---------------------------------------------------------

def check_schouten(st: SchoutenStructure) -> CheckReport:
    rep = CheckReport()
    rep.add("schouten", canonical_poisson(st.S_hat, st.S_hat))
    return rep


def check_qs(qs: QSStructure) -> CheckReport:
    Qs, S = qs.homological.symbol_Q, qs.S_hat
    rep = CheckReport()
    rep.add("homological", canonical_poisson(Qs, Qs))
    rep.add("invariance", canonical_poisson(Qs, S))
    rep.add("schouten", canonical_poisson(S, S))
    return rep


def check_odd_jacobi(oj: OddJacobiStructure) -> CheckReport:
    Qs, S = oj.homological.symbol_Q, oj.S
    rep = CheckReport()
    rep.add("homological", canonical_poisson(Qs, Qs))
    rep.add("invariance", canonical_poisson(Qs, S))
    rep.add("compatibility", canonical_poisson(S, S) + (Qs * S).scale(2))
    return rep


def check_exact_qs(ex: ExactQSStructure) -> CheckReport:
    rep = check_qs(ex.qs)
    E, S, Qs = ex.symbol_E, ex.qs.S_hat, ex.qs.homological.symbol_Q
    rep.add("homothety-S", canonical_poisson(E, S) + S)
    rep.add("homothety-Q", canonical_poisson(E, Qs) + Qs)
    rep.add("exact-S", S - canonical_poisson(S, E))
    rep.add("exact-Q", Qs - canonical_poisson(Qs, E))
    return rep


# -- sampled axiom checks -----------------------------------------------------

@dataclass(frozen=True)
class SamplingSpec:
    count: int = 100
    max_degree: int = 3
    seed: int = 0
    max_terms: int = 3
    coeff_bound: int = 3

    def __post_init__(self):
        if self.count < 1 or self.max_degree < 0 or self.max_terms < 1 or self.coeff_bound < 1:
            raise ValueError(f"invalid sampling spec {self}")


def random_homogeneous(rng: random.Random, space: PhaseSpace, names, parity: Parity,
                       max_degree: int, max_terms: int, coeff_bound: int) -> SuperPoly:
    """
    Nonzero random polynomial of the given parity in the listed variables.
    Each term is drawn directly with the right number of distinct odd factors.
    """
    alg = space.algebra
    odd = [n for n in names if alg.variable(n).is_odd]
    even = [n for n in names if not alg.variable(n).is_odd]
    p = int(parity)
    shapes = [(d, k) for d in range(max_degree + 1) for k in range(p, min(d, len(odd)) + 1, 2)
              if k == d or even]
    if not shapes:
        raise ValueError(f"no {parity.name.lower()} monomials of degree <= {max_degree}")
    out = alg.zero()
    while out.is_zero():
        for _ in range(rng.randint(1, max_terms)):
            d, k = rng.choice(shapes)
            word = rng.sample(odd, k) + [rng.choice(even) for _ in range(d - k)]
            rng.shuffle(word)
            c = rng.choice([c for c in range(-coeff_bound, coeff_bound + 1) if c])
            out = out + alg.monomial(word, c)
    return out


def sample_triples(space: PhaseSpace, names, spec: SamplingSpec) -> list:
    """Deterministic list of (f, g, h) with independently random parities."""
    rng = random.Random(spec.seed)
    out = []
    for _ in range(spec.count):
        triple = tuple(
            random_homogeneous(rng, space, names, Parity(rng.randint(0, 1)),
                               spec.max_degree, spec.max_terms, spec.coeff_bound)
            for _ in range(3))
        out.append(triple)
    return out


class _Worst:
    """Keeps the largest nonzero residual seen over a sample batch."""

    def __init__(self, alg):
        self.residual = alg.zero()
        self.bad = 0
        self.total = 0

    def see(self, r: SuperPoly):
        self.total += 1
        if not r.is_zero():
            self.bad += 1
            if len(r) > len(self.residual):
                self.residual = r

    def detail(self) -> str:
        return f"{self.total - self.bad}/{self.total} samples exact"


def _wrong_parity_part(r: SuperPoly, want: Parity) -> SuperPoly:
    return SuperPoly(r.algebra, {m: c for m, c in r if r.monomial_parity(m) != want})


def check_axioms(kind: str, space: PhaseSpace, structure=None,
                 spec: SamplingSpec = SamplingSpec()) -> CheckReport:
    """
    Sample-based check of the bracket axioms.

    ``kind`` is ``canonical`` (even bracket on all phase-space functions),
    ``schouten`` (derived odd bracket of a Schouten/QS structure) or
    ``jacobi`` (odd Jacobi bracket, with the modified Leibniz rule).  When the
    structure carries a homological field its derivation rule is checked too.
    """
    if isinstance(structure, ExactQSStructure):
        structure = structure.qs
    if kind == "canonical":
        eps = 0
        names = [v.name for v in space.algebra.variables]
        br: Callable = canonical_poisson
        Q = None
    elif kind == "schouten":
        eps = 1
        names = list(space.manifold.names)
        br = lambda f, g: schouten_bracket(structure, f, g)  # noqa: E731
        Q = structure.Q if isinstance(structure, QSStructure) else None
    elif kind == "jacobi":
        eps = 1
        names = list(space.manifold.names)
        br = lambda f, g: odd_jacobi_bracket(structure, f, g)  # noqa: E731
        Q = structure.Q
    else:
        raise ValueError(f"unknown bracket kind {kind!r}")
    if kind != "canonical" and structure is None:
        raise ValueError(f"{kind} bracket needs a structure")

    alg = space.algebra
    grading, skew, jac, leib, der = (_Worst(alg) for _ in range(5))
    one = alg.one()
    for f, g, h in sample_triples(space, names, spec):
        a, b, c = int(f.parity), int(g.parity), int(h.parity)
        fg = br(f, g)
        grading.see(_wrong_parity_part(fg, Parity((a + b + eps) % 2)))
        skew.see(fg + br(g, f).scale(_sgn((a + eps) * (b + eps))))
        jac.see(
            br(f, br(g, h)).scale(_sgn((a + eps) * (c + eps)))
            + br(g, br(h, f)).scale(_sgn((b + eps) * (a + eps)))
            + br(h, br(f, g)).scale(_sgn((c + eps) * (b + eps))))
        lhs = br(f, g * h)
        rhs = fg * h + (g * br(f, h)).scale(_sgn((a + eps) * b))
        if kind == "jacobi":
            rhs = rhs - br(f, one) * g * h
        leib.see(lhs - rhs)
        if Q is not None:
            der.see(Q(fg) - br(Q(f), g) - br(f, Q(g)).scale(_sgn(a + 1)))

    rep = CheckReport()
    rep.add("grading", grading.residual, grading.detail())
    rep.add("skewsymmetry", skew.residual, skew.detail())
    rep.add("jacobi-identity", jac.residual, jac.detail())
    rep.add("modified-leibniz" if kind == "jacobi" else "leibniz", leib.residual, leib.detail())
    if Q is not None:
        rep.add("derivation", der.residual, der.detail())
    return rep


def leibniz_witness(st: OddJacobiStructure, spec: SamplingSpec = SamplingSpec()):
    """
    First sampled (f, g, h, residual) where the ORDINARY Leibniz rule fails
    for the odd Jacobi bracket, or None.
    """
    space = st.space
    for f, g, h in sample_triples(space, list(space.manifold.names), spec):
        a, b = int(f.parity), int(g.parity)
        res = (odd_jacobi_bracket(st, f, g * h) - odd_jacobi_bracket(st, f, g) * h
               - (g * odd_jacobi_bracket(st, f, h)).scale(_sgn((a + 1) * b)))
        if not res.is_zero():
            return f, g, h, res
    return None
