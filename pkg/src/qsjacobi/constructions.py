"""
Constructions of odd Jacobi structures from exact QS structures (the
associated structure and the two-parameter pencil), and Schoutenisation,
which turns an odd Jacobi structure on M into a Schouten structure on M x R.

All constructors validate their input first and refuse to build from data
that fails its defining conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cotangent import canonical_poisson
from .structures import (
    CheckReport,
    ExactQSStructure,
    HomologicalField,
    OddJacobiStructure,
    SchoutenStructure,
    check_exact_qs,
    check_odd_jacobi,
)


class PreconditionError(ValueError):
    def __init__(self, message: str, report: CheckReport):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class PencilParams:
    a: Fraction = Fraction(1)
    b: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))


def _require_exact(ex: ExactQSStructure):
    rep = check_exact_qs(ex)
    if not rep.passed:
        names = ", ".join(e.name for e in rep.failures())
        raise PreconditionError(f"input is not an exact QS structure (fails: {names})", rep)


def pencil(ex: ExactQSStructure, params: PencilParams = PencilParams()) -> OddJacobiStructure:
    """(a*S_hat + b*E*Q_hat, b*Q_hat)."""
    _require_exact(ex)
    S_hat = ex.qs.S_hat
    EQ = ex.symbol_E * ex.qs.homological.symbol_Q
    S = S_hat.scale(params.a) + EQ.scale(params.b)
    Q = ex.qs.Q.scale(params.b)
    return OddJacobiStructure(ex.space, S, HomologicalField(Q))


def theorem1_associate(ex: ExactQSStructure) -> OddJacobiStructure:
    """The odd Jacobi structure (S_hat + E*Q_hat, Q_hat) of an exact QS structure."""
    return pencil(ex, PencilParams(1, 1))


def theorem1_proof_identities(ex: ExactQSStructure) -> CheckReport:
    """
    Replays the two bracket computations behind the associated structure,
    line by line, as residuals.  Requires (and checks) exactness.
    """
    _require_exact(ex)
    br = canonical_poisson
    S_hat = ex.qs.S_hat
    Qh = ex.qs.homological.symbol_Q
    E = ex.symbol_E
    S = S_hat + E * Qh
    SS = br(S, S)
    expansion = (br(S_hat, S_hat) + (br(S_hat, E) * Qh).scale(2)
                 + (E * br(S_hat, Qh)).scale(2) - br(E, E) * Qh * Qh
                 - (E * br(E, Qh) * Qh).scale(2) + E * E * br(Qh, Qh))
    rep = CheckReport()
    rep.add("SS-expansion", SS - expansion)
    rep.add("SS-collected", SS - (Qh * (br(E, S_hat) + E * br(E, Qh))).scale(2))
    rep.add("SS-final", SS + (Qh * (S_hat + E * Qh)).scale(2))
    QS = br(Qh, S)
    rep.add("QS-expansion", QS - (br(Qh, S_hat) + br(Qh, E) * Qh + E * br(Qh, Qh)))
    rep.add("QS-collected", QS - Qh * Qh)
    rep.add("QS-vanishes", QS)
    return rep


def schoutenise(oj: OddJacobiStructure) -> SchoutenStructure:
    """exp(-t) * (S - Q p) on the line-extended phase space."""
    rep = check_odd_jacobi(oj)
    if not rep.passed:
        names = ", ".join(e.name for e in rep.failures())
        raise PreconditionError(f"input is not an odd Jacobi structure (fails: {names})", rep)
    ext = oj.space if oj.space.line else oj.space.extend_line()
    alg = ext.algebra
    S = oj.S.embed(alg)
    Qs = oj.homological.symbol_Q.embed(alg)
    return SchoutenStructure(ext, ext.exp(-1) * (S - Qs * ext.p()))
