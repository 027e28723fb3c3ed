"""Reference exact QS structures used by the tests, scripts and data files."""

from __future__ import annotations

from fractions import Fraction

from .cotangent import PhaseSpace, SuperManifold, VectorField
from .superpoly import Parity
from .structures import ExactQSStructure, make_exact_qs


def r11() -> PhaseSpace:
    return PhaseSpace(SuperManifold.from_names(even=["x"], odd=["xi"]))


def r22() -> PhaseSpace:
    return PhaseSpace(SuperManifold.from_names(even=["x", "y"], odd=["xi", "eta"]))


def ex1(E: str = "xi") -> ExactQSStructure:
    """R^{1|1}, S_hat = p_xi p_x, Q = d/dxi, E = xi d/dxi (or x d/dx with E='x')."""
    T = r11()
    S_hat = T.p("xi") * T.p("x")
    Q = VectorField(T, {"xi": T.const(1)}, Parity.ODD)
    E_field = VectorField(T, {E: T.x(E)}, Parity.EVEN)
    return make_exact_qs(T, S_hat, Q, E_field)


def ex2_homothety(T: PhaseSpace, shift=0) -> VectorField:
    """xi d/dxi + (1 - s) y d/dy + s eta d/deta; s = 0 is the EX2 homothety."""
    s = Fraction(shift)
    return VectorField(
        T, {"xi": T.x("xi"), "y": T.x("y").scale(1 - s), "eta": T.x("eta").scale(s)},
        Parity.EVEN)


def ex2(scale=1, shift=0, q_scale=1) -> ExactQSStructure:
    """
    R^{2|2} with coordinates x, y, xi, eta:
    S_hat = c (p_xi p_x + p_eta p_y), Q = k d/dxi, E from :func:`ex2_homothety`.
    Every rational (c, s, k) gives an exact QS structure.
    """
    T = r22()
    S_hat = (T.p("xi") * T.p("x") + T.p("eta") * T.p("y")).scale(scale)
    Q = VectorField(T, {"xi": T.const(q_scale)}, Parity.ODD)
    return make_exact_qs(T, S_hat, Q, ex2_homothety(T, shift))
