from fractions import Fraction

import pytest

from qsjacobi.constructions import (
    PencilParams,
    PreconditionError,
    pencil,
    schoutenise,
    theorem1_associate,
    theorem1_proof_identities,
)
from qsjacobi.cotangent import VectorField, canonical_poisson
from qsjacobi.fixtures import ex1, ex2, r22
from qsjacobi.structures import (
    check_odd_jacobi,
    check_schouten,
    make_exact_qs,
    make_odd_jacobi,
)
from qsjacobi.superpoly import Parity, grading_info

T = r22()


def d_xi(space):
    return VectorField(space, {"xi": space.const(1)}, Parity.ODD)


def test_theorem1_ex1():
    ex = ex1()
    oj = theorem1_associate(ex)
    T11 = ex.space
    assert oj.S == T11.p("xi") * T11.p("x")
    assert oj.Q == ex.qs.Q
    assert check_odd_jacobi(oj).passed


def test_theorem1_ex2():
    oj = theorem1_associate(ex2())
    assert oj.S == (T.p("xi") * T.p("x") + T.p("eta") * T.p("y")
                    + T.x("y") * T.p("y") * T.p("xi"))
    assert check_odd_jacobi(oj).passed


def test_theorem1_without_schouten_part():
    E = VectorField(T, {"xi": T.x("xi")}, Parity.EVEN)
    ex = make_exact_qs(T, T.const(0), d_xi(T), E)
    oj = theorem1_associate(ex)
    assert oj.S == T.x("xi") * T.p("xi") * T.p("xi")  # odd square: zero
    assert oj.S.is_zero()
    assert check_odd_jacobi(oj).passed


def test_theorem1_refuses_inexact_input():
    with pytest.raises(PreconditionError) as err:
        theorem1_associate(ex1("x"))
    assert not err.value.report["homothety-Q"].passed


@pytest.mark.parametrize("ex", [ex1(), ex2(), ex2(scale=3, shift=Fraction(1, 2)),
                                ex2(scale=Fraction(-1, 7), shift=-2, q_scale=5)],
                         ids=["EX1", "EX2", "EX2-a", "EX2-b"])
def test_proof_identities(ex):
    rep = theorem1_proof_identities(ex)
    assert rep.passed, [(e.name, e.residual) for e in rep.failures()]
    assert check_odd_jacobi(theorem1_associate(ex)).passed


@pytest.mark.parametrize("a,b", [(1, 0), (0, 1), (1, 1), (2, 3), (-1, 5), (Fraction(1, 3), -2)])
def test_pencil_closure(a, b):
    assert check_odd_jacobi(pencil(ex2(), PencilParams(a, b))).passed


def test_pencil_degenerations():
    ex = ex2()
    assert pencil(ex, PencilParams(1, 0)).Q.is_zero()
    assert pencil(ex, PencilParams(1, 0)).S == ex.qs.S_hat
    oj = pencil(ex, PencilParams(0, 1))
    assert oj.S == ex.symbol_E * ex.qs.homological.symbol_Q
    assert oj.Q == ex.qs.Q
    t1 = theorem1_associate(ex)
    p11 = pencil(ex, PencilParams(1, 1))
    assert (p11.S, p11.Q) == (t1.S, t1.Q)


def test_schoutenise_ex2():
    st = schoutenise(theorem1_associate(ex2()))
    L = st.space
    u = L.exp(-1)
    expected = u * (L.p("xi") * L.p("x") + L.p("eta") * L.p("y")
                    + L.x("y") * L.p("y") * L.p("xi") - L.p("xi") * L.p())
    assert st.S_hat == expected
    assert check_schouten(st).passed
    assert grading_info(st.S_hat) == (Parity.ODD, 2)


def test_schoutenise_degenerate_cases():
    S = ex2().qs.S_hat
    st = schoutenise(make_odd_jacobi(T, S, VectorField.zero(T, Parity.ODD)))
    assert st.S_hat == st.space.exp(-1) * S.embed(st.space.algebra)
    assert canonical_poisson(st.S_hat, st.S_hat).is_zero()
    st = schoutenise(make_odd_jacobi(T, T.const(0), d_xi(T)))
    L = st.space
    assert st.S_hat == -(L.exp(-1) * L.p("xi") * L.p())
    assert check_schouten(st).passed


def test_schoutenise_refuses_non_jacobi():
    S = T.p("xi") * T.p("x") + T.x("x") * T.p("x") * T.p("eta")
    with pytest.raises(PreconditionError):
        schoutenise(make_odd_jacobi(T, S, VectorField.zero(T, Parity.ODD)))


def test_mismatched_pencil_is_refused():
    # b = 2 on the E*Q part but b = 1 on Q breaks compatibility
    ex = ex2()
    S = (ex.symbol_E * ex.qs.homological.symbol_Q).scale(2) + ex.qs.S_hat
    oj = make_odd_jacobi(T, S, ex.qs.Q)
    assert not check_odd_jacobi(oj)["compatibility"].passed
    with pytest.raises(PreconditionError):
        schoutenise(oj)
