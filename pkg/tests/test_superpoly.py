from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsjacobi.fixtures import r22
from qsjacobi.superpoly import (
    AlgebraMismatchError,
    GradingError,
    Parity,
    grading_info,
    left_derivative,
    poly_mul,
)

from conftest import homogeneous, polys

T = r22()
A = T.algebra
any_poly = polys(T)
hom = homogeneous(T)


def test_parity_addition():
    assert Parity.EVEN + Parity.EVEN is Parity.EVEN
    assert Parity.EVEN + Parity.ODD is Parity.ODD
    assert Parity.ODD + Parity.ODD is Parity.EVEN


def test_odd_square_vanishes(T11):
    xi = T11.x("xi")
    assert (xi * xi).is_zero()


def test_koszul_sign():
    xi, eta = T.x("xi"), T.x("eta")
    assert poly_mul(eta, xi) == -(xi * eta)


def test_exponential_rates_add():
    L = T.extend_line()
    assert L.exp(-1) * L.exp(-1) == L.exp(-2)
    assert L.exp(3) * L.exp(-3) == L.const(1)


def test_exp_needs_line():
    with pytest.raises(ValueError):
        T.exp(-1)


def test_left_derivative_examples(T11):
    xi, x = T11.x("xi"), T11.x("x")
    L = r22().extend_line()
    a, b = T.x("xi"), T.x("eta")
    assert (a * b).derivative("xi") == b
    assert (a * b).derivative("eta") == -a
    assert (L.exp(-1) * L.x("x")).derivative("t") == -(L.exp(-1) * L.x("x"))
    assert (x**3).derivative("x") == (x**2).scale(3)
    assert xi.derivative("x").is_zero()


def test_derivative_of_t_power_times_exp():
    L = T.extend_line()
    t, u = L.x("t"), L.exp(Fraction(1, 2))
    assert (t**2 * u).derivative("t") == (t * u).scale(2) + (t**2 * u).scale(Fraction(1, 2))


def test_grading_info():
    assert grading_info(T.p("xi") * T.p("x")) == (Parity.ODD, 2)
    assert grading_info(T.x("x") * T.p("x")) == (Parity.EVEN, 1)
    with pytest.raises(GradingError, match="fibre"):
        grading_info(T.x("x") + T.p("x"))
    with pytest.raises(GradingError):
        grading_info(T.x("x") + T.x("xi"))


def test_mixed_parity_has_no_parity():
    with pytest.raises(GradingError):
        (T.x("x") + T.x("xi")).parity


def test_mixed_algebra_rejected(T11):
    with pytest.raises(AlgebraMismatchError):
        T11.x("x") * T.x("x")


def test_zero_coefficients_not_stored():
    f = T.x("x") - T.x("x")
    assert f.is_zero() and len(f.terms) == 0


@given(any_poly, any_poly, any_poly)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(hom, hom)
def test_supercommutativity(a, b):
    s = -1 if (int(a.parity) * int(b.parity)) % 2 else 1
    assert a * b - (b * a).scale(s) == 0


@settings(max_examples=60)
@given(hom, any_poly, st.sampled_from([v.name for v in A.variables]))
def test_graded_leibniz(a, b, name):
    v = A.variable(name)
    s = -1 if (int(v.parity) * int(a.parity)) % 2 else 1
    lhs = left_derivative(a * b, v)
    rhs = left_derivative(a, v) * b + (a * left_derivative(b, v)).scale(s)
    assert lhs == rhs


@given(st.lists(st.sampled_from([v.name for v in A.variables]), max_size=5), st.randoms())
def test_canonical_form_under_permutation(word, rnd):
    perm = list(range(len(word)))
    rnd.shuffle(perm)
    shuffled = [word[i] for i in perm]
    # sign of the permutation restricted to odd letters
    odd = [i for i in perm if A.variable(word[i]).is_odd]
    inversions = sum(1 for i in range(len(odd)) for j in range(i + 1, len(odd)) if odd[i] > odd[j])
    assert A.monomial(shuffled) == A.monomial(word).scale((-1) ** inversions)


@given(polys(T, parity=Parity.ODD, max_terms=1))
def test_single_term_odd_squares(a):
    assert (a * a).is_zero()


@given(any_poly)
def test_hash_matches_equality(a):
    b = a + T.x("x") - T.x("x")
    assert a == b and hash(a) == hash(b)


def test_substitute_is_homomorphism():
    f = T.x("xi") * T.x("eta") + T.x("x") ** 2
    img = {"xi": T.x("eta"), "eta": T.x("xi"), "x": T.x("y")}
    assert f.substitute(img) == -(T.x("xi") * T.x("eta")) + T.x("y") ** 2


def test_embed_preserves_products():
    L = T.extend_line()
    f = T.p("eta") * T.x("xi") * T.x("y")
    assert f.embed(L.algebra) == L.p("eta") * L.x("xi") * L.x("y")
