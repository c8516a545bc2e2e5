"""Polynomial layer: ring identities, calculus, homogenization, coordinate
changes, and the exact text round trip."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picard_forms.errors import (
    DegreeTooSmall,
    IncompatibleOperands,
    IndexOutOfRange,
    NotHomogeneous,
    ParseError,
)
from picard_forms.fields import Field
from picard_forms.poly import (
    NEG_DEGREE,
    Polynomial,
    apply_substitution,
    dehomogenize,
    euler_residual,
    format_polynomial,
    grevlex_key,
    homogenize,
    matrix_apply,
    matrix_inverse,
    monomials_of_degree,
    monomials_up_to,
    parse_polynomial,
    random_coordinate_change,
    sample_invertible_matrix,
)

QQ = Field.rationals()


def P(text, field=QQ, nvars=3):
    return parse_polynomial(text, field, nvars)


# -- hypothesis strategies ----------------------------------------------------------

fields_st = st.sampled_from([QQ, Field.prime(7), Field.prime(10007)])


def poly_st(field, nvars=3, max_degree=3, max_terms=5):
    # max_degree bounds the *total* degree, keeping products small
    mono = st.sampled_from(monomials_up_to(nvars, max_degree))
    coeff = st.integers(-9, 9)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(
        lambda terms: Polynomial(field, nvars, terms)
    )


@st.composite
def poly_pair(draw, nvars=3):
    field = draw(fields_st)
    return draw(poly_st(field, nvars)), draw(poly_st(field, nvars))


@st.composite
def poly_triple(draw, nvars=3):
    field = draw(fields_st)
    s = poly_st(field, nvars)
    return draw(s), draw(s), draw(s)


# -- ring operations -----------------------------------------------------------------


def test_ring_ops_examples():
    assert P("x + y") + P("x - y") == P("2*x")
    assert P("x + 1") * P("x - 1") == P("x^2 - 1")


@given(poly_st(QQ))
def test_multiplication_by_zero_absorbs(p):
    assert (p * Polynomial.zero(QQ, 3)).is_zero()


@given(poly_triple())
def test_ring_axioms(triple):
    p, q, r = triple
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(poly_pair())
def test_multiplication_degree_adds(pair):
    p, q = pair
    prod = p * q
    if p.is_zero() or q.is_zero():
        assert prod.degree() == NEG_DEGREE
    else:
        assert prod.degree() == p.degree() + q.degree()


def test_incompatible_operands_rejected():
    with pytest.raises(IncompatibleOperands):
        P("x") + P("x", nvars=4)
    with pytest.raises(IncompatibleOperands):
        P("x") * P("x", field=Field.prime(7))


def test_zero_degree_sentinel_is_not_an_int():
    deg = Polynomial.zero(QQ, 3).degree()
    assert deg == NEG_DEGREE and not isinstance(deg, int)
    assert deg < 0 and deg < -(10**9)


# -- differentiation -------------------------------------------------------------------


def test_diff_examples():
    assert P("x^2*y").diff(0) == P("2*x*y")
    G3 = Field.prime(3)
    assert parse_polynomial("x^3", G3, 3).diff(0).is_zero()
    with pytest.raises(IndexOutOfRange):
        P("x").diff(3)


@given(poly_pair())
def test_leibniz_rule(pair):
    f, g = pair
    for i in range(3):
        assert (f * g).diff(i) == f.diff(i) * g + g.diff(i) * f


# -- homogenize / dehomogenize ------------------------------------------------------------


def test_homogenize_examples():
    assert homogenize(P("x^2 + y"), 2) == P("x^2 + y*w", nvars=4)
    assert dehomogenize(P("x^2 + y*w", nvars=4)) == P("x^2 + y")
    with pytest.raises(DegreeTooSmall):
        homogenize(P("x^2"), 1)


def test_diff_dehomogenize_by_hand():
    # f = x^2 + y*z: d/dx homog(f, 2) dehomogenized equals f_x = 2x
    f = P("x^2 + y*z")
    assert dehomogenize(homogenize(f, 2).diff(0)) - f.diff(0) == Polynomial.zero(QQ, 3)


@given(poly_st(QQ), st.integers(0, 3))
def test_homogenize_round_trip(p, extra):
    target = (0 if p.is_zero() else int(p.degree())) + extra
    assert dehomogenize(homogenize(p, target)) == p
    assert homogenize(p, target).is_homogeneous()


@given(poly_st(Field.prime(7), nvars=3, max_degree=2))
def test_diff_commutes_with_dehomogenization(p):
    target = 0 if p.is_zero() else int(p.degree())
    H = homogenize(p, target)
    for i in range(3):
        assert dehomogenize(H.diff(i)) == dehomogenize(H).diff(i)


# -- Euler identity --------------------------------------------------------------------


def test_euler_residual_examples():
    assert euler_residual(P("x^3 + y^3", nvars=4)).is_zero()
    assert euler_residual(P("x*y*z*w", nvars=4)).is_zero()
    with pytest.raises(NotHomogeneous):
        euler_residual(P("x^2 + y", nvars=4))


def test_euler_affine_form_fermat_quartic():
    # d*f = x*F1 + y*F2 + z*F3 + F4 at w = 1
    F = P("x^4 + y^4 + z^4 + w^4", nvars=4)
    f = dehomogenize(F)
    x, y, z = (Polynomial.variable(QQ, 3, i) for i in range(3))
    combo = (
        x * dehomogenize(F.diff(0))
        + y * dehomogenize(F.diff(1))
        + z * dehomogenize(F.diff(2))
        + dehomogenize(F.diff(3))
    )
    assert f.scale(4) - combo == Polynomial.zero(QQ, 3)


@given(poly_st(Field.prime(5), nvars=4, max_degree=2))
def test_euler_residual_vanishes_on_components(p):
    # every homogeneous component satisfies the identity, any characteristic
    for d in {sum(m) for m in p.terms}:
        assert euler_residual(p.homogeneous_component(d)).is_zero()


# -- evaluation -------------------------------------------------------------------------


def test_evaluate_examples():
    assert P("x^2 + y").evaluate((2, 3, 0)) == Fraction(7)
    with pytest.raises(IndexOutOfRange):
        P("x").evaluate((1, 2))


@given(poly_st(QQ, nvars=4, max_degree=2), st.integers(-4, 4),
       st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)))
def test_homogeneous_scaling(p, lam, v):
    for d in {sum(m) for m in p.terms}:
        comp = p.homogeneous_component(d)
        scaled = tuple(lam * c for c in v)
        assert comp.evaluate(scaled) == Fraction(lam) ** d * comp.evaluate(v)


def test_steiner_vanishes_on_axis_sample():
    f = dehomogenize(P("x^2*y^2 + y^2*z^2 + z^2*x^2 - x*y*z*w", nvars=4))
    # points of the z-axis (x = y = 0) lie on the surface
    assert f.evaluate((0, 0, 5)) == 0
    assert f.evaluate((0, 0, Fraction(7, 3))) == 0


# -- coordinate changes -------------------------------------------------------------------


def test_identity_substitution_is_identity():
    p = P("x^4 + y^4 + z^4 + w^4", nvars=4)
    eye = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    assert apply_substitution(p, eye) == p


@settings(max_examples=30)
@given(st.integers(0, 500), poly_st(QQ, nvars=4, max_degree=3))
def test_coordinate_change_round_trip(seed, p):
    q, matrix = random_coordinate_change(p, seed)
    inverse = matrix_inverse(matrix, QQ)
    assert apply_substitution(q, inverse) == p
    assert q.degree() == p.degree()


def test_randomized_fermat_degree_preserved():
    p = P("x^4 + y^4 + z^4 + w^4", nvars=4)
    q, _ = random_coordinate_change(p, 11)
    assert q.degree() == 4


@given(st.integers(0, 300))
def test_sampled_matrices_invert_over_prime_field(seed):
    F = Field.prime(101)
    m = sample_invertible_matrix(F, seed)
    inv = matrix_inverse(m, F)
    v = [3, 1, 4, 1]
    assert matrix_apply(inv, matrix_apply(m, v, F), F) == [F.coerce(c) for c in v]


# -- text round trip ------------------------------------------------------------------------


def test_parse_rejects_garbage():
    for bad in ["", "x +", "q", "3^x", "x^", "1/", "x*"]:
        with pytest.raises(ParseError):
            parse_polynomial(bad, QQ, 3)
    with pytest.raises(ParseError):
        parse_polynomial("w", QQ, 3)  # w needs 4 variables


def test_canonical_order_is_grevlex():
    f = P("y^2*z^2 + x^2*y^2 + x^2*z^2", nvars=4)
    assert str(f) == "x^2*y^2 + x^2*z^2 + y^2*z^2"


@given(poly_st(QQ, max_terms=8))
def test_rational_round_trip(p):
    assert parse_polynomial(format_polynomial(p), QQ, 3) == p


@given(poly_st(Field.prime(13), nvars=4, max_terms=8))
def test_prime_field_round_trip(p):
    assert parse_polynomial(format_polynomial(p), Field.prime(13), 4) == p


def test_grevlex_tie_breaking():
    monos = monomials_of_degree(3, 2)
    assert monos[0] == (2, 0, 0)
    assert monos[-1] == (0, 0, 2)
    assert sorted(monos, key=grevlex_key) == monos
    assert len(monomials_up_to(3, 2)) == 10
