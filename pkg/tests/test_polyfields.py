"""Grassmann polynomials, super vector fields, and the W-O pair."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isopairs.polyfields import (
    InhomogeneousInput,
    ParseError,
    SuperPolynomial,
    SuperVectorField,
    iso_bracket_fields,
    iso_bracket_fields_operator,
    iso_bracket_functions,
    parse_field,
    parse_poly,
    poly_mul,
    random_field,
    random_poly,
    sample_check_w_o_pair,
    super_lie_bracket,
)
from isopairs.rng import Lcg64

F = Fraction
P = SuperPolynomial


def small_polys(n=1, m=2, maxdeg=2):
    monos = []
    for e in range(maxdeg + 1):
        for odd in ((), (1,), (2,), (1, 2)):
            if e + len(odd) <= maxdeg:
                monos.append(((e,), odd))
    coeff = st.integers(-2, 2)
    return st.lists(
        st.tuples(st.sampled_from(monos), coeff), min_size=0, max_size=3
    ).map(lambda items: P(n, m, {k: F(c) for k, c in items if c}))


def test_grassmann_square_is_zero():
    t1 = P.t(1, 2, 1)
    assert poly_mul(t1, t1).is_zero()


def test_koszul_swap():
    t1, t2 = P.t(1, 2, 1), P.t(1, 2, 2)
    assert poly_mul(t2, t1) == poly_mul(t1, t2).scale(-1)


def test_product_expansion():
    x, t1 = P.x(1, 2, 1), P.t(1, 2, 1)
    assert (x + t1) * (x - t1) == x * x


@given(small_polys(), small_polys(), small_polys())
@settings(max_examples=50)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)


@given(small_polys(), small_polys())
@settings(max_examples=50)
def test_supercommutativity(a, b):
    # split into homogeneous parts and apply the Koszul rule
    def parts(p):
        ev = P(p.n, p.m, {k: v for k, v in p.terms.items() if len(k[1]) % 2 == 0})
        od = P(p.n, p.m, {k: v for k, v in p.terms.items() if len(k[1]) % 2 == 1})
        return ((ev, 0), (od, 1))

    for pa, qa in parts(a):
        for pb, qb in parts(b):
            sign = -1 if qa * qb % 2 else 1
            assert pa * pb == (pb * pa).scale(sign)


def test_derivatives():
    x = P.x(1, 2, 1)
    ddx = SuperVectorField.d_dx(1, 2, 1)
    assert ddx.apply(x * x) == x.scale(2)
    t1, t2 = P.t(1, 2, 1), P.t(1, 2, 2)
    ddt1 = SuperVectorField.d_dt(1, 2, 1)
    assert ddt1.apply(t1 * t2) == t2  # left derivative
    ddt2 = SuperVectorField.d_dt(1, 2, 2)
    assert ddt2.apply(t1 * t2) == t1.scale(-1)
    euler = SuperVectorField.d_dx(1, 2, 1, x)
    assert euler.apply(x * x * x) == (x * x * x).scale(3)


@given(small_polys(), small_polys())
@settings(max_examples=40)
def test_field_application_is_derivation(f, g):
    x = P.x(1, 2, 1)
    X = SuperVectorField.d_dx(1, 2, 1, x)  # even field
    assert X.apply(f * g) == X.apply(f) * g + f * X.apply(g)


def test_odd_field_graded_leibniz():
    rng = Lcg64(5)
    for _ in range(20):
        X = random_field(1, 2, 2, 1, rng)
        pf = rng.below(2)
        f = random_poly(1, 2, 2, pf, rng)
        g = random_poly(1, 2, 2, rng.below(2), rng)
        sign = -1 if pf else 1
        assert X.apply(f * g) == X.apply(f) * g + (f * X.apply(g)).scale(sign)


def test_iso_bracket_fields_unit_function():
    one = P.const(1, 1, 1)
    x = P.x(1, 1, 1)
    X = SuperVectorField.d_dx(1, 1, 1)
    Y = SuperVectorField.d_dx(1, 1, 1, x)
    assert iso_bracket_fields(X, Y, one) == super_lie_bracket(X, Y)


def test_iso_bracket_fields_antisymmetry_even():
    x = P.x(1, 1, 1)
    Y = SuperVectorField.d_dx(1, 1, 1, x * x)
    assert iso_bracket_fields(Y, Y, x).is_zero()


def test_iso_bracket_fields_operator_oracle():
    rng = Lcg64(9)
    for _ in range(15):
        X = random_field(1, 1, 2, rng.below(2), rng)
        Y = random_field(1, 1, 2, rng.below(2), rng)
        f = random_poly(1, 1, 2, rng.below(2), rng)
        closed = iso_bracket_fields(X, Y, f)
        op = iso_bracket_fields_operator(X, Y, f)
        for probe in (P.x(1, 1, 1), P.t(1, 1, 1), P.x(1, 1, 1) * P.t(1, 1, 1)):
            assert op(probe) == closed.apply(probe)
        assert op(P.const(1, 1, 1)) == closed.apply(P.const(1, 1, 1))


def test_iso_bracket_result_is_derivation():
    rng = Lcg64(13)
    for _ in range(20):
        X = random_field(1, 1, 2, rng.below(2), rng)
        Y = random_field(1, 1, 2, rng.below(2), rng)
        f = random_poly(1, 1, 2, rng.below(2), rng)
        Z = iso_bracket_fields(X, Y, f)
        pz = Z.parity
        if pz is None:
            continue
        pg = rng.below(2)
        g = random_poly(1, 1, 2, pg, rng)
        h = random_poly(1, 1, 2, rng.below(2), rng)
        sign = -1 if pz * pg % 2 else 1
        assert Z.apply(g * h) == Z.apply(g) * h + (g * Z.apply(h)).scale(sign)


def test_iso_bracket_functions_examples():
    x = P.x(1, 2, 1)
    one = P.const(1, 2, 1)
    ddx = SuperVectorField.d_dx(1, 2, 1)
    assert iso_bracket_functions(x, x, ddx).is_zero()
    assert iso_bracket_functions(x, one, ddx) == P.const(1, 2, -1)
    t1, t2 = P.t(1, 2, 1), P.t(1, 2, 2)
    ddt1 = SuperVectorField.d_dt(1, 2, 1)
    # f X(g) - A g X(f) with all-odd letters: A = -1, X(t2) = 0, X(t1) = 1
    assert iso_bracket_functions(t1, t2, ddt1) == t2


def test_inhomogeneous_inputs_rejected():
    x = P.x(1, 1, 1)
    t = P.t(1, 1, 1)
    mixed = x + t
    ddx = SuperVectorField.d_dx(1, 1, 1)
    with pytest.raises(InhomogeneousInput):
        iso_bracket_functions(mixed, x, ddx)


def test_degree_bound():
    rng = Lcg64(17)
    for _ in range(20):
        X = random_field(1, 1, 3, rng.below(2), rng)
        Y = random_field(1, 1, 3, rng.below(2), rng)
        f = random_poly(1, 1, 3, rng.below(2), rng)
        assert iso_bracket_fields(X, Y, f).degree() <= X.degree() + Y.degree() + f.degree()


def test_sample_check_small():
    rep = sample_check_w_o_pair(1, 0, maxdeg=2, trials=15, seed=3)
    assert rep.passed
    rep = sample_check_w_o_pair(1, 1, maxdeg=2, trials=15, seed=3)
    assert rep.passed


def test_sample_check_zero_trials_vacuous():
    rep = sample_check_w_o_pair(1, 1, maxdeg=2, trials=0, seed=1)
    assert rep.passed and all(r.total == 0 for r in rep.reports)


def test_parse_poly():
    p = parse_poly("3*x1^2*t1 + 1/2*x2", 2, 1)
    x1, x2, t1 = P.x(2, 1, 1), P.x(2, 1, 2), P.t(2, 1, 1)
    assert p == (x1 * x1 * t1).scale(3) + x2.scale(F(1, 2))
    assert parse_poly("-x1 + x1", 1, 0).is_zero()
    assert parse_poly("t1*t1", 0, 1).is_zero()
    with pytest.raises(ParseError):
        parse_poly("x3", 2, 0)
    with pytest.raises(ParseError):
        parse_poly("3*&", 1, 0)


def test_parse_field():
    f = parse_field("x1^2*dx1 + t1*dt1 - 1/2*dx1", 1, 1)
    x, t = P.x(1, 1, 1), P.t(1, 1, 1)
    want = SuperVectorField.d_dx(1, 1, 1, x * x - P.const(1, 1, F(1, 2)))
    want = want + SuperVectorField.d_dt(1, 1, 1, t)
    assert f == want
    with pytest.raises(ParseError):
        parse_field("x1*x2", 2, 0)  # no derivative factor


def test_parse_round_trip_through_pretty():
    p = parse_poly("2*x1*t1 - 1/3*t2", 1, 2)
    assert parse_poly(p.pretty(), 1, 2) == p
