from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cdmaseq.errors import LogOfZero, NonPrimitiveModulus, NotAnOddPrime
from cdmaseq.fields import (
    PRIMITIVE_POLYNOMIALS,
    ZERO_DEGREE,
    Poly2,
    build_binary_field,
    build_quad_ext,
    discrete_log,
    is_primitive,
    is_quadratic_residue,
    multiplicative_order,
    poly_gcd,
    prime_factors,
    primitive_root,
    trace_to_subfield,
    trace_vector,
)

P = Poly2.parse


# -- Poly2 -----------------------------------------------------------------


def test_parse_forms_agree():
    assert P("1101") == P("x^3+x+1") == Poly2.from_exponents([0, 1, 3])
    assert str(P("1101")) == "x^3+x+1"
    assert P("x^3+x+1").to_bitstring() == "1101"
    assert str(P("1")) == "1"
    assert str(Poly2(0)) == "0"


def test_zero_degree_is_sentinel():
    assert Poly2(0).degree == ZERO_DEGREE
    assert Poly2(0).degree < 0
    assert P("1").degree == 0


def test_arithmetic_small():
    a, b = P("x+1"), P("x^2+x+1")
    assert a * a == P("x^2+1")
    assert a * b == P("x^3+1")
    q, r = divmod(P("x^4+x^3+x^2+1"), P("x^3+x+1"))
    assert (q, r) == (P("x+1"), Poly2(0))
    assert P("x^2") + P("x^2") == Poly2(0)


def test_reciprocal_and_substitute():
    assert P("x^3+x+1").reciprocal() == P("x^3+x^2+1")
    assert P("x^2+x+1").substitute_power(3) == P("x^6+x^3+1")


@pytest.mark.parametrize(
    "a,b,g",
    [
        ("x^4+x^3+x^2+1", "x^3+x+1", "x^3+x+1"),
        ("x^2+1", "x+1", "x+1"),
    ],
)
def test_gcd_examples(a, b, g):
    assert poly_gcd(P(a), P(b)) == P(g)


def test_gcd_with_zero():
    p = P("x^5+x^2+1")
    assert poly_gcd(p, Poly2(0)) == p
    assert poly_gcd(Poly2(0), p) == p


polys = st.integers(min_value=1, max_value=(1 << 17) - 1).map(Poly2)


@settings(max_examples=200, deadline=None)
@given(polys, polys, polys)
def test_gcd_scales_by_common_factor(a, b, c):
    assert poly_gcd(a * c, b * c) == poly_gcd(a, b) * c


@settings(max_examples=200, deadline=None)
@given(polys, polys)
def test_divmod_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


# -- binary fields ----------------------------------------------------------


def test_builtin_table_is_primitive():
    for k, poly in PRIMITIVE_POLYNOMIALS.items():
        if k <= 20:
            assert poly.degree == k
            assert is_primitive(poly), k


def test_gf8_example():
    t = build_binary_field(3, P("x^3+x+1"))
    assert t.exp[0] == 1
    assert t.exp[3] == 0b011  # alpha + 1
    assert discrete_log(0b011, t) == 3
    assert discrete_log(1, t) == 0


def test_log_of_zero():
    with pytest.raises(LogOfZero):
        discrete_log(0, build_binary_field(3))


def test_non_primitive_modulus():
    with pytest.raises(NonPrimitiveModulus):
        build_binary_field(4, P("x^4+x^3+x^2+x+1"))


@pytest.mark.parametrize("k", [2, 3, 5, 8, 10, 12])
def test_exp_log_tables(k):
    t = build_binary_field(k)
    n = t.order
    assert sorted(t.exp.tolist()) == list(range(1, n + 1))
    assert np.array_equal(t.log[t.exp], np.arange(n))
    rng = random.Random(k)
    for _ in range(1000):
        i, j = rng.randrange(n), rng.randrange(n)
        assert t.mul(int(t.exp[i]), int(t.exp[j])) == t.exp[(i + j) % n]


def test_trace_examples():
    gf4 = build_binary_field(2)
    assert trace_to_subfield(0b10, gf4, 1) == 1
    assert trace_to_subfield(0, gf4, 1) == 0
    gf64 = build_binary_field(6)
    # GF(8) inside GF(64): the powers alpha^(9i)
    for i in range(7):
        x = int(gf64.exp[9 * i])
        assert trace_to_subfield(x, gf64, 3) == 0


@pytest.mark.parametrize("k,sub", [(4, 2), (6, 3), (6, 2), (8, 4), (8, 1)])
def test_trace_linear_and_lands_in_subfield(k, sub):
    t = build_binary_field(k)
    rng = random.Random(k * 10 + sub)
    n_sub = (1 << sub) - 1
    step = t.order // n_sub
    subfield = {0} | {int(t.exp[step * i]) for i in range(n_sub)}
    for _ in range(1000):
        x, y = rng.randrange(1 << k), rng.randrange(1 << k)
        tx = trace_to_subfield(x, t, sub)
        assert tx ^ trace_to_subfield(y, t, sub) == trace_to_subfield(x ^ y, t, sub)
        assert tx in subfield
    xs = np.array([rng.randrange(1 << k) for _ in range(200)])
    assert trace_vector(xs, t, sub).tolist() == [trace_to_subfield(int(x), t, sub) for x in xs]


def test_trace_bad_subfield():
    with pytest.raises(ValueError):
        trace_to_subfield(1, build_binary_field(6), 4)


# -- prime fields -----------------------------------------------------------


@pytest.mark.parametrize("p,g", [(7, 3), (5, 2), (3, 2), (17, 3), (19, 2)])
def test_primitive_root_examples(p, g):
    assert primitive_root(p) == g


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23, 31, 43, 67, 257])
def test_primitive_root_property(p):
    g = primitive_root(p)
    for q in prime_factors(p - 1):
        assert pow(g, (p - 1) // q, p) != 1
    assert multiplicative_order(g, p) == p - 1


@pytest.mark.parametrize("bad", [1, 2, 9, 15])
def test_primitive_root_rejects(bad):
    with pytest.raises(NotAnOddPrime):
        primitive_root(bad)


def test_quad_ext_p3():
    f = build_quad_ext(3)
    assert f.t == 2
    assert f.theta == (1, 1)
    assert f.power(f.theta, 4) == (2, 0)
    powers = f.theta_powers(8)
    assert len(set(powers)) == 8


def test_quad_ext_p5_avoids_residue():
    f = build_quad_ext(5)
    assert is_quadratic_residue(4, 5)  # -1 is a residue mod 5
    assert f.t == 2


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 19, 23])
def test_quad_ext_theta_order(p):
    f = build_quad_ext(p)
    assert not is_quadratic_residue(f.t, p)
    assert len(set(f.theta_powers(p * p - 1))) == p * p - 1
    a, b = f.power(f.theta, p + 1)
    assert b == 0 and a != 0
