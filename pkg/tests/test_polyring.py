from hypothesis import given, strategies as st

import pytest

from khoveq.polyring import (
    BAR_NATAN, KHOVANOV, LEE, ONE, S, T, ZERO, Poly, Specialization,
    gf2_divmod, gf2_gcd, gf2_mul, gf2_parse, gf2_str, parse_poly, specialize,
)

coeffs = st.integers(min_value=-50, max_value=50)
polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), coeffs, max_size=5
).map(Poly)


def test_basic_arithmetic():
    p = (S + T) * (S - T)
    assert p == S * S - T * T
    assert (S + 1) ** 2 == S * S + 2 * S + 1
    assert ZERO.is_zero() and not ZERO
    assert ONE.is_constant() and ONE.constant_term() == 1
    assert Poly({(1, 0): 0}) == ZERO


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        Poly({(-1, 0): 1})


def test_str_and_parse_roundtrip():
    p = 2 * S * S * T - 3 * T + 1
    assert parse_poly(str(p)) == p
    assert parse_poly("2s^2t - 3t + 1") == p
    assert parse_poly("-s") == -S
    assert parse_poly(5) == Poly.const(5)
    assert parse_poly(p.to_json()) == p


@pytest.mark.parametrize("bad", ["", "s^", "2 3", "s+*t", "x"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ValueError):
        parse_poly(bad)


def test_json_rejects_malformed():
    with pytest.raises(ValueError):
        Poly.from_json([[1, 0]])
    with pytest.raises(ValueError):
        Poly.from_json([[1, "a", "1"]])


def test_big_coefficients_are_exact():
    p = Poly.const(2**80) * Poly.const(3**50)
    assert p.constant_term() == 2**80 * 3**50
    assert Poly.from_json(p.to_json()) == p


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(polys, polys, st.integers(-3, 3), st.integers(-3, 3))
def test_specialization_is_a_homomorphism(a, b, s, t):
    sp = Specialization("integers", s, t)
    assert specialize(a * b, sp) == specialize(a, sp) * specialize(b, sp)
    assert specialize(a + b, sp) == specialize(a, sp) + specialize(b, sp)


@given(polys, polys)
def test_mod2poly_specialization_is_a_homomorphism(a, b):
    lhs = specialize(a * b, BAR_NATAN)
    assert lhs == gf2_mul(specialize(a, BAR_NATAN), specialize(b, BAR_NATAN))


def test_named_specializations():
    p = 1 + S + T
    assert specialize(p, KHOVANOV) == 1
    assert specialize(p, LEE) == 2
    assert specialize(p, BAR_NATAN) == 0b11
    assert KHOVANOV.preserves_quantum_grading and not LEE.preserves_quantum_grading


def test_specialization_validation():
    with pytest.raises(ValueError):
        Specialization("reals")
    with pytest.raises(ValueError):
        Specialization("mod2", 2, 0)
    with pytest.raises(ValueError):
        Specialization("mod2poly", 2, 1)


@given(st.integers(0, 2**12), st.integers(1, 2**8))
def test_gf2_division(a, b):
    q, r = gf2_divmod(a, b)
    assert gf2_mul(q, b) ^ r == a
    assert r.bit_length() < b.bit_length()


def test_gf2_text():
    assert gf2_str(0b1011) == "s^3 + s + 1"
    assert gf2_parse("s^3 + s + 1") == 0b1011
    assert gf2_gcd(gf2_mul(0b11, 0b101), gf2_mul(0b11, 0b111)) == 0b11
