"""Exact-arithmetic core: canonical form, ring axioms, division, wire format."""

import json
import random

import pytest

from qeuler.errors import HalfPowerResidueError, NotDivisibleError
from qeuler.poly import (
    ONE,
    Q,
    Y,
    ZERO,
    HalfExponentPoly,
    Poly,
    binom_safe,
    exact_div_one_minus_q_pow,
    one_minus_q,
    q_integer,
)


def rand_poly(rng, terms=6, span=5):
    return Poly(
        [
            ((rng.randint(-span, span), rng.randint(-span, span)), rng.randint(-9, 9))
            for _ in range(rng.randint(0, terms))
        ]
    )


def test_q_integer_values():
    assert q_integer(0) == ZERO
    assert q_integer(1) == ONE
    assert q_integer(3) == ONE + Q + Q**2
    with pytest.raises(ValueError):
        q_integer(-1)


def test_binom_safe_boundaries():
    assert binom_safe(4, 2) == 6
    assert binom_safe(4, -1) == 0
    assert binom_safe(3, 5) == 0
    assert binom_safe(-2, -3) == 0


def test_product_and_substitution_examples():
    assert (ONE + Y * Q) * (ONE - Y * Q) == ONE - Y**2 * Q**2
    assert (Y + Y**2).substitute_y(-1) == ZERO
    # the size-3 derangement distribution vanishes at y = -1/q
    assert (Y + Y**2 * Q).substitute_y(-1, -1) == ZERO


def test_exact_division_examples():
    assert exact_div_one_minus_q_pow(one_minus_q(), 1) == ONE
    assert exact_div_one_minus_q_pow(Poly({(0, 0): 2, (0, 1): -3, (0, 3): 1}), 2) == Poly(
        {(0, 0): 2, (0, 1): 1}
    )
    with pytest.raises(NotDivisibleError):
        exact_div_one_minus_q_pow(ONE + Q, 1)


def test_canonical_form_idempotent_and_duplicate_folding():
    rng = random.Random(7)
    for _ in range(200):
        raw = [
            ((rng.randint(-3, 3), rng.randint(-3, 3)), rng.randint(-4, 4))
            for _ in range(rng.randint(0, 10))
        ]
        p = Poly(raw)
        again = Poly({(ye, qe): c for ye, qe, c in p.terms()})
        rebuilt = Poly([((ye, qe), c) for ye, qe, c in p.terms()])
        assert p == rebuilt
        assert all(c != 0 for *_, c in p.terms())
        keys = [(ye, qe) for ye, qe, _ in p.terms()]
        assert keys == sorted(keys) and len(keys) == len(set(keys))
        assert again == p


def test_ring_axioms_on_random_triples():
    rng = random.Random(11)
    for _ in range(150):
        a, b, c = (rand_poly(rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + (-a)).is_zero
        assert a * ONE == a and (a * ZERO).is_zero


def test_exact_division_roundtrip():
    rng = random.Random(13)
    for _ in range(80):
        p = rand_poly(rng)
        m = rng.randint(0, 8)
        assert exact_div_one_minus_q_pow(p * one_minus_q() ** m, m) == p


def test_substitution_is_a_homomorphism():
    rng = random.Random(17)
    for _ in range(100):
        a, b = rand_poly(rng), rand_poly(rng)
        sign, shift = rng.choice([1, -1]), rng.randint(-2, 2)
        assert (a + b).substitute_y(sign, shift) == a.substitute_y(sign, shift) + b.substitute_y(sign, shift)
        assert (a * b).substitute_y(sign, shift) == a.substitute_y(sign, shift) * b.substitute_y(sign, shift)


def test_coefficient_extraction():
    p = Y + 3 * Y**2 + Y**2 * Q + Y**3
    assert p.coefficient_of_y(2) == Poly.const(3) + Q
    assert p.coefficient_of_y(0).is_zero


def test_wire_format_roundtrip_and_order():
    p = Poly({(1, 0): 1, (0, 2): -3, (0, -1): 5})
    obj = p.to_json_obj()
    assert obj["vars"] == ["y", "q"]
    assert obj["terms"] == [[5, 0, -1], [-3, 0, 2], [1, 1, 0]]
    assert Poly.from_json_obj(json.loads(json.dumps(obj))) == p


def test_rendering():
    assert str(ZERO) == "0"
    assert str(Poly({(0, 0): 2, (0, 1): 5, (0, 2): 5, (0, 3): 3, (0, 4): 1})) == "2 + 5q + 5q^2 + 3q^3 + q^4"
    assert str(Y + Y**2) == "y + y^2"
    assert str(ONE - Y**2 * Q**2) == "1 - y^2q^2"
    assert str(Poly.monomial(-1, 0, -1)) == "-q^-1"


def test_half_exponent_ring():
    h = HalfExponentPoly.from_q_poly(ONE + Q)
    assert h.to_q_poly() == ONE + Q
    odd = HalfExponentPoly.monomial(1, 0, 3)
    with pytest.raises(HalfPowerResidueError):
        odd.to_q_poly()
    assert (odd - odd).is_zero
    assert (h * odd).odd_residue() == (h * odd).spoly


def test_evaluate():
    p = Y**2 * Q + 2 * Y
    assert p.evaluate(1, 1) == 3
    assert Poly.monomial(1, 0, -1).evaluate(1, 1) == 1
    with pytest.raises(ValueError):
        Poly.monomial(1, 0, -1).evaluate(1, 2)
