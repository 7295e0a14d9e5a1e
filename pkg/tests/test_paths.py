"""Transfer sums, continued fractions, enumeration oracle, decomposition."""

import math

import pytest

from qeuler.errors import BudgetExceededError
from qeuler.paths import (
    CFSpec,
    UNIT_WEIGHT,
    Weight,
    WeightedPath,
    cf_series,
    derangement_motzkin_sum,
    enumerate_dyck_shapes,
    enumerate_family,
    euler_dyck_sum,
    family_sum_by_enumeration,
    laguerre_sum,
    large_laguerre_sum,
    left_factor_count,
    path_from_steps,
    penaud_decompose,
    schroder_signed_sum,
    secant_core_cf_spec,
    secant_core_path_sum,
    tangent_cf_spec,
    secant_cf_spec,
    tangent_core_cf_spec,
    tangent_core_path_sum,
    touchard_dyck_sum,
)
from qeuler.permutations import (
    alternating_31_2_poly,
    involution_crossing_poly,
    q_derangement_poly,
    q_eulerian_poly,
)
from qeuler.poly import ONE, Poly, Q, Y, poly_sum


def test_euler_dyck_values():
    assert euler_dyck_sum(1, 1) == ONE + Q
    assert euler_dyck_sum(0, 0) == ONE and euler_dyck_sum(0, 1) == ONE
    assert euler_dyck_sum(2, 0) == Poly({(0, 0): 2, (0, 1): 2, (0, 2): 1})
    for n in range(4):
        assert euler_dyck_sum(n, 1) == alternating_31_2_poly(2 * n + 1)
        assert euler_dyck_sum(n, 0) == alternating_31_2_poly(2 * n)


def test_laguerre_history_sums():
    assert laguerre_sum(1) == Y
    assert laguerre_sum(2) == Y + Y**2
    assert laguerre_sum(6).evaluate(1, 1) == 720
    for n in range(7):
        assert laguerre_sum(n) == q_eulerian_poly(n)
    for n in range(1, 8):
        assert large_laguerre_sum(n).evaluate(1, 1) == math.factorial(n)


def test_derangement_motzkin_sums():
    assert derangement_motzkin_sum(1).is_zero
    assert derangement_motzkin_sum(2) == Y
    assert derangement_motzkin_sum(3) == Y + Y**2 * Q
    for n in range(8):
        assert derangement_motzkin_sum(n) == q_derangement_poly(n)


def test_cf_series_examples():
    out = cf_series(tangent_cf_spec(), 2)
    assert out == [ONE, ONE + Q, Poly({(0, 0): 2, (0, 1): 5, (0, 2): 5, (0, 3): 3, (0, 4): 1})]
    catalan = cf_series(CFSpec("J", lambda h: ONE), 4)
    assert [p.evaluate(1, 1) for p in catalan] == [1, 1, 2, 5, 14]
    assert cf_series(secant_core_cf_spec(), 1)[1] == Q**2 - 2 * Q


def test_cf_series_depth_stability():
    for spec in (tangent_cf_spec(), secant_cf_spec(), secant_core_cf_spec(), tangent_core_cf_spec()):
        base = cf_series(spec, 9)
        assert base == cf_series(spec, 9, depth=10)
        assert base == cf_series(spec, 9, depth=11)
        assert base == cf_series(spec, 9, depth=14)


def test_cf_matches_transfer():
    tangent = cf_series(tangent_cf_spec(), 8)
    secant = cf_series(secant_cf_spec(), 8)
    for n in range(9):
        assert tangent[n] == euler_dyck_sum(n, 1)
        assert secant[n] == euler_dyck_sum(n, 0)


def test_core_path_sums():
    assert secant_core_path_sum(0) == ONE
    assert secant_core_path_sum(1) == Q**2 - 2 * Q
    assert tangent_core_path_sum(1) == -Q - Q**2 + Q**3
    with pytest.raises(BudgetExceededError):
        secant_core_path_sum(9)


def test_schroder_sums():
    assert schroder_signed_sum(0, "secant") == ONE
    assert schroder_signed_sum(1, "secant") == Q**2 - 2 * Q
    assert schroder_signed_sum(2, "secant") == 2 * Q**2 - 2 * Q**5 + Q**6
    for k in range(7):
        assert schroder_signed_sum(k, "secant") == secant_core_path_sum(k)
        assert schroder_signed_sum(k, "tangent") == tangent_core_path_sum(k)
    with pytest.raises(ValueError):
        schroder_signed_sum(1, "other")


def test_left_factor_count():
    assert left_factor_count(2, 0) == 1
    assert left_factor_count(4, 2) == 3
    assert left_factor_count(4, 6) == 0
    with pytest.raises(ValueError):
        left_factor_count(3, 1)
    with pytest.raises(ValueError):
        left_factor_count(4, 3)
    for n in range(5):
        for k in range(n + 2):
            assert left_factor_count(2 * n, 2 * k) == sum(
                1 for _ in enumerate_dyck_shapes(2 * n, 2 * k)
            )


def test_touchard_path_family():
    for n in range(5):
        assert touchard_dyck_sum(n) == involution_crossing_poly(2 * n)


def test_enumeration_oracle_matches_transfer():
    for n in range(5):
        assert family_sum_by_enumeration("euler_dyck_1", 2 * n) == euler_dyck_sum(n, 1)
        assert family_sum_by_enumeration("euler_dyck_0", 2 * n) == euler_dyck_sum(n, 0)
        assert family_sum_by_enumeration("touchard_dyck", 2 * n) == touchard_dyck_sum(n)
    for n in range(6):
        assert family_sum_by_enumeration("laguerre", n) == laguerre_sum(n)
        assert family_sum_by_enumeration("derangement_motzkin", n) == derangement_motzkin_sum(n)
        if n >= 1:
            assert family_sum_by_enumeration("large_laguerre", n - 1) == large_laguerre_sum(n)
    for k in range(4):
        assert family_sum_by_enumeration("secant_core", 2 * k, restricted=True) == secant_core_path_sum(k)
        assert family_sum_by_enumeration("tangent_core", 2 * k, restricted=True) == tangent_core_path_sum(k)
        assert family_sum_by_enumeration("schroder_secant", 2 * k) == secant_core_path_sum(k)
        assert family_sum_by_enumeration("schroder_tangent", 2 * k) == tangent_core_path_sum(k)


def test_path_validation_and_dump():
    p = path_from_steps("laguerre", [("U", Weight(1, 1, 0)), ("D", Weight(1, 0, 0))])
    assert p.dump() == "U[+1,1,0] D[+1,0,0]"
    assert p.weight() == Y
    with pytest.raises(ValueError):
        path_from_steps("laguerre", [("D", Weight(1, 0, 0))])
    with pytest.raises(ValueError):  # down from height 1 may not carry q
        path_from_steps("laguerre", [("U", Weight(1, 1, 0)), ("D", Weight(1, 0, 1))])
    with pytest.raises(ValueError):  # closed family must end at zero
        path_from_steps("laguerre", [("U", Weight(1, 1, 0))])


def test_penaud_examples():
    both_unit = path_from_steps("secant_core", [("U", UNIT_WEIGHT), ("D", UNIT_WEIGHT)])
    h1, h2 = penaud_decompose(both_unit)
    assert h1.shape() == "UD" and h1.final_height == 0 and h2.steps == ()
    mixed = path_from_steps("secant_core", [("U", UNIT_WEIGHT), ("D", Weight(-1, 0, 1))])
    h1, h2 = penaud_decompose(mixed)
    assert h1.shape() == "UU" and h2.shape() == "UD" and h2.weight() == -Q
    empty = path_from_steps("secant_core", [])
    assert penaud_decompose(empty) == (
        WeightedPath((), "left_factor"),
        WeightedPath((), "secant_core"),
    )


def test_penaud_bijection_small():
    for family in ("secant_core", "tangent_core"):
        for n in range(4):
            seen = set()
            count = 0
            for path in enumerate_family(family, 2 * n):
                h1, h2 = penaud_decompose(path)
                assert path.weight() == h2.weight()
                assert h1.final_height == len(h2.steps)
                key = (h1.shape(), tuple((s.direction, s.weight) for s in h2.steps))
                assert key not in seen
                seen.add(key)
                count += 1
            expected = sum(
                left_factor_count(2 * n, 2 * k)
                * sum(1 for _ in enumerate_family(family, 2 * k, restricted=True))
                for k in range(n + 1)
            )
            assert count == expected


def test_penaud_aggregate_identity():
    # total family weight = sum over heights of ballot count times core sum
    for family, core in (("secant_core", secant_core_path_sum), ("tangent_core", tangent_core_path_sum)):
        for n in range(4):
            total = family_sum_by_enumeration(family, 2 * n)
            expected = poly_sum(
                Poly.const(left_factor_count(2 * n, 2 * k)) * core(k) for k in range(n + 1)
            )
            assert total == expected
