"""The path encoding of permutations and its structural consequences."""

import math
from itertools import permutations as itperms

import pytest

from qeuler.bijections import (
    francon_viennot,
    lift_append_one,
    lifted_francon_viennot,
    returns_to_zero_early,
    saturated_step_free,
)
from qeuler.paths import euler_dyck_sum, laguerre_sum
from qeuler.permutations import ascents, is_alternating, pattern_31_2
from qeuler.poly import Poly, poly_sum

FIG = (4, 3, 7, 1, 2, 6, 5)


def test_figure_example():
    image = francon_viennot(FIG)
    assert image.size == 7
    assert image.path.dump() == (
        "U[+1,1,0] F[+1,1,1] U[+1,1,0] D[+1,0,0] U[+1,1,1] D[+1,0,1] D[+1,0,0]"
    )
    assert image.path.weight() == Poly.monomial(1, 4, 3)


def test_small_images():
    assert francon_viennot((1,)).path.dump() == "F[+1,1,0]"
    assert francon_viennot((2, 1)).path.dump() == "U[+1,1,0] D[+1,0,0]"
    ident = francon_viennot((1, 2, 3, 4)).path
    assert ident.shape() == "FFFF"
    assert all(s.start_height == 0 and s.weight.ypow == 1 for s in ident.steps)
    with pytest.raises(ValueError):
        francon_viennot(())


def test_weight_property_exhaustive():
    for n in range(1, 7):
        for p in itperms(range(1, n + 1)):
            image = francon_viennot(p)
            assert image.path.weight() == Poly.monomial(1, ascents(p), pattern_31_2(p))


def test_injectivity_and_cardinality():
    for n in range(1, 7):
        images = {
            tuple((s.direction, s.weight) for s in francon_viennot(p).path.steps)
            for p in itperms(range(1, n + 1))
        }
        assert len(images) == math.factorial(n) == laguerre_sum(n).evaluate(1, 1)


def test_lift():
    assert lift_append_one((2, 1)) == (3, 2, 1)
    assert lift_append_one((1, 2)) == (2, 3, 1)
    assert lift_append_one((2, 3, 1)) == (3, 4, 2, 1)


def test_lifted_images():
    full, reduced = lifted_francon_viennot((1,))
    assert full.path.shape() == "UD" and reduced.steps == ()
    full, reduced = lifted_francon_viennot((2, 3, 1))
    assert full.path.shape() == "UFFD"
    assert full.path.weight() == Poly.monomial(1, 2, 0)
    full, reduced = lifted_francon_viennot((2, 1))
    assert full.path.weight() == Poly.monomial(1, 1, 0)


def test_saturated_step_criterion():
    assert saturated_step_free((3, 2, 1))
    assert not saturated_step_free((1, 2, 3))
    assert saturated_step_free((3, 4, 2, 1))
    for n in range(1, 7):
        for p in itperms(range(1, n + 1)):
            assert saturated_step_free(p) == (p[-1] == 1)
            if n > 1 and p[-1] == 1:
                assert not returns_to_zero_early(francon_viennot(p).path)


def test_alternating_characterizations():
    for n in (2, 4, 6):
        for p in itperms(range(1, n + 1)):
            assert is_alternating(p) == (not francon_viennot(p).path.has_flat())
    for n in (1, 3, 5):
        for p in itperms(range(1, n + 1)):
            full, reduced = lifted_francon_viennot(p)
            assert is_alternating(p) == (not reduced.has_flat())
            assert reduced.has_flat() == full.path.has_flat()


def test_signed_reduced_path_sums():
    # flats cancel at y = -1; odd sizes leave (-1)^((n-1)/2) times the
    # q-tangent value, even sizes vanish outright
    for n in range(1, 7):
        total = poly_sum(
            lifted_francon_viennot(p)[1].weight() for p in itperms(range(1, n + 1))
        )
        value = total.substitute_y(-1)
        if n % 2 == 0:
            assert value.is_zero
        else:
            assert value == Poly.const((-1) ** ((n - 1) // 2)) * euler_dyck_sum(n // 2, 1)
