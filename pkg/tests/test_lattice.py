import itertools
from decimal import Decimal
from fractions import Fraction

import pytest

from weaklin.errors import LatticeMismatchError
from weaklin.lattice import (BOOLEAN, GODEL, LUKASIEWICZ, ONE, PRODUCT, ZERO, FiniteChain,
                             generated_subalgebra, meet_all, join_all, parse_lattice, saturate,
                             truth)

Q = Fraction
ALL = [BOOLEAN, GODEL, LUKASIEWICZ, PRODUCT, FiniteChain(5)]
GRID = [Q(k, 10) for k in range(11)]


def sample(lat):
    return lat.elements() or GRID


def test_truth_parses_exact_forms():
    assert truth("0.3") == Q(3, 10)
    assert truth("3/10") == Q(3, 10)
    assert truth(Decimal("0.25")) == Q(1, 4)
    assert truth(1) == ONE
    with pytest.raises(TypeError):
        truth(0.3)
    with pytest.raises(ValueError):
        truth("1.5")


def test_godel_operations():
    assert GODEL.otimes(Q(3, 10), Q(7, 10)) == Q(3, 10)
    assert GODEL.residuum(Q(7, 10), Q(3, 10)) == Q(3, 10)
    assert GODEL.residuum(Q(3, 10), Q(7, 10)) == ONE
    assert GODEL.biresiduum(Q(1, 2), Q(1, 2)) == ONE


def test_lukasiewicz_operations():
    assert LUKASIEWICZ.otimes(Q(7, 10), Q(6, 10)) == Q(3, 10)
    assert LUKASIEWICZ.otimes(Q(3, 10), Q(4, 10)) == ZERO
    assert LUKASIEWICZ.residuum(Q(7, 10), Q(3, 10)) == Q(6, 10)


def test_product_operations():
    assert PRODUCT.otimes(Q(1, 2), Q(1, 2)) == Q(1, 4)
    assert PRODUCT.residuum(Q(1, 2), Q(1, 4)) == Q(1, 2)
    assert PRODUCT.residuum(Q(1, 4), Q(1, 2)) == ONE


def test_chain_uses_indices_over_n():
    c = FiniteChain(4)
    assert c.element(3) == Q(3, 4)
    assert c.index(Q(1, 2)) == 2
    # a_k (x) a_l = a_max(k+l-n, 0)
    assert c.otimes(c.element(3), c.element(2)) == c.element(1)
    assert not c.contains(Q(1, 3))
    with pytest.raises(LatticeMismatchError):
        c.otimes(Q(1, 3), ONE)


def test_boolean_is_two_element_chain():
    assert BOOLEAN.elements() == (ZERO, ONE)
    for x, y in itertools.product((ZERO, ONE), repeat=2):
        assert BOOLEAN.otimes(x, y) == min(x, y)
        assert BOOLEAN.residuum(x, y) == (ONE if x <= y else ZERO)


@pytest.mark.parametrize("lat", ALL, ids=lambda l: l.name)
def test_adjunction_on_sample(lat):
    xs = sample(lat)
    for x, y, z in itertools.product(xs, repeat=3):
        assert (lat.otimes(x, y) <= z) == (x <= lat.residuum(y, z))


@pytest.mark.parametrize("lat", ALL, ids=lambda l: l.name)
def test_monoid_laws(lat):
    xs = sample(lat)
    for x in xs:
        assert lat.otimes(x, ONE) == x
    for x, y in itertools.product(xs, repeat=2):
        assert lat.otimes(x, y) == lat.otimes(y, x)
    for x, y, z in itertools.product(xs[::2], repeat=3):
        assert lat.otimes(lat.otimes(x, y), z) == lat.otimes(x, lat.otimes(y, z))


def test_empty_meet_and_join():
    assert meet_all(GODEL, []) == ONE
    assert join_all(GODEL, []) == ZERO
    assert GODEL.meet_all([Q(1, 2), Q(1, 3)]) == Q(1, 3)


def test_parse_lattice():
    assert parse_lattice("Godel") is GODEL
    assert parse_lattice("chain:1") is BOOLEAN
    assert parse_lattice("chain:7").n == 7
    assert parse_lattice("goguen") is PRODUCT
    with pytest.raises(ValueError):
        parse_lattice("heyting")
    with pytest.raises(ValueError):
        parse_lattice("chain:x")


def test_generated_subalgebra_godel_adds_only_bounds():
    seeds = {Q(3, 10), Q(7, 10)}
    assert generated_subalgebra(GODEL, seeds) == frozenset(seeds | {ZERO, ONE})


def test_generated_subalgebra_lukasiewicz_is_uniform_grid():
    out = generated_subalgebra(LUKASIEWICZ, {Q(1, 4), Q(1, 6)})
    assert out == frozenset(Q(k, 12) for k in range(13))
    # the fast path agrees with plain saturation
    assert saturate(LUKASIEWICZ, {Q(1, 4), Q(1, 6)}, 100) == out


def test_generated_subalgebra_product_exceeds_cap():
    assert generated_subalgebra(PRODUCT, {Q(1, 2)}, cap=50) is None
    assert generated_subalgebra(PRODUCT, {ONE}, cap=50) == frozenset({ZERO, ONE})


def test_lattice_equality_by_name():
    assert FiniteChain(3) == FiniteChain(3)
    assert FiniteChain(3) != FiniteChain(4)
    assert GODEL != LUKASIEWICZ


def test_product_shortcut_agrees_with_saturation():
    for seeds in ({Q(1, 2)}, {Q(9, 10), ONE}, {Q(1, 3), Q(2, 3)}):
        assert generated_subalgebra(PRODUCT, seeds, cap=4096) is None
        assert saturate(PRODUCT, seeds, 200) is None
    assert generated_subalgebra(PRODUCT, {ZERO, ONE}) == saturate(PRODUCT, {ONE}, 10)
