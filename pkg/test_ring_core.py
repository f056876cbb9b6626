# test_ring_core.py
import sys

sys.path.insert(0, '.')

import pytest

from shared.config.settings import override_settings, restore_settings
from services.algebra.errors import InfiniteRingError, InternalError, InvalidArgumentError, SizeLimitError
from services.algebra.ring_core import (
    ElementClass, FiniteRing, Provenance, classify_element, idempotents, is_field,
    make_monomial_quotient, make_product, make_zmod, nilpotent_elements, regular_elements,
    verify_ring_axioms,
)


@pytest.fixture
def cap_8():
    previous = override_settings(max_elements=8)
    yield
    restore_settings(previous)


@pytest.fixture
def xy_ring():
    return make_monomial_quotient(2, ["x", "y"], {"x": 2, "y": 2})


# ── Constructors ──────────────────────────────────────────────────────────────

def test_zmod_4():
    R = make_zmod(4)
    assert R.size == 4
    assert R.mul(2, 2) == R.zero
    assert R.units == {1, 3}
    verify_ring_axioms(R)


def test_zmod_1_is_the_zero_ring():
    R = make_zmod(1)
    assert R.is_zero_ring
    assert R.zero == R.one
    verify_ring_axioms(R)


def test_zmod_6_zero_divisors():
    R = make_zmod(6)
    assert R.mul(3, 2) == R.zero
    zd = {a for a in R.elements if classify_element(R, a) is ElementClass.ZERO_DIVISOR}
    assert zd == {2, 3, 4}


def test_zmod_rejects_nonpositive():
    with pytest.raises(InvalidArgumentError):
        make_zmod(0)


def test_monomial_quotient_two_variables(xy_ring):
    R = xy_ring
    assert R.size == 16
    x, y = R.element("x"), R.element("y")
    assert R.mul(x, x) == R.zero
    assert R.mul(x, y) == R.element("xy")
    assert R.label(R.add(x, y)) == "x+y"
    verify_ring_axioms(R)


def test_monomial_quotient_one_variable():
    R = make_monomial_quotient(2, ["x"], {"x": 2})
    x = R.element("x")
    assert R.size == 4
    assert R.mul(x, x) == R.zero


def test_monomial_quotient_extra_relations():
    R = make_monomial_quotient(2, ["x", "y"], {"x": 2, "y": 2}, ["xy"])
    assert R.size == 8
    assert R.mul(R.element("x"), R.element("y")) == R.zero


def test_monomial_quotient_relations_only():
    R = make_monomial_quotient(3, ["x"], None, ["x^2"])
    assert R.size == 9
    assert R.mul(R.element("x"), R.element("x")) == R.zero


def test_monomial_quotient_infinite():
    with pytest.raises(InfiniteRingError):
        make_monomial_quotient(2, ["x", "y"], {"x": 2})


def test_monomial_quotient_needs_prime():
    with pytest.raises(InvalidArgumentError):
        make_monomial_quotient(4, ["x"], {"x": 2})


def test_product_sizes_and_arithmetic():
    P = make_product(make_zmod(4), make_zmod(4))
    assert P.size == 16
    assert P.mul(P.element("(2, 0)"), P.element("(0, 2)")) == P.zero
    assert make_product(make_zmod(2), make_zmod(3)).size == 6
    verify_ring_axioms(P)


def test_product_with_zero_ring():
    P = make_product(make_zmod(1), make_zmod(5))
    assert P.size == 5
    assert is_field(P)


def test_size_cap(cap_8):
    make_zmod(8)
    with pytest.raises(SizeLimitError):
        make_zmod(9)
    with pytest.raises(SizeLimitError):
        make_product(make_zmod(4), make_zmod(4))


# ── Element sets ──────────────────────────────────────────────────────────────

def test_classify_element():
    R = make_zmod(6)
    assert classify_element(R, 5) is ElementClass.UNIT
    assert classify_element(R, 3) is ElementClass.ZERO_DIVISOR
    assert classify_element(R, 0) is ElementClass.ZERO


def test_regular_elements():
    assert regular_elements(make_zmod(4)) == {1, 3}
    assert regular_elements(make_zmod(6)) == {1, 5}


def test_regular_elements_have_constant_term_one(xy_ring):
    R   = xy_ring
    reg = regular_elements(R)
    assert len(reg) == 8
    assert all(R.value(a)[0] == 1 for a in reg)
    assert reg == R.units


def test_idempotents():
    assert idempotents(make_zmod(4)) == {0, 1}
    assert idempotents(make_zmod(6)) == {0, 1, 3, 4}
    assert idempotents(make_monomial_quotient(3, ["x"], {"x": 2})) == {0, 1}


def test_nilpotents_and_fields():
    assert nilpotent_elements(make_zmod(8)) == {0, 2, 4, 6}
    assert is_field(make_zmod(5))
    assert not is_field(make_zmod(4))
    assert not is_field(make_zmod(1))


def test_element_literals_ignore_spaces():
    P = make_product(make_zmod(2), make_zmod(3))
    assert P.element("(1,2)") == P.element("( 1, 2 )")
    with pytest.raises(InvalidArgumentError):
        P.element("(2, 2)")


# ── Axioms ────────────────────────────────────────────────────────────────────

def test_axiom_check_catches_a_broken_table():
    broken = FiniteRing(
        name       = "broken",
        values     = range(3),
        add        = lambda x, y: (x + y) % 3,
        mul        = lambda x, y: (x * y + x) % 3 if x != 1 else y,
        neg        = lambda x: (-x) % 3,
        zero       = 0,
        one        = 1,
        labels     = ["0", "1", "2"],
        provenance = Provenance("test"),
    )
    with pytest.raises(InternalError):
        verify_ring_axioms(broken)


def test_axioms_sampled_above_the_exhaustive_cap():
    R = make_product(make_zmod(9), make_zmod(8))
    verify_ring_axioms(R, exhaustive_cap=64, samples=2_000, seed=3)


def test_duplicate_labels_rejected():
    with pytest.raises(InternalError):
        FiniteRing("dup", range(2), lambda x, y: (x + y) % 2, lambda x, y: x * y,
                   lambda x: x, 0, 1, ["a", "a"], Provenance("test"))
