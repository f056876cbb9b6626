# test_ideals.py
import sys

sys.path.insert(0, '.')

from itertools import combinations

import pytest

from services.algebra.errors import InvalidArgumentError, SizeLimitError
from services.algebra.ideals import (
    CombineKind, all_ideals, annihilator, check_ideal_closure, extend_ideal, ideal_combine,
    ideal_from_elements, ideal_square, is_maximal_ideal, is_prime_ideal, is_regular_ideal,
    jacobson_radical, kernel, maximal_ideals, preimage_ideal, quotient_ring, span, unit_ideal,
    zero_ideal,
)
from services.algebra.isomorphism import ring_isomorphic
from services.algebra.ring_core import (
    is_field, make_monomial_quotient, make_product, make_zmod, nilpotent_elements,
)


def small_rings() -> list:
    return [
        make_zmod(1), make_zmod(2), make_zmod(4), make_zmod(6), make_zmod(8), make_zmod(12),
        make_monomial_quotient(2, ["x"], {"x": 2}),
        make_monomial_quotient(2, ["x"], {"x": 3}),
        make_monomial_quotient(2, ["x", "y"], {"x": 2, "y": 2}),
        make_product(make_zmod(2), make_zmod(4)),
    ]


@pytest.fixture
def xy_ring():
    return make_monomial_quotient(2, ["x", "y"], {"x": 2, "y": 2})


# ── span ──────────────────────────────────────────────────────────────────────

def test_span_examples(xy_ring):
    Z4 = make_zmod(4)
    assert span(Z4, [2]).elements == {0, 2}
    assert span(Z4, []).is_zero
    m = span(xy_ring, [xy_ring.element("x"), xy_ring.element("y")])
    assert m.size == 8
    assert is_maximal_ideal(m)


def test_span_is_the_smallest_ideal_containing_its_generators():
    for R in small_rings():
        if R.size > 16:
            continue
        ideals = all_ideals(R)
        for gens in combinations(R.elements, 2):
            I = span(R, list(gens))
            check_ideal_closure(I)
            for K in ideals:
                if set(gens) <= K.elements:
                    assert I <= K


def test_span_rejects_foreign_generators():
    with pytest.raises(InvalidArgumentError):
        span(make_zmod(4), [7])


def test_ideal_from_elements_rejects_non_ideals():
    with pytest.raises(InvalidArgumentError):
        ideal_from_elements(make_zmod(4), {0, 1})


# ── Lattice operations ────────────────────────────────────────────────────────

def test_combine_examples():
    Z4, Z6 = make_zmod(4), make_zmod(6)
    two = span(Z4, [2])
    assert ideal_combine(CombineKind.PRODUCT, two, two).is_zero
    assert ideal_combine(CombineKind.COLON, zero_ideal(Z4), two).elements == {0, 2}
    assert ideal_combine("intersect", span(Z6, [2]), span(Z6, [3])).is_zero
    assert ideal_combine(CombineKind.SUM, span(Z6, [2]), span(Z6, [3])).is_unit_ideal


def test_combine_needs_a_common_ring():
    with pytest.raises(InvalidArgumentError):
        ideal_combine(CombineKind.SUM, span(make_zmod(4), [2]), span(make_zmod(4), [2]))


def test_square():
    Z8 = make_zmod(8)
    assert ideal_square(span(Z8, [2])).elements == {0, 4}
    assert ideal_square(unit_ideal(Z8)).is_unit_ideal


def test_annihilator():
    Z12 = make_zmod(12)
    assert annihilator(span(Z12, [4])).elements == {0, 3, 6, 9}


# ── Enumeration ───────────────────────────────────────────────────────────────

def test_all_ideals_counts(xy_ring):
    assert [I.size for I in all_ideals(make_zmod(4))] == [1, 2, 4]
    assert len(all_ideals(make_zmod(6))) == 4
    ideals = all_ideals(xy_ring)
    x, y   = span(xy_ring, [xy_ring.element("x")]), span(xy_ring, [xy_ring.element("y")])
    assert x in ideals and y in ideals
    assert not x <= y and not y <= x


def test_all_ideals_are_closed():
    for R in small_rings():
        for I in all_ideals(R):
            check_ideal_closure(I)


def test_all_ideals_respects_oracle_cap():
    with pytest.raises(SizeLimitError):
        all_ideals(make_zmod(65))


# ── Quotients, preimages ──────────────────────────────────────────────────────

def test_quotients():
    Z4 = make_zmod(4)
    Q, q = quotient_ring(Z4, span(Z4, [2]))
    assert Q.size == 2 and is_field(Q)
    assert kernel(q).elements == {0, 2}

    Z, _ = quotient_ring(Z4, unit_ideal(Z4))
    assert Z.is_zero_ring

    same, _ = quotient_ring(Z4, zero_ideal(Z4))
    assert ring_isomorphic(same, Z4).holds


def test_preimage_and_extension():
    Z4 = make_zmod(4)
    Q, q = quotient_ring(Z4, span(Z4, [2]))
    assert preimage_ideal(q, unit_ideal(Q)).is_unit_ideal
    assert extend_ideal(q, span(Z4, [2])).is_zero
    assert extend_ideal(q, unit_ideal(Z4)).is_unit_ideal


# ── Radical, maximal and regular ideals ───────────────────────────────────────

def test_jacobson_radical():
    assert jacobson_radical(make_zmod(4)).elements == {0, 2}
    assert jacobson_radical(make_zmod(6)).is_zero
    assert jacobson_radical(make_zmod(12)).elements == {0, 6}


def test_maximal_ideals():
    assert [I.elements for I in maximal_ideals(make_zmod(6))] == [{0, 3}, {0, 2, 4}]
    assert [I.elements for I in maximal_ideals(make_zmod(4))] == [{0, 2}]
    assert maximal_ideals(make_zmod(1)) == []


def test_prime_ideals():
    Z6 = make_zmod(6)
    assert is_prime_ideal(span(Z6, [2]))
    assert not is_prime_ideal(zero_ideal(Z6))
    assert not is_prime_ideal(unit_ideal(Z6))


def test_regular_ideals():
    Z4 = make_zmod(4)
    assert is_regular_ideal(span(Z4, [2])) == (False, None)
    assert is_regular_ideal(unit_ideal(Z4)) == (True, 1)


def test_no_proper_ideal_is_regular():
    for R in small_rings():
        if R.size > 16:
            continue
        for I in all_ideals(R):
            if I.is_proper:
                assert not is_regular_ideal(I)[0], f"{I!r} holds a regular element"


# ── Lattice laws ──────────────────────────────────────────────────────────────

@pytest.mark.parametrize("R", [R for R in small_rings() if R.size <= 16], ids=lambda R: R.name)
def test_product_and_colon_laws(R):
    ideals = all_ideals(R)
    for I in ideals:
        for K in ideals:
            IK = ideal_combine(CombineKind.PRODUCT, I, K)
            assert IK <= ideal_combine(CombineKind.INTERSECT, I, K)
            colon = ideal_combine(CombineKind.COLON, I, K)
            assert ideal_combine(CombineKind.PRODUCT, colon, K) <= I


@pytest.mark.parametrize("p, k", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_ideals_of_prime_power_rings_form_a_chain(p, k):
    R       = make_zmod(p ** k)
    ideals  = all_ideals(R)
    assert [I.size for I in ideals] == [p ** i for i in range(k + 1)]
    for I, K in combinations(ideals, 2):
        assert I <= K or K <= I


@pytest.mark.parametrize("R", small_rings(), ids=lambda R: R.name)
def test_jacobson_radical_is_the_nilradical(R):
    assert nilpotent_elements(R) <= jacobson_radical(R).elements
    assert jacobson_radical(R).elements == nilpotent_elements(R)
