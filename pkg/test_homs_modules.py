# test_homs_modules.py
import sys

sys.path.insert(0, '.')

import pytest

from services.algebra.constructions import module_ideal, trivext
from services.algebra.errors import InvalidArgumentError, NotAHomomorphismError, SizeLimitError
from services.algebra.homs import (
    hom_compose, hom_from_table, identity_hom, product_projections, subset_inclusion,
)
from services.algebra.ideals import kernel, preimage_ideal, quotient_ring, span, unit_ideal
from services.algebra.modules import make_module
from services.algebra.ring_core import make_product, make_subset_ring, make_zmod
from shared.config.settings import override_settings, restore_settings


# ── Homomorphisms ─────────────────────────────────────────────────────────────

def test_identity_table_is_valid():
    Z4 = make_zmod(4)
    h  = hom_from_table(Z4, Z4, range(4))
    assert h.is_injective() and h.is_surjective()


def test_reduction_mod_2():
    h = hom_from_table(make_zmod(4), make_zmod(2), [0, 1, 0, 1])
    assert kernel(h).elements == {0, 2}
    assert h.is_surjective() and not h.is_injective()


def test_map_of_one_must_be_one():
    Z4 = make_zmod(4)
    with pytest.raises(NotAHomomorphismError) as excinfo:
        hom_from_table(Z4, Z4, [0, 2, 0, 2])
    assert excinfo.value.identity == "map(1) = 1"


def test_non_additive_map_names_its_witness():
    with pytest.raises(NotAHomomorphismError) as excinfo:
        hom_from_table(make_zmod(3), make_zmod(3), [0, 1, 1])
    assert excinfo.value.witness


def test_partial_table_rejected():
    Z4 = make_zmod(4)
    with pytest.raises(NotAHomomorphismError):
        hom_from_table(Z4, Z4, {0: 0, 1: 1})


def test_compose_quotient_after_inclusion():
    A1 = make_zmod(4)
    m1 = span(A1, [2])
    TA = trivext(A1, make_module(A1, [m1]))
    m  = module_ideal(TA, m1)
    _, q = quotient_ring(TA.ring, m)
    composite = hom_compose(q, TA.inclusion)
    assert composite.domain is A1
    assert kernel(composite) == m1


def test_compose_mismatched_rings():
    Z4, Z2 = make_zmod(4), make_zmod(2)
    with pytest.raises(InvalidArgumentError):
        hom_compose(identity_hom(Z4), identity_hom(Z2))


def test_preimage_of_unit_ideal():
    h = hom_from_table(make_zmod(4), make_zmod(2), [0, 1, 0, 1])
    assert preimage_ideal(h, unit_ideal(h.codomain)).is_unit_ideal


def test_product_projections():
    P = make_product(make_zmod(2), make_zmod(3))
    pi1, pi2 = product_projections(P)
    assert pi1.codomain.size == 2 and pi2.codomain.size == 3
    assert kernel(pi1).size == 3
    with pytest.raises(InvalidArgumentError):
        product_projections(make_zmod(6))


def test_subset_inclusion_of_a_subring():
    R = make_zmod(6)
    S = make_subset_ring(R, {0, 3}, one=3, name="3Z/6", recipe="test")
    assert S.size == 2
    # 3·Z/6 is a ring with identity 3, but its inclusion is not unital
    with pytest.raises(NotAHomomorphismError):
        subset_inclusion(S, R)


def test_render_uses_labels():
    h = hom_from_table(make_zmod(4), make_zmod(2), [0, 1, 0, 1])
    assert h.render()["map"] == {"0": "0", "1": "1", "2": "0", "3": "1"}


# ── Modules ───────────────────────────────────────────────────────────────────

def test_cyclic_module():
    Z4 = make_zmod(4)
    E  = make_module(Z4, [span(Z4, [2])])
    e  = E.basis_element(1)
    assert E.size == 2
    assert E.label(e) == "e1"
    assert E.act(2, e) == E.zero
    assert E.act(3, e) == e
    E.verify_module_axioms()


def test_two_copies():
    Z4 = make_zmod(4)
    E  = make_module(Z4, [span(Z4, [2])], copies=2, symbol="u")
    assert E.size == 4
    assert E.element("u1+u2") == E.add(E.basis_element(1), E.basis_element(2))
    E.verify_module_axioms()


def test_coefficients_are_written_before_the_basis_symbol():
    Z9 = make_zmod(9)
    E  = make_module(Z9, [span(Z9, [3])])
    assert E.label(E.act(2, E.basis_element(1))) == "2e1"


def test_module_arguments_are_checked():
    Z4 = make_zmod(4)
    with pytest.raises(InvalidArgumentError):
        make_module(Z4, [span(Z4, [2])], copies=0)
    with pytest.raises(InvalidArgumentError):
        make_module(Z4, [span(Z4, [2])], symbol="e1")
    with pytest.raises(InvalidArgumentError):
        make_module(Z4, [span(make_zmod(4), [2])])


def test_module_cap():
    previous = override_settings(max_elements=8)
    try:
        Z4 = make_zmod(4)
        with pytest.raises(SizeLimitError):
            make_module(Z4, [span(Z4, [0])], copies=2)
    finally:
        restore_settings(previous)
