# test_constructions.py
import sys

sys.path.insert(0, '.')

import pytest

from services.algebra.constructions import (
    BiAmalgConfig, amalg, biamalg, canonical_ideals, duplicate, module_ideal,
    subring_of_fA_plus_J, trivext,
)
from services.algebra.errors import ConductorMismatchError, InvalidArgumentError, SizeLimitError
from services.algebra.homs import hom_from_table, identity_hom
from services.algebra.ideals import (
    ideal_square, is_maximal_ideal, kernel, maximal_ideals, preimage_ideal, quotient_ring, span,
    unit_ideal, zero_ideal,
)
from services.algebra.isomorphism import ring_isomorphic
from services.algebra.modules import make_module
from services.algebra.ring_core import (
    is_field, make_monomial_quotient, make_product, make_zmod, verify_ring_axioms,
)
from services.harness.paper_examples import build_example_2_5, build_example_2_7
from services.harness.random_configs import random_config
from shared.config.settings import override_settings, restore_settings


@pytest.fixture(scope="module")
def example_2_5():
    return build_example_2_5()


@pytest.fixture(scope="module")
def example_2_7():
    return build_example_2_7()


def _values(R) -> list:
    return [R.value(x) for x in R.elements]


# ── Trivial extension ─────────────────────────────────────────────────────────

def test_trivext_of_z4_by_residue_field():
    Z4 = make_zmod(4)
    T  = trivext(Z4, make_module(Z4, [span(Z4, [2])]))
    R  = T.ring
    a  = R.element("(2, e1)")
    assert R.size == 8
    assert R.mul(a, a) == R.zero
    assert kernel(T.projection).size == 2
    assert T.inclusion.is_injective()
    verify_ring_axioms(R)


def test_trivext_rejects_foreign_module():
    Z4 = make_zmod(4)
    E  = make_module(Z4, [span(Z4, [2])])
    with pytest.raises(InvalidArgumentError):
        trivext(make_zmod(4), E)


def test_module_ideal_size():
    Z4 = make_zmod(4)
    m1 = span(Z4, [2])
    T  = trivext(Z4, make_module(Z4, [m1]))
    assert module_ideal(T, m1).size == 4
    assert module_ideal(T, zero_ideal(Z4)).size == 2


# ── Worked examples ───────────────────────────────────────────────────────────

def test_example_2_5_pieces(example_2_5):
    cfg = example_2_5
    assert cfg.A.size == 8 and cfg.B.size == 16 and cfg.C.size == 4
    (mB,) = maximal_ideals(cfg.B)
    assert mB.size == 8
    assert cfg.J.size == 8 and cfg.J_prime.size == 2
    assert ideal_square(cfg.J).is_zero
    assert cfg.I0.size == 4


def test_example_sizes(example_2_5, example_2_7):
    assert biamalg(example_2_5).size == 32
    D = biamalg(example_2_7)
    assert D.size == 256
    assert example_2_7.I0.is_zero


def test_biamalg_is_a_ring(example_2_5):
    D = biamalg(example_2_5)
    verify_ring_axioms(D.ring)
    assert len(D.origins) == D.size
    for x, (a, j, jp) in enumerate(D.origins):
        assert D.element_of(a, j, jp) == x


def test_biamalg_respects_the_cap(example_2_5):
    previous = override_settings(max_elements=16)
    try:
        with pytest.raises(SizeLimitError):
            biamalg(example_2_5)
    finally:
        restore_settings(previous)


def test_conductor_mismatch():
    Z4 = make_zmod(4)
    with pytest.raises(ConductorMismatchError) as excinfo:
        BiAmalgConfig(identity_hom(Z4), identity_hom(Z4), span(Z4, [2]), zero_ideal(Z4))
    assert excinfo.value.witness == Z4.element("2")


def test_config_needs_a_common_domain():
    Z4, Z2 = make_zmod(4), make_zmod(2)
    with pytest.raises(InvalidArgumentError):
        BiAmalgConfig(identity_hom(Z4), identity_hom(Z2), zero_ideal(Z4), zero_ideal(Z2))


# ── Amalgamation and duplication ──────────────────────────────────────────────

def test_amalgamation_sizes():
    Z4 = make_zmod(4)
    f  = identity_hom(Z4)
    assert amalg(f, span(Z4, [2])).size == 8

    diagonal = amalg(f, zero_ideal(Z4))
    assert diagonal.size == 4
    assert ring_isomorphic(diagonal.ring, Z4).holds

    full = amalg(f, unit_ideal(Z4))
    assert full.size == 16
    assert ring_isomorphic(full.ring, make_product(Z4, make_zmod(4))).holds


def test_duplication_of_z6():
    Z6 = make_zmod(6)
    D  = duplicate(Z6, span(Z6, [2]))
    assert D.size == 18
    assert D.config.I0.elements == span(Z6, [2]).elements


def test_amalgamation_is_a_bi_amalgamation():
    Z4, Z2 = make_zmod(4), make_zmod(2)
    f  = hom_from_table(Z4, Z2, [0, 1, 0, 1])
    J  = unit_ideal(Z2)
    D1 = amalg(f, J)
    D2 = biamalg(BiAmalgConfig(identity_hom(Z4), f, preimage_ideal(f, J), J))
    assert _values(D1.ring) == _values(D2.ring)


def test_projections():
    Z6 = make_zmod(6)
    D  = duplicate(Z6, span(Z6, [3]))
    assert D.projection_B().is_surjective()
    assert D.projection_C().is_surjective()


# ── Canonical ideals and f(A) + J ─────────────────────────────────────────────

def test_canonical_ideals(example_2_5):
    D     = biamalg(example_2_5)
    ideals = canonical_ideals(D)
    assert ideals.zero_cross_Jprime.size == 2
    assert ideals.J_cross_zero.size == 8


def test_extend_prime(example_2_5):
    D = biamalg(example_2_5)
    (m,) = maximal_ideals(example_2_5.A)
    P = canonical_ideals(D).extend_prime(m)
    assert P.size == 16
    assert is_maximal_ideal(P)
    with pytest.raises(InvalidArgumentError):
        canonical_ideals(D).extend_prime(unit_ideal(example_2_5.A))


def test_extend_prime_needs_I0():
    Z6 = make_zmod(6)
    D  = duplicate(Z6, span(Z6, [2]))
    with pytest.raises(InvalidArgumentError):
        canonical_ideals(D).extend_prime(span(Z6, [3]))


def test_fA_plus_J_of_a_surjection_is_everything():
    Z4, Z2 = make_zmod(4), make_zmod(2)
    f = hom_from_table(Z4, Z2, [0, 1, 0, 1])
    S = subring_of_fA_plus_J(f, zero_ideal(Z2))
    assert S.ring.size == Z2.size
    assert S.inclusion.is_surjective()


def test_fA_plus_J_inside_a_trivial_extension(example_2_5):
    S = subring_of_fA_plus_J(example_2_5.f, example_2_5.J)
    assert S.ring.size == 16
    assert S.restrict(example_2_5.J).size == 8


# ── Amalgamation as a set of pairs ────────────────────────────────────────────

def amalgamation_instances() -> list:
    Z4, Z2, Z6, Z8 = make_zmod(4), make_zmod(2), make_zmod(6), make_zmod(8)
    to_Z2  = hom_from_table(Z4, Z2, [0, 1, 0, 1])
    Q8, q8 = quotient_ring(Z8, span(Z8, [4]))
    Q6, q6 = quotient_ring(Z6, span(Z6, [3]))
    P      = make_product(Z2, make_zmod(3))
    crt    = hom_from_table(Z6, P, [P.element(f"({a % 2}, {a % 3})") for a in range(6)])
    X      = make_monomial_quotient(2, ["x"], {"x": 2})
    QX, qx = quotient_ring(X, span(X, [X.element("x")]))
    return [
        ("Z4 -> Z2, J = Z2",        to_Z2, unit_ideal(Z2)),
        ("Z4 -> Z2, J = 0",         to_Z2, zero_ideal(Z2)),
        ("Z4 id, J = (2)",          identity_hom(Z4), span(Z4, [2])),
        ("Z8 -> Z8/(4), J = (2)",   q8, span(Q8, [q8(Z8.element("2"))])),
        ("Z6 -> Z6/(3), J = unit",  q6, unit_ideal(Q6)),
        ("Z6 -> Z2 x Z3, J = (1,0)", crt, span(P, [P.element("(1, 0)")])),
        ("F2[x]/(x^2) -> F2, J = 0", qx, zero_ideal(QX)),
    ]


@pytest.mark.parametrize("label, f, J", amalgamation_instances(), ids=lambda v: v if isinstance(v, str) else None)
def test_amalgamation_is_the_set_of_pairs(label, f, J):
    A, B = f.domain, f.codomain
    D    = amalg(f, J)
    expected = {(a, B.add(f(a), j)) for a in A.elements for j in J.elements}
    assert set(_values(D.ring)) == expected, label
    assert D.size == len(expected)

    same = biamalg(BiAmalgConfig(identity_hom(A), f, preimage_ideal(f, J), J))
    assert _values(D.ring) == _values(same.ring)
    verify_ring_axioms(D.ring)


# ── Extending maximal ideals ──────────────────────────────────────────────────

def _assert_extensions_are_maximal(cfg) -> int:
    D       = biamalg(cfg)
    checked = 0
    for p in maximal_ideals(cfg.A):
        if not cfg.I0 <= p:
            continue
        P    = canonical_ideals(D).extend_prime(p)
        Q, _ = quotient_ring(D.ring, P)
        R, _ = quotient_ring(cfg.A, p)
        assert is_field(Q), f"{cfg.description}: D/P is not a field for p = {p.describe()}"
        assert Q.size == R.size
        checked += 1
    return checked


def test_extended_primes_of_the_examples(example_2_5, example_2_7):
    assert _assert_extensions_are_maximal(example_2_5) == 1
    assert _assert_extensions_are_maximal(example_2_7) == 1


def test_extended_primes_of_random_configs():
    checked = sum(_assert_extensions_are_maximal(random_config(s, max_elements=64)) for s in range(10))
    assert checked > 0
