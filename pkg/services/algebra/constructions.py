# services/algebra/constructions.py
# Trivial extensions, bi-amalgamations, amalgamations and duplications,
# with the canonical ideals and subrings the theorem verifiers need.
#
# A bi-amalgamation lives inside B × C but the product is never materialised:
# its elements are enumerated as (f(a)+j, g(a)+j') over a ∈ A/I0, j ∈ J, j' ∈ J'
# and arithmetic is delegated componentwise to B and C.

from dataclasses import dataclass, field
from typing import NamedTuple

from shared.logging.logger import get_logger
from services.algebra.errors import ConductorMismatchError, InternalError, InvalidArgumentError
from services.algebra.homs import RingHom, hom_from_table, identity_hom, subset_inclusion
from services.algebra.ideals import (
    Ideal, ideal_from_elements, is_maximal_ideal, preimage_ideal,
)
from services.algebra.modules import FiniteModule, _coset_reps
from services.algebra.ring_core import FiniteRing, Provenance, check_cap, make_subset_ring

logger = get_logger(__name__)


# ── Trivial extension ─────────────────────────────────────────────────────────

class TrivialExtension(NamedTuple):
    ring:       FiniteRing
    inclusion:  RingHom     # a ↦ (a, 0)
    projection: RingHom     # (a, e) ↦ a


def trivext(A: FiniteRing, E: FiniteModule) -> TrivialExtension:
    """A ⋉ E on A × E with (a, e)(a', e') = (aa', ae' + a'e)."""
    if E.base is not A:
        raise InvalidArgumentError(f"{E.name} is not a module over {A.name}")
    name = f"{A.name} ⋉ {E.name}"
    check_cap(name, A.size * E.size)

    values = [(a, m) for a in A.elements for m in E.elements]
    R = FiniteRing(
        name       = name,
        values     = values,
        add        = lambda x, y: (A.add(x[0], y[0]), E.add(x[1], y[1])),
        mul        = lambda x, y: (A.mul(x[0], y[0]),
                                   E.add(E.act(x[0], y[1]), E.act(y[0], x[1]))),
        neg        = lambda x: (A.neg(x[0]), E.neg(x[1])),
        zero       = (A.zero, E.zero),
        one        = (A.one, E.zero),
        labels     = [f"({A.label(a)}, {E.label(m)})" for a, m in values],
        provenance = Provenance("trivext", (A.name, E.name), parents=(A, E)),
    )
    inclusion  = hom_from_table(A, R, [R.index_of((a, E.zero)) for a in A.elements], name="inj")
    projection = hom_from_table(R, A, [R.value(x)[0] for x in R.elements], name="proj")
    return TrivialExtension(R, inclusion, projection)


def module_ideal(T: TrivialExtension, I: Ideal) -> Ideal:
    """I ⋉ E: pairs (i, e) with i ∈ I, as an ideal of the trivial extension."""
    R = T.ring
    return ideal_from_elements(R, (x for x in R.elements if R.value(x)[0] in I.elements))


# ── Bi-amalgamation ───────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class BiAmalgConfig:
    """
    (f: A → B, g: A → C, J ⊆ B, J' ⊆ C) with f⁻¹(J) = g⁻¹(J') =: I0.
    Raises ConductorMismatchError naming the first a in exactly one preimage.
    """
    f:           RingHom
    g:           RingHom
    J:           Ideal
    J_prime:     Ideal
    description: str = ""
    I0:          Ideal = field(init=False)

    def __post_init__(self):
        if self.f.domain is not self.g.domain:
            raise InvalidArgumentError(
                f"f and g need a common domain: {self.f.domain.name} vs {self.g.domain.name}"
            )
        if self.J.ring is not self.f.codomain:
            raise InvalidArgumentError(f"J must be an ideal of {self.f.codomain.name}")
        if self.J_prime.ring is not self.g.codomain:
            raise InvalidArgumentError(f"J' must be an ideal of {self.g.codomain.name}")

        left  = preimage_ideal(self.f, self.J)
        right = preimage_ideal(self.g, self.J_prime)
        if left != right:
            a = min(left.elements ^ right.elements)
            raise ConductorMismatchError(a, self.A.label(a), a in left.elements)
        object.__setattr__(self, "I0", left)

    @property
    def A(self) -> FiniteRing:
        return self.f.domain

    @property
    def B(self) -> FiniteRing:
        return self.f.codomain

    @property
    def C(self) -> FiniteRing:
        return self.g.codomain

    def expected_size(self) -> int:
        return (self.A.size // self.I0.size) * self.J.size * self.J_prime.size

    def render(self) -> dict:
        return {
            "A": self.A.name, "B": self.B.name, "C": self.C.name,
            "J": self.J.render(), "J'": self.J_prime.render(), "I0": self.I0.render(),
        }


@dataclass(frozen=True, eq=False)
class BiAmalgRing:
    """The ring D = A ⋈^{f,g}(J, J') plus the (a, j, j') each element came from."""
    config:  BiAmalgConfig
    ring:    FiniteRing
    origins: tuple

    @property
    def size(self) -> int:
        return self.ring.size

    def projection_B(self) -> RingHom:
        D = self.ring
        return hom_from_table(D, self.config.B, [D.value(x)[0] for x in D.elements], name="pB")

    def projection_C(self) -> RingHom:
        D = self.ring
        return hom_from_table(D, self.config.C, [D.value(x)[1] for x in D.elements], name="pC")

    def element_of(self, a: int, j: int, j_prime: int) -> int:
        cfg = self.config
        return self.ring.index_of((cfg.B.add(cfg.f(a), j), cfg.C.add(cfg.g(a), j_prime)))

    def render(self) -> str:
        return self.ring.name


def biamalg(cfg: BiAmalgConfig, name: str = "") -> BiAmalgRing:
    A, B, C = cfg.A, cfg.B, cfg.C
    name = name or f"{A.name} ⋈ ({cfg.J.describe()}, {cfg.J_prime.describe()})"
    check_cap(name, cfg.expected_size())

    rep     = _coset_reps(A, cfg.I0)
    origins = {}
    for a in sorted(set(rep)):
        fa, ga = cfg.f(a), cfg.g(a)
        for j in cfg.J.elements:
            b = B.add(fa, j)
            for jp in cfg.J_prime.elements:
                origins.setdefault((b, C.add(ga, jp)), (a, j, jp))

    if len(origins) != cfg.expected_size():
        raise InternalError(
            f"{name}: enumerated {len(origins)} elements, size formula gives {cfg.expected_size()}"
        )

    values = sorted(origins)
    D = FiniteRing(
        name       = name,
        values     = values,
        add        = lambda x, y: (B.add(x[0], y[0]), C.add(x[1], y[1])),
        mul        = lambda x, y: (B.mul(x[0], y[0]), C.mul(x[1], y[1])),
        neg        = lambda x: (B.neg(x[0]), C.neg(x[1])),
        zero       = (B.zero, C.zero),
        one        = (B.one, C.one),
        labels     = [f"({B.label(b)}, {C.label(c)})" for b, c in values],
        provenance = Provenance("biamalg", (A.name, B.name, C.name), parents=(B, C)),
    )
    logger.info("Built bi-amalgamation", extra={"ring": name, "size": D.size, "op": "biamalg"})
    return BiAmalgRing(cfg, D, tuple(origins[v] for v in values))


def amalg(f: RingHom, J: Ideal, name: str = "") -> BiAmalgRing:
    """A ⋈^f J = A ⋈^{id_A, f}(f⁻¹(J), J)."""
    A   = f.domain
    cfg = BiAmalgConfig(identity_hom(A), f, preimage_ideal(f, J), J,
                        description=f"amalgamation of {A.name} along {J.describe()}")
    return biamalg(cfg, name=name or f"{A.name} ⋈^f {J.describe()}")


def duplicate(A: FiniteRing, I: Ideal, name: str = "") -> BiAmalgRing:
    """A ⋈ I = A ⋈^{id_A} I."""
    return amalg(identity_hom(A), I, name=name or f"{A.name} ⋈ {I.describe()}")


# ── Canonical ideals ──────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class CanonicalIdeals:
    D:                 BiAmalgRing
    zero_cross_Jprime: Ideal
    J_cross_zero:      Ideal

    def extend_prime(self, p: Ideal) -> Ideal:
        """P = {(f(a)+j, g(a)+j') : a ∈ p}; maximal in D for maximal p ⊇ I0."""
        cfg = self.D.config
        if p.ring is not cfg.A:
            raise InvalidArgumentError(f"{p!r} is not an ideal of {cfg.A.name}")
        if not cfg.I0 <= p:
            raise InvalidArgumentError(f"{p.describe()} does not contain I0 = {cfg.I0.describe()}")
        if not is_maximal_ideal(p):
            raise InvalidArgumentError(f"{p.describe()} is not a maximal ideal of {cfg.A.name}")

        members = {
            self.D.element_of(a, j, jp)
            for a in p.elements for j in cfg.J.elements for jp in cfg.J_prime.elements
        }
        P = ideal_from_elements(self.D.ring, members)
        if not is_maximal_ideal(P):
            raise InternalError(f"extension of {p.describe()} is not maximal in {self.D.ring.name}")
        return P


def canonical_ideals(D: BiAmalgRing) -> CanonicalIdeals:
    cfg, R = D.config, D.ring
    zero_cross = ideal_from_elements(R, (R.index_of((cfg.B.zero, jp)) for jp in cfg.J_prime.elements))
    cross_zero = ideal_from_elements(R, (R.index_of((j, cfg.C.zero)) for j in cfg.J.elements))
    return CanonicalIdeals(D, zero_cross, cross_zero)


# ── f(A) + J ──────────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Subring:
    ring:      FiniteRing
    inclusion: RingHom

    def restrict(self, I: Ideal) -> Ideal:
        """An ideal of the parent lying inside this subring, re-read as an ideal of it."""
        S = self.ring
        if not all(S.contains_value(x) for x in I.elements):
            raise InvalidArgumentError(f"{I!r} is not contained in {S.name}")
        return ideal_from_elements(S, (S.index_of(x) for x in I.elements))


def subring_of_fA_plus_J(f: RingHom, J: Ideal) -> Subring:
    B = f.codomain
    if J.ring is not B:
        raise InvalidArgumentError(f"J must be an ideal of {B.name}")
    members = {B.add(fa, j) for fa in f.image() for j in J.elements}
    S = make_subset_ring(
        parent  = B,
        members = members,
        one     = B.one,
        name    = f"f({f.domain.name}) + {J.describe()}",
        recipe  = "f(A)+J",
    )
    return Subring(S, subset_inclusion(S, B))
