# services/algebra/homs.py
# Validated unital ring homomorphisms between finite rings, stored as total tables.
# Structural constructors (identity, projections, inclusions, composition) are
# the normal way in; hom_from_table stays available for arbitrary maps.

import random
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Mapping, Sequence, Union

from constants import EXHAUSTIVE_CAP, SAMPLED_TRIPLES
from services.algebra.errors import InvalidArgumentError, NotAHomomorphismError
from services.algebra.ring_core import FiniteRing


@dataclass(frozen=True, eq=False)
class RingHom:
    domain:   FiniteRing
    codomain: FiniteRing
    table:    tuple
    name:     str = ""

    def __call__(self, a: int) -> int:
        return self.table[a]

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"RingHom({label}{self.domain.name} -> {self.codomain.name})"

    def image(self) -> frozenset:
        return frozenset(self.table)

    def is_injective(self) -> bool:
        return len(set(self.table)) == self.domain.size

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.codomain.size

    def validate(
        self,
        exhaustive_cap: int = EXHAUSTIVE_CAP,
        samples:        int = SAMPLED_TRIPLES,
        seed:           int = 0,
    ) -> None:
        """
        Checks map(0)=0, map(1)=1, additivity and multiplicativity:
        on all pairs for domains up to `exhaustive_cap` elements, on `samples`
        random pairs above. Raises NotAHomomorphismError with the witness pair.
        """
        A, B, h = self.domain, self.codomain, self.table
        if h[A.zero] != B.zero:
            raise NotAHomomorphismError("map(0) = 0", (A.label(A.zero), B.label(h[A.zero])))
        if h[A.one] != B.one:
            raise NotAHomomorphismError("map(1) = 1", (A.label(A.one), B.label(h[A.one])))

        n = A.size
        if n <= exhaustive_cap:
            pairs = cartesian(range(n), repeat=2)
        else:
            rng   = random.Random(seed)
            pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(samples))

        for a, b in pairs:
            if h[A.add(a, b)] != B.add(h[a], h[b]):
                raise NotAHomomorphismError("map(a+b) = map(a)+map(b)", (A.label(a), A.label(b)))
            if h[A.mul(a, b)] != B.mul(h[a], h[b]):
                raise NotAHomomorphismError("map(ab) = map(a)map(b)", (A.label(a), A.label(b)))

    def render(self) -> dict:
        return {
            "domain":   self.domain.name,
            "codomain": self.codomain.name,
            "map":      {self.domain.label(a): self.codomain.label(b)
                         for a, b in enumerate(self.table)},
        }


# ── Constructors ──────────────────────────────────────────────────────────────

def hom_from_table(
    A:       FiniteRing,
    B:       FiniteRing,
    mapping: Union[Sequence[int], Mapping[int, int]],
    name:    str = "",
) -> RingHom:
    """Builds and validates a homomorphism from a total element map."""
    if isinstance(mapping, Mapping):
        missing = [a for a in A.elements if a not in mapping]
        if missing:
            raise NotAHomomorphismError("totality", (A.label(missing[0]),))
        table = tuple(mapping[a] for a in A.elements)
    else:
        table = tuple(mapping)
        if len(table) != A.size:
            raise NotAHomomorphismError("totality", (f"{len(table)} images for {A.size} elements",))
    for a, b in enumerate(table):
        if not 0 <= b < B.size:
            raise NotAHomomorphismError("totality", (A.label(a),))

    hom = RingHom(A, B, table, name)
    hom.validate()
    return hom


def identity_hom(R: FiniteRing) -> RingHom:
    return hom_from_table(R, R, range(R.size), name=f"id_{R.name}")


def hom_compose(h2: RingHom, h1: RingHom) -> RingHom:
    """h2 ∘ h1; a composite of homomorphisms needs no re-validation."""
    if h1.codomain is not h2.domain:
        raise InvalidArgumentError(
            f"cannot compose {h2!r} after {h1!r}: {h1.codomain.name} is not {h2.domain.name}"
        )
    name = f"{h2.name}∘{h1.name}" if h1.name and h2.name else ""
    return RingHom(h1.domain, h2.codomain, tuple(h2.table[b] for b in h1.table), name)


def product_projections(P: FiniteRing) -> tuple:
    """(π1, π2) for a ring built by make_product."""
    if P.provenance.recipe != "product":
        raise InvalidArgumentError(f"{P.name} is not a product ring")
    R1, R2 = P.provenance.parents
    pi1 = hom_from_table(P, R1, [P.value(x)[0] for x in P.elements], name="pi1")
    pi2 = hom_from_table(P, R2, [P.value(x)[1] for x in P.elements], name="pi2")
    return pi1, pi2


def subset_inclusion(S: FiniteRing, parent: FiniteRing, name: str = "incl") -> RingHom:
    """Inclusion of a ring built by make_subset_ring into its unital parent."""
    return hom_from_table(S, parent, [S.value(x) for x in S.elements], name=name)
