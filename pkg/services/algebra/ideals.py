# services/algebra/ideals.py
# Ideals of finite rings: spans, lattice operations, enumeration, quotients,
# preimages, the Jacobson radical and the maximal ideals.
#
# In a finite commutative ring every prime ideal is maximal, so prime listing
# is maximal-ideal listing and is_prime_ideal is the field-quotient test.

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from shared.config.settings import get_settings
from services.algebra.decomposition import local_decomposition
from services.algebra.errors import InternalError, InvalidArgumentError, SizeLimitError
from services.algebra.homs import RingHom, hom_from_table
from services.algebra.ring_core import (
    FiniteRing, Provenance, is_field, regular_elements,
)


@dataclass(frozen=True, eq=False)
class Ideal:
    ring:       FiniteRing
    generators: tuple
    elements:   frozenset

    def __contains__(self, a: int) -> bool:
        return a in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ideal)
            and other.ring is self.ring
            and other.elements == self.elements
        )

    def __hash__(self) -> int:
        return hash((id(self.ring), self.elements))

    def __le__(self, other: "Ideal") -> bool:
        return self.elements <= other.elements

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def is_zero(self) -> bool:
        return self.elements == {self.ring.zero}

    @property
    def is_unit_ideal(self) -> bool:
        return len(self.elements) == self.ring.size

    @property
    def is_proper(self) -> bool:
        return not self.is_unit_ideal

    def sort_key(self) -> tuple:
        return (len(self.elements), tuple(sorted(self.elements)))

    def describe(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(self.ring.label(g) for g in self.generators) + ")"

    def render(self) -> dict:
        return {
            "generators": [self.ring.label(g) for g in self.generators],
            "size":       self.size,
        }

    def __repr__(self):
        return f"Ideal{self.describe()} of {self.ring.name} [{self.size}]"


class CombineKind(str, Enum):
    SUM       = "sum"
    PRODUCT   = "product"
    INTERSECT = "intersect"
    COLON     = "colon"


# ── Closure ───────────────────────────────────────────────────────────────────

def principal_elements(R: FiniteRing, a: int) -> frozenset:
    return frozenset(R.mul_row(a))


def add_subgroups(R: FiniteRing, I: Iterable[int], K: Iterable[int]) -> frozenset:
    """
    I + K for additive subgroups I, K. The running result is always a union
    of cosets of I, so a k already inside it contributes nothing new.
    """
    base   = list(I)
    result = set(base)
    for k in K:
        if k not in result:
            result.update(R.add(i, k) for i in base)
    return frozenset(result)


def span(R: FiniteRing, gens: Sequence[int]) -> Ideal:
    """Smallest ideal containing `gens`: the sum of the principal ideals R·g."""
    for g in gens:
        if not 0 <= g < R.size:
            raise InvalidArgumentError(f"generator {g} is not an element of {R.name}")
    current = frozenset({R.zero})
    for g in gens:
        if g in current:
            continue
        current = add_subgroups(R, current, principal_elements(R, g))
    return Ideal(R, tuple(gens), current)


def ideal_from_elements(R: FiniteRing, elements: Iterable[int]) -> Ideal:
    """
    Wraps a set already known to be an ideal, choosing generators greedily in
    index order. Raises InvalidArgumentError if the set is not an ideal.
    """
    target  = frozenset(elements)
    gens    = []
    current = frozenset({R.zero})
    for x in sorted(target):
        if x not in current:
            gens.append(x)
            current = add_subgroups(R, current, principal_elements(R, x))
    if current != target:
        raise InvalidArgumentError(f"the given subset of {R.name} is not an ideal")
    return Ideal(R, tuple(gens), current)


def zero_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, (), frozenset({R.zero}))


def unit_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, (R.one,), frozenset(R.elements))


# ── Lattice and arithmetic ────────────────────────────────────────────────────

def ideal_combine(kind: CombineKind, I: Ideal, K: Ideal) -> Ideal:
    if I.ring is not K.ring:
        raise InvalidArgumentError(f"ideals live in different rings: {I.ring.name}, {K.ring.name}")
    R    = I.ring
    kind = CombineKind(kind)

    if kind is CombineKind.SUM:
        return Ideal(R, I.generators + K.generators, add_subgroups(R, I.elements, K.elements))

    if kind is CombineKind.PRODUCT:
        return span(R, [R.mul(a, b) for a in I.generators for b in K.generators])

    if kind is CombineKind.INTERSECT:
        return ideal_from_elements(R, I.elements & K.elements)

    # (I : K) = {x : xK ⊆ I}; checking K's generators suffices
    return ideal_from_elements(R, (
        x for x in R.elements
        if all(R.mul(x, k) in I.elements for k in K.generators)
    ))


def ideal_square(I: Ideal) -> Ideal:
    return ideal_combine(CombineKind.PRODUCT, I, I)


def annihilator(I: Ideal) -> Ideal:
    return ideal_combine(CombineKind.COLON, zero_ideal(I.ring), I)


# ── Enumeration ───────────────────────────────────────────────────────────────

def all_ideals(R: FiniteRing) -> list:
    """
    Every ideal of R: principal ideals closed under pairwise sums to a fixpoint
    (every ideal is a finite sum of principal ones). Sorted canonically.
    """
    cap = get_settings().oracle_cap
    if R.size > cap:
        raise SizeLimitError(f"ideal enumeration of {R.name}", R.size, cap)

    known    = {principal_elements(R, a) for a in R.elements}
    frontier = set(known)
    while frontier:
        fresh = set()
        for I in frontier:
            for K in known:
                S = add_subgroups(R, I, K)
                if S not in known:
                    fresh.add(S)
        known    |= fresh
        frontier  = fresh

    ideals = [ideal_from_elements(R, s) for s in known]
    ideals.sort(key=Ideal.sort_key)
    return ideals


# ── Quotients and preimages ───────────────────────────────────────────────────

def quotient_ring(R: FiniteRing, I: Ideal) -> tuple:
    """
    R/I, each coset represented by its smallest index; returns (R/I, surjection).
    Labels are the representatives' labels.
    """
    if I.ring is not R:
        raise InvalidArgumentError(f"{I!r} is not an ideal of {R.name}")
    rep = [None] * R.size
    for x in R.elements:
        if rep[x] is None:
            for i in I.elements:
                rep[R.add(x, i)] = x
    reps = sorted(set(rep))

    Q = FiniteRing(
        name       = f"{R.name}/{I.describe()}",
        values     = reps,
        add        = lambda a, b: rep[R.add(a, b)],
        mul        = lambda a, b: rep[R.mul(a, b)],
        neg        = lambda a: rep[R.neg(a)],
        zero       = rep[R.zero],
        one        = rep[R.one],
        labels     = [R.label(r) for r in reps],
        provenance = Provenance("quotient", (R.name, I.describe()), parents=(R, I)),
    )
    surjection = hom_from_table(R, Q, [Q.index_of(rep[x]) for x in R.elements], name="q")
    return Q, surjection


def preimage_ideal(h: RingHom, K: Ideal) -> Ideal:
    if K.ring is not h.codomain:
        raise InvalidArgumentError(f"{K!r} is not an ideal of {h.codomain.name}")
    return ideal_from_elements(h.domain, (a for a in h.domain.elements if h(a) in K.elements))


def kernel(h: RingHom) -> Ideal:
    return preimage_ideal(h, zero_ideal(h.codomain))


def extend_ideal(h: RingHom, I: Ideal) -> Ideal:
    """The ideal of the codomain generated by h(I)."""
    if I.ring is not h.domain:
        raise InvalidArgumentError(f"{I!r} is not an ideal of {h.domain.name}")
    return span(h.codomain, [h(g) for g in I.generators])


# ── Radical, maximal ideals, regularity ───────────────────────────────────────

def jacobson_radical(R: FiniteRing) -> Ideal:
    """{r : 1 - rx is a unit for every x}."""
    units     = R.units
    one_minus = [R.sub(R.one, y) for y in R.elements]
    members   = [
        r for r in R.elements
        if all(one_minus[y] in units for y in R.mul_row(r))
    ]
    return ideal_from_elements(R, members)


def maximal_ideals(R: FiniteRing) -> list:
    """
    One maximal ideal per local factor eR: the preimage, under r ↦ er, of the
    factor's non-units. These are also all the prime ideals of R.
    """
    result = []
    for factor in local_decomposition(R):
        F         = factor.ring
        non_units = {x for x in F.elements if x not in F.units}
        members   = (r for r in R.elements if factor.projection(r) in non_units)
        result.append(ideal_from_elements(R, members))
    result.sort(key=Ideal.sort_key)
    return result


def is_maximal_ideal(I: Ideal) -> bool:
    if I.is_unit_ideal:
        return False
    Q, _ = quotient_ring(I.ring, I)
    return is_field(Q)


def is_prime_ideal(I: Ideal) -> bool:
    return is_maximal_ideal(I)


def is_regular_ideal(I: Ideal) -> tuple:
    """(True, witness) if I holds an element with no nonzero annihilator, else (False, None)."""
    regular = regular_elements(I.ring)
    witness: Optional[int] = next((x for x in sorted(I.elements) if x in regular), None)
    return witness is not None, witness


def contains_ideal(big: Ideal, small: Ideal) -> bool:
    if big.ring is not small.ring:
        raise InvalidArgumentError("ideals live in different rings")
    return small.elements <= big.elements


def check_ideal_closure(I: Ideal) -> None:
    """Raises InternalError if I's element set is not closed (test helper)."""
    R = I.ring
    for a in I.elements:
        if R.neg(a) not in I.elements:
            raise InternalError(f"{I!r} not closed under negation at {R.label(a)}")
        for b in I.elements:
            if R.add(a, b) not in I.elements:
                raise InternalError(f"{I!r} not closed under addition")
        for r in R.elements:
            if R.mul(r, a) not in I.elements:
                raise InternalError(f"{I!r} not closed under multiplication")
