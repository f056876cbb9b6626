# services/algebra/localization.py
# Multiplicative sets, localization of finite rings, the sets S_p = f(A - p) + J,
# the induced maps f_p and the check that localizing a bi-amalgamation at
# P = p ⋈ (J, J') agrees with bi-amalgamating the localizations.
#
# For finite R, R_S is R/K with K = {r : sr = 0 for some s ∈ S}: multiplication
# by the image of s is injective on R/K, hence bijective by finiteness, so every
# element of S becomes a unit and no fraction pairs are needed.

from dataclasses import dataclass
from typing import Optional

from shared.logging.logger import get_logger
from services.algebra.constructions import BiAmalgConfig, biamalg, canonical_ideals
from services.algebra.errors import InternalError, InvalidArgumentError, NotAHomomorphismError
from services.algebra.homs import RingHom, hom_from_table
from services.algebra.ideals import (
    Ideal, extend_ideal, ideal_from_elements, is_prime_ideal, preimage_ideal, quotient_ring,
)
from services.algebra.isomorphism import ring_isomorphic
from services.algebra.ring_core import FiniteRing, regular_elements
from services.algebra.verdict import Verdict

logger = get_logger(__name__)

__all__ = [
    "MultSet", "Localization", "make_mult_set", "complement_mult_set", "regular_mult_set",
    "localize", "mult_set_Sp", "induced_hom_fp", "verify_prop_5_7", "ring_isomorphic",
]


@dataclass(frozen=True, eq=False)
class MultSet:
    ring:     FiniteRing
    elements: frozenset

    def __contains__(self, a: int) -> bool:
        return a in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def closure_failure(self) -> Optional[tuple]:
        """None if 1 ∈ S and S·S ⊆ S, otherwise the offending pair."""
        R = self.ring
        if R.one not in self.elements:
            return (R.one,)
        for s in self.elements:
            row = R.mul_row(s)
            for t in self.elements:
                if row[t] not in self.elements:
                    return (s, t)
        return None


def make_mult_set(R: FiniteRing, elements) -> MultSet:
    S = MultSet(R, frozenset(elements))
    bad = S.closure_failure()
    if bad is not None:
        raise InvalidArgumentError(
            f"not multiplicatively closed in {R.name}: {[R.label(x) for x in bad]}"
        )
    return S


def complement_mult_set(p: Ideal) -> MultSet:
    """A - p for a prime p."""
    if not is_prime_ideal(p):
        raise InvalidArgumentError(f"{p.describe()} is not a prime ideal of {p.ring.name}")
    return make_mult_set(p.ring, (a for a in p.ring.elements if a not in p.elements))


def regular_mult_set(R: FiniteRing) -> MultSet:
    return make_mult_set(R, regular_elements(R))


@dataclass(frozen=True, eq=False)
class Localization:
    ring:      FiniteRing
    canonical: RingHom
    mult_set:  MultSet
    kernel:    Ideal

    def __iter__(self):
        return iter((self.ring, self.canonical))


def localize(R: FiniteRing, S: MultSet) -> Localization:
    if S.ring is not R:
        raise InvalidArgumentError(f"multiplicative set does not belong to {R.name}")
    annihilated = {r for s in S.elements for r in R.elements if R.mul(s, r) == R.zero}
    K = ideal_from_elements(R, annihilated)
    Q, q = quotient_ring(R, K)
    for s in S.elements:
        if q(s) not in Q.units:
            raise InternalError(f"{R.label(s)} does not become a unit in {Q.name}")
    return Localization(Q, q, S, K)


def mult_set_Sp(f: RingHom, J: Ideal, p: Ideal) -> MultSet:
    """S_p = f(A - p) + J."""
    A, B = f.domain, f.codomain
    if p.ring is not A:
        raise InvalidArgumentError(f"{p!r} is not an ideal of {A.name}")
    if J.ring is not B:
        raise InvalidArgumentError(f"J must be an ideal of {B.name}")
    if not is_prime_ideal(p):
        raise InvalidArgumentError(f"{p.describe()} is not a prime ideal of {A.name}")

    S = MultSet(B, frozenset(
        B.add(f(a), j) for a in A.elements if a not in p.elements for j in J.elements
    ))
    bad = S.closure_failure()
    if bad is not None:
        raise InternalError(f"f(A - p) + J is not multiplicatively closed at {[B.label(x) for x in bad]}")
    return S


def induced_hom_fp(
    f:      RingHom,
    p:      Ideal,
    S_p:    MultSet,
    J:      Optional[Ideal] = None,
    source: Optional[Localization] = None,
    target: Optional[Localization] = None,
) -> RingHom:
    """
    f_p: A_p → B_{S_p}, a/s ↦ f(a)/f(s). Pass `source`/`target` to reuse
    localizations already built (f_p and g_p must share A_p). With `J`, also
    checks f_p⁻¹(J_{S_p}) = (f⁻¹(J))_p.
    """
    A, B   = f.domain, f.codomain
    source = source or localize(A, complement_mult_set(p))
    target = target or localize(B, S_p)
    Ap, qA = source
    BS, qB = target

    table = [None] * Ap.size
    for a in A.elements:
        image = qB(f(a))
        x     = qA(a)
        if table[x] is None:
            table[x] = image
        elif table[x] != image:
            raise InternalError(f"f_p is not well defined at {A.label(a)}")

    try:
        fp = hom_from_table(Ap, BS, table, name=f"{f.name or 'f'}_p")
    except NotAHomomorphismError as exc:
        raise InternalError(f"induced map is not a homomorphism: {exc}") from exc

    if J is not None:
        J_S  = extend_ideal(qB, J)
        I0_p = extend_ideal(qA, preimage_ideal(f, J))
        if preimage_ideal(fp, J_S) != I0_p:
            raise InternalError("f_p^-1(J_S) differs from the localized conductor")
    return fp


def verify_prop_5_7(cfg: BiAmalgConfig, p: Ideal) -> Verdict:
    """
    Builds D_P for P = p ⋈ (J, J') and A_p ⋈^{f_p, g_p}(J_{S_p}, J'_{S'_p}),
    then decides whether they are isomorphic. Needs p maximal with I0 ⊆ p.
    """
    if p.ring is not cfg.A:
        raise InvalidArgumentError(f"{p!r} is not an ideal of {cfg.A.name}")
    if not cfg.I0 <= p:
        raise InvalidArgumentError(f"{p.describe()} does not contain I0 = {cfg.I0.describe()}")

    D = biamalg(cfg)
    P = canonical_ideals(D).extend_prime(p)
    left = localize(D.ring, complement_mult_set(P)).ring

    S_p, S_p_prime = mult_set_Sp(cfg.f, cfg.J, p), mult_set_Sp(cfg.g, cfg.J_prime, p)
    A_loc = localize(cfg.A, complement_mult_set(p))
    B_loc = localize(cfg.B, S_p)
    C_loc = localize(cfg.C, S_p_prime)
    f_p = induced_hom_fp(cfg.f, p, S_p, cfg.J, source=A_loc, target=B_loc)
    g_p = induced_hom_fp(cfg.g, p, S_p_prime, cfg.J_prime, source=A_loc, target=C_loc)

    local_cfg = BiAmalgConfig(
        f_p, g_p,
        extend_ideal(B_loc.canonical, cfg.J),
        extend_ideal(C_loc.canonical, cfg.J_prime),
        description=f"localization at {p.describe()}",
    )
    right = biamalg(local_cfg).ring

    verdict = ring_isomorphic(left, right)
    logger.info("Localization isomorphism checked", extra={
        "ring": D.ring.name, "op": "prop5.7", "status": verdict.holds,
    })
    data = dict(verdict.data)
    data.update({"prime": p.describe(), "|D_P|": left.size, "|A_p bi-amalgamation|": right.size})
    return Verdict(verdict.holds, "localization-isomorphism", left, verdict.witness, data)
