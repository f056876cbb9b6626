# services/algebra/properties.py
# Arithmetical, Gaussian, Prüfer, local and total-ring-of-quotients checks.
#
# Gaussian and arithmetical are local properties: R is split into its local
# factors and each factor is checked with a pair criterion. Witnesses found in
# a factor are lifted back to R. Scans run over ascending index pairs and stop
# at the first witness, so witnesses are reproducible.
#
# Local Gaussian criterion: for all a, b, (a,b)² = (a²) or (b²), and if ab = 0
# and (a,b)² = (a²) then b² = 0 (applied in both orientations). The polynomial
# content equation is only sampled, as a one-sided falsifier.

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from typing import Sequence

from constants import CONTENT_SAMPLE_DEGREE, CONTENT_SAMPLE_TRIALS
from shared.logging.logger import get_logger
from services.algebra.decomposition import LocalFactor, local_decomposition, primitive_idempotents
from services.algebra.errors import InvalidArgumentError
from services.algebra.ideals import (
    CombineKind, Ideal, add_subgroups, all_ideals, ideal_combine, ideal_from_elements,
    span, unit_ideal,
)
from services.algebra.localization import localize, regular_mult_set
from services.algebra.ring_core import FiniteRing, regular_elements
from services.algebra.verdict import Verdict

logger = get_logger(__name__)

__all__ = [
    "Poly", "content", "content_equation_check", "content_equation_sample",
    "is_local", "local_decomposition", "primitive_idempotents", "LocalFactor",
    "is_gaussian_local", "is_gaussian", "is_arithmetical", "is_arithmetical_bruteforce",
    "is_prufer", "is_total_quotient_ring",
]


# ── Polynomials ───────────────────────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Poly:
    """Polynomial over a finite ring; coeffs[k] is the coefficient of X^k."""
    ring:   FiniteRing
    coeffs: tuple

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1] == self.ring.zero:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and other.ring is self.ring and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash((id(self.ring), self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Poly") -> "Poly":
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (R.zero,) * (n - len(self.coeffs))
        b = other.coeffs + (R.zero,) * (n - len(other.coeffs))
        return Poly(R, tuple(R.add(x, y) for x, y in zip(a, b)))

    def __mul__(self, other: "Poly") -> "Poly":
        R = self.ring
        if self.is_zero or other.is_zero:
            return Poly(R, ())
        out = [R.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = R.add(out[i + j], R.mul(x, y))
        return Poly(R, tuple(out))

    @cached_property
    def content(self) -> Ideal:
        return span(self.ring, [c for c in self.coeffs if c != self.ring.zero])

    def render(self) -> str:
        R, terms = self.ring, []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == R.zero:
                continue
            text = R.label(c)
            if k == 0:
                terms.append(text)
                continue
            power = "X" if k == 1 else f"X^{k}"
            if c == R.one:
                terms.append(power)
            elif text.isalnum():
                terms.append(f"{text}{power}")
            else:
                terms.append(f"({text}){power}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"Poly({self.render()} over {self.ring.name})"


def content(p: Poly) -> Ideal:
    return p.content


def content_equation_check(f: Poly, g: Poly) -> Verdict:
    """Checks c(fg) = c(f)c(g) for one pair."""
    if f.ring is not g.ring:
        raise InvalidArgumentError("polynomials over different rings")
    lhs = content(f * g)
    rhs = ideal_combine(CombineKind.PRODUCT, content(f), content(g))
    data = {"c(fg)": lhs, "c(f)c(g)": rhs}
    if lhs == rhs:
        return Verdict(True, "content-equation", f.ring, data=data)
    return Verdict(False, "content-equation", f.ring, witness=(f, g), data=data)


def content_equation_sample(
    R:          FiniteRing,
    max_degree: int = CONTENT_SAMPLE_DEGREE,
    trials:     int = CONTENT_SAMPLE_TRIALS,
    seed:       int = 0,
) -> Verdict:
    """
    Samples polynomial pairs of degree <= max_degree. A violation certifies
    non-Gaussian; no violation is inconclusive (data["conclusive"] is False).
    """
    rng = random.Random(seed)
    for trial in range(trials):
        f = Poly(R, tuple(rng.randrange(R.size) for _ in range(rng.randint(1, max_degree + 1))))
        g = Poly(R, tuple(rng.randrange(R.size) for _ in range(rng.randint(1, max_degree + 1))))
        verdict = content_equation_check(f, g)
        if not verdict.holds:
            data = dict(verdict.data, trial=trial, conclusive=True)
            return Verdict(False, "content-sample", R, verdict.witness, data)
    return Verdict(True, "content-sample", R, data={"trials": trials, "conclusive": False})


# ── Locality ──────────────────────────────────────────────────────────────────

def is_local(R: FiniteRing) -> Verdict:
    """True iff the non-units form an ideal; data["maximal_ideal"] is then that ideal."""
    if R.is_zero_ring:
        return Verdict(False, "non-units-ideal", R, witness=("the zero ring has no maximal ideal",))

    non_units = [a for a in R.elements if a not in R.units]
    for i, a in enumerate(non_units):
        row = R.add_row(a)
        for b in non_units[i:]:
            if row[b] in R.units:
                return Verdict(False, "non-units-ideal", R, witness=(a, b, row[b]),
                               data={"reason": "sum of two non-units is a unit"})

    m = ideal_from_elements(R, non_units)
    return Verdict(True, "non-units-ideal", R, data={"maximal_ideal": m, "non_units": len(non_units)})


# ── Gaussian ──────────────────────────────────────────────────────────────────

def _gaussian_pair_violation(R: FiniteRing):
    """First (a, b, clause) violating the local pair criterion, or None."""
    square    = [R.mul(a, a) for a in R.elements]
    principal = {}

    def ideal_of(x):
        if x not in principal:
            principal[x] = frozenset(R.mul_row(x))
        return principal[x]

    for a in R.elements:
        a2, A2 = square[a], ideal_of(square[a])
        row    = R.mul_row(a)
        for b in R.elements:
            ab, b2 = row[b], square[b]
            B2     = ideal_of(b2)
            eq_a   = ab in A2 and b2 in A2     # (a,b)² = (a²)
            eq_b   = ab in B2 and a2 in B2     # (a,b)² = (b²)
            if not (eq_a or eq_b):
                return a, b, "(a,b)^2 is neither (a^2) nor (b^2)"
            if ab == R.zero:
                if eq_a and b2 != R.zero:
                    return a, b, "ab = 0 and (a,b)^2 = (a^2) but b^2 != 0"
                if eq_b and a2 != R.zero:
                    return a, b, "ab = 0 and (a,b)^2 = (b^2) but a^2 != 0"
    return None


def is_gaussian_local(R: FiniteRing) -> Verdict:
    if not is_local(R).holds:
        raise InvalidArgumentError(f"{R.name} is not local")
    found = _gaussian_pair_violation(R)
    if found is None:
        return Verdict(True, "local-pair-criterion", R)
    a, b, clause = found
    data = {
        "clause":  clause,
        "(a,b)^2": ideal_combine(CombineKind.PRODUCT, span(R, [a, b]), span(R, [a, b])),
        "(a^2)":   span(R, [R.mul(a, a)]),
        "(b^2)":   span(R, [R.mul(b, b)]),
    }
    return Verdict(False, "local-pair-criterion", R, witness=(a, b), data=data)


def _lift(factor: LocalFactor, R: FiniteRing, verdict: Verdict, method: str) -> Verdict:
    witness = tuple(factor.lift(x) if isinstance(x, int) and not isinstance(x, bool) else x
                    for x in verdict.witness)
    data = {"factor": factor.ring.name, "idempotent": R.label(factor.idempotent)}
    data.update({k: v for k, v in verdict.data.items() if not isinstance(v, Ideal)})
    return Verdict(False, method, R, witness=witness, data=data)


def is_gaussian(R: FiniteRing) -> Verdict:
    factors = local_decomposition(R)
    for factor in factors:
        verdict = is_gaussian_local(factor.ring)
        if not verdict.holds:
            return _lift(factor, R, verdict, "local-pair-criterion")
    return Verdict(True, "local-pair-criterion", R, data={"local_factors": len(factors)})


# ── Arithmetical ──────────────────────────────────────────────────────────────

def _incomparable_principal_pair(F: FiniteRing):
    principal = [frozenset(F.mul_row(a)) for a in F.elements]
    for a, b in combinations(F.elements, 2):
        if a not in principal[b] and b not in principal[a]:
            return a, b
    return None


def is_arithmetical(R: FiniteRing) -> Verdict:
    """Chain criterion: in each local factor the principal ideals are totally ordered."""
    factors = local_decomposition(R)
    for factor in factors:
        found = _incomparable_principal_pair(factor.ring)
        if found is not None:
            a, b = (factor.lift(x) for x in found)
            return Verdict(False, "principal-chain", R, witness=(a, b), data={
                "factor":     factor.ring.name,
                "idempotent": R.label(factor.idempotent),
                "(a)":        span(R, [a]),
                "(b)":        span(R, [b]),
            })
    return Verdict(True, "principal-chain", R, data={"local_factors": len(factors)})


def is_arithmetical_bruteforce(R: FiniteRing) -> Verdict:
    """I ∩ (K + L) = (I ∩ K) + (I ∩ L) over every triple of ideals."""
    ideals  = all_ideals(R)
    checked = 0
    for I in ideals:
        for K in ideals:
            IK = I.elements & K.elements
            for L in ideals:
                checked += 1
                lhs = I.elements & add_subgroups(R, K.elements, L.elements)
                rhs = add_subgroups(R, IK, I.elements & L.elements)
                if lhs != rhs:
                    return Verdict(False, "distributivity-oracle", R, witness=(I, K, L),
                                   data={"I∩(K+L)": ideal_from_elements(R, lhs),
                                         "(I∩K)+(I∩L)": ideal_from_elements(R, rhs)})
    return Verdict(True, "distributivity-oracle", R, data={"ideals": len(ideals), "triples": checked})


# ── Prüfer ────────────────────────────────────────────────────────────────────

def is_prufer(R: FiniteRing) -> Verdict:
    """
    Every regular two-generated ideal I is invertible: with Q the localization
    at the regular elements and R̄ the image of R in Q, I⁻¹ = (R̄ : IQ) and
    I·I⁻¹ must be all of Q.
    """
    regular = regular_elements(R)
    Q, q    = localize(R, regular_mult_set(R))
    image   = q.image()

    generators: dict = {}
    for a in R.elements:
        generators.setdefault(frozenset(R.mul_row(a)), a)
    reps = sorted(generators.values())

    checked = 0
    for a, b in combinations_with_replacement(reps, 2):
        I = add_subgroups(R, R.mul_row(a), R.mul_row(b))
        if not (I & regular):
            continue
        checked += 1
        IQ      = span(Q, [q(a), q(b)])
        inverse = ideal_from_elements(Q, (
            x for x in Q.elements if all(Q.mul(x, y) in image for y in IQ.generators)
        ))
        product = ideal_combine(CombineKind.PRODUCT, IQ, inverse)
        if product != unit_ideal(Q):
            return Verdict(False, "two-generated-invertibility", R, witness=(a, b),
                           data={"I": ideal_from_elements(R, I), "I·I^-1 in Q": product})
    return Verdict(True, "two-generated-invertibility", R,
                   data={"regular_two_generated": checked, "total_quotient_ring": Q.name})


# ── Total ring of quotients ───────────────────────────────────────────────────

def is_total_quotient_ring(R: FiniteRing) -> Verdict:
    units = zero_divisors = 0
    for a in R.elements:
        if a == R.zero:
            continue
        if a in R.units:
            units += 1
        elif R.has_nonzero_annihilator(a):
            zero_divisors += 1
        else:
            return Verdict(False, "element-classification", R, witness=(a,),
                           data={"reason": "neither a unit nor a zero-divisor"})
    return Verdict(True, "element-classification", R,
                   data={"units": units, "zero_divisors": zero_divisors})


def check_property(name: str, R: FiniteRing) -> Verdict:
    """Dispatch used by scripts: local, gaussian, arithmetical, prufer, total_quotients."""
    checkers = {
        "local":           is_local,
        "gaussian":        is_gaussian,
        "arithmetical":    is_arithmetical,
        "prufer":          is_prufer,
        "total_quotients": is_total_quotient_ring,
    }
    if name not in checkers:
        raise InvalidArgumentError(f"unknown property {name!r}")
    return checkers[name](R)


def recheck_gaussian_witness(R: FiniteRing, pair: Sequence[int]) -> bool:
    """Re-checks a Gaussian witness pair of a local ring directly on ideals."""
    a, b = pair
    sq   = ideal_combine(CombineKind.PRODUCT, span(R, [a, b]), span(R, [a, b]))
    a2, b2 = span(R, [R.mul(a, a)]), span(R, [R.mul(b, b)])
    if sq != a2 and sq != b2:
        return True
    ab_zero = R.mul(a, b) == R.zero
    return ab_zero and ((sq == a2 and not b2.is_zero) or (sq == b2 and not a2.is_zero))
