# services/harness/theorems.py
# Verifiers for the transfer results on bi-amalgamations: each one computes
# every hypothesis separately, then compares the stated conclusion with what
# the checkers compute on the concrete instance.
#
# Status rules:
#   hypothesis_not_met  some hypothesis fails (reported, never an error)
#   verified            hypotheses hold and every conclusion matches
#   VIOLATION           hypotheses hold and a conclusion does not match; since
#                       the statements are theorems this always means a bug

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Iterable, Optional

from shared.logging.logger import get_logger
from services.algebra.constructions import (
    BiAmalgConfig, BiAmalgRing, amalg, biamalg, canonical_ideals, duplicate, subring_of_fA_plus_J,
)
from services.algebra.errors import InvalidArgumentError
from services.algebra.homs import RingHom
from services.algebra.ideals import (
    Ideal, all_ideals, ideal_square, is_prime_ideal,
    is_maximal_ideal, is_regular_ideal, jacobson_radical, preimage_ideal, quotient_ring,
    span,
)
from services.algebra.localization import ring_isomorphic, verify_prop_5_7
from services.algebra.properties import (
    is_gaussian, is_local, is_prufer, is_total_quotient_ring,
)
from services.algebra.ring_core import FiniteRing
from services.algebra.verdict import Verdict, render_value

logger = get_logger(__name__)


class Status(str, Enum):
    VERIFIED           = "verified"
    HYPOTHESIS_NOT_MET = "hypothesis_not_met"
    VIOLATION          = "VIOLATION"


class Mode(str, Enum):
    GAUSSIAN = "gaussian"
    PRUFER   = "prufer"

    def checker(self) -> Callable[[FiniteRing], Verdict]:
        return is_gaussian if self is Mode.GAUSSIAN else is_prufer


@dataclass
class Hypothesis:
    name:    str
    holds:   bool
    witness: Any = None


@dataclass
class Conclusion:
    name:     str
    expected: bool
    computed: bool

    @property
    def matches(self) -> bool:
        return self.expected == self.computed


@dataclass
class TheoremReport:
    theorem_id:        str
    hypotheses:        list = field(default_factory=list)
    conclusion_checks: list = field(default_factory=list)
    status:            Optional[Status] = None
    notes:             list = field(default_factory=list)
    bundle:            dict = field(default_factory=dict)

    def hypothesis(self, name: str, holds: bool, witness: Any = None) -> bool:
        self.hypotheses.append(Hypothesis(name, bool(holds), witness))
        return bool(holds)

    def conclusion(self, name: str, expected: bool, computed: bool) -> None:
        self.conclusion_checks.append(Conclusion(name, bool(expected), bool(computed)))

    @property
    def hypotheses_hold(self) -> bool:
        return all(h.holds for h in self.hypotheses)

    def finish(self) -> "TheoremReport":
        if not self.hypotheses_hold:
            self.status = Status.HYPOTHESIS_NOT_MET
        elif all(c.matches for c in self.conclusion_checks):
            self.status = Status.VERIFIED
        else:
            self.status = Status.VIOLATION
            logger.error("Theorem check produced a VIOLATION", extra={
                "theorem": self.theorem_id, "status": self.status.value,
                "witness": render_value(self.bundle),
            })
        logger.info("Theorem checked", extra={"theorem": self.theorem_id, "status": self.status.value})
        return self

    def to_dict(self) -> dict:
        out = {
            "theorem_id": self.theorem_id,
            "status":     self.status.value if self.status else None,
            "hypotheses": [
                {"name": h.name, "holds": h.holds, "witness": render_value(h.witness)}
                for h in self.hypotheses
            ],
            "conclusion_checks": [
                {"name": c.name, "expected": c.expected, "computed": c.computed}
                for c in self.conclusion_checks
            ],
            "notes": list(self.notes),
        }
        if self.status is Status.VIOLATION:
            out["bundle"] = render_value(self.bundle)
        return out


# ── Shared hypothesis helpers ─────────────────────────────────────────────────

def _label_witness(R: FiniteRing, a: Optional[int]) -> Optional[str]:
    return None if a is None else R.label(a)


def _regular_in_subring(f: RingHom, J: Ideal) -> tuple:
    """Does J hold a regular element of the subring f(A)+J? Returns (holds, label)."""
    sub = subring_of_fA_plus_J(f, J)
    holds, witness = is_regular_ideal(sub.restrict(J))
    return holds, _label_witness(sub.ring, witness)


def _in_jacobson(J: Ideal) -> tuple:
    jac     = jacobson_radical(J.ring)
    outside = sorted(J.elements - jac.elements)
    return not outside, _label_witness(J.ring, outside[0] if outside else None)


def _square_zero(J: Ideal) -> tuple:
    square = ideal_square(J)
    return square.is_zero, None if square.is_zero else square


def _nonzero_proper(J: Ideal) -> bool:
    return not J.is_zero and J.is_proper


def _scaling_condition(h: RingHom, J: Ideal, m: Ideal) -> tuple:
    """∀a ∈ m: h(a)J = h(a)²J. Returns (holds, first failing a as a label)."""
    B = h.codomain
    for a in sorted(m.elements):
        x  = h(a)
        xJ = span(B, [B.mul(x, j) for j in J.generators])
        x2 = B.mul(x, x)
        if xJ != span(B, [B.mul(x2, j) for j in J.generators]):
            return False, h.domain.label(a)
    return True, None


def _local_base_hypotheses(report: TheoremReport, cfg: BiAmalgConfig) -> Optional[Ideal]:
    """(A, m) local, J and J' nonzero proper, J × J' ⊆ Jac(B × C). Returns m."""
    local = is_local(cfg.A)
    report.hypothesis("A is local", local.holds, None if local.holds else local.witness)
    report.hypothesis("J is a nonzero proper ideal of B", _nonzero_proper(cfg.J))
    report.hypothesis("J' is a nonzero proper ideal of C", _nonzero_proper(cfg.J_prime))
    in_jac_B, w_B = _in_jacobson(cfg.J)
    in_jac_C, w_C = _in_jacobson(cfg.J_prime)
    report.hypothesis("J x J' ⊆ Jac(B x C)", in_jac_B and in_jac_C, w_B or w_C)
    return local.data.get("maximal_ideal") if local.holds else None


def _bundle(cfg: BiAmalgConfig, **extra) -> dict:
    bundle = {"config": cfg.render()}
    bundle.update(extra)
    return bundle


# ── Regular-ideal transfer ────────────────────────────────────────────────────

def verify_theorem_2_1(cfg: BiAmalgConfig, mode: Mode = Mode.GAUSSIAN) -> TheoremReport:
    """
    J × J' regular in (f(A)+J) × (g(A)+J') ⟹
    (D has the property ⟺ J = B, J' = C and B, C have it).
    Regularity in a product is decided componentwise.
    """
    mode   = Mode(mode)
    report = TheoremReport("thm2.1", bundle=_bundle(cfg, mode=mode.value))
    reg_J, w_J   = _regular_in_subring(cfg.f, cfg.J)
    reg_Jp, w_Jp = _regular_in_subring(cfg.g, cfg.J_prime)
    report.hypothesis("J x J' is a regular ideal of (f(A)+J) x (g(A)+J')",
                      reg_J and reg_Jp, [w_J, w_Jp] if reg_J and reg_Jp else None)
    if not report.hypotheses_hold:
        report.notes.append("a finite ring has no proper regular ideal; only J = B, J' = C can qualify")
        return report.finish()

    check = mode.checker()
    lhs   = check(biamalg(cfg).ring).holds
    rhs   = (cfg.J.is_unit_ideal and cfg.J_prime.is_unit_ideal
             and check(cfg.B).holds and check(cfg.C).holds)
    report.conclusion(f"D {mode.value} ⟺ J = B, J' = C and B, C {mode.value}", rhs, lhs)
    report.bundle.update({f"D {mode.value}": lhs})
    return report.finish()


def verify_cor_2_2(f: RingHom, J: Ideal, mode: Mode = Mode.GAUSSIAN) -> TheoremReport:
    mode   = Mode(mode)
    A, B   = f.domain, f.codomain
    I0     = preimage_ideal(f, J)
    report = TheoremReport("cor2.2", bundle={"A": A.name, "B": B.name, "J": J.render(), "mode": mode.value})

    reg_I0, w_I0 = is_regular_ideal(I0)
    reg_J, w_J   = _regular_in_subring(f, J)
    report.hypothesis("f^-1(J) x J is a regular ideal of A x (f(A)+J)",
                      reg_I0 and reg_J,
                      [_label_witness(A, w_I0), w_J] if reg_I0 and reg_J else None)
    if not report.hypotheses_hold:
        return report.finish()

    check = mode.checker()
    lhs   = check(amalg(f, J).ring).holds
    rhs   = I0.is_unit_ideal and J.is_unit_ideal and check(A).holds and check(B).holds
    report.conclusion(f"A ⋈^f J {mode.value} ⟺ f^-1(J) = A, J = B and A, B {mode.value}", rhs, lhs)
    return report.finish()


def verify_cor_2_3(A: FiniteRing, I: Ideal, mode: Mode = Mode.GAUSSIAN) -> TheoremReport:
    mode   = Mode(mode)
    report = TheoremReport("cor2.3", bundle={"A": A.name, "I": I.render(), "mode": mode.value})
    regular, witness = is_regular_ideal(I)
    report.hypothesis("I is a regular ideal of A", regular, _label_witness(A, witness))
    if I.is_unit_ideal:
        report.notes.append("duplication is defined for proper ideals; the case I = A is checked as stated")
    if not report.hypotheses_hold:
        return report.finish()

    check = mode.checker()
    lhs   = check(duplicate(A, I).ring).holds
    rhs   = check(A).holds and I.is_unit_ideal
    report.conclusion(f"A ⋈ I {mode.value} ⟺ A {mode.value} and I = A", rhs, lhs)
    return report.finish()


# ── Local Gaussian transfer ───────────────────────────────────────────────────

def verify_prop_2_4(part: int, cfg: BiAmalgConfig) -> TheoremReport:
    if part not in (1, 2, 3):
        raise InvalidArgumentError(f"part must be 1, 2 or 3, got {part}")
    report = TheoremReport(f"prop2.4.{part}", bundle=_bundle(cfg))
    m      = _local_base_hypotheses(report, cfg)
    S1     = subring_of_fA_plus_J(cfg.f, cfg.J).ring
    S2     = subring_of_fA_plus_J(cfg.g, cfg.J_prime).ring

    if part == 1:
        if not report.hypotheses_hold:
            return report.finish()
        d_gauss = is_gaussian(biamalg(cfg).ring).holds
        legs    = is_gaussian(S1).holds and is_gaussian(S2).holds
        report.conclusion("D Gaussian ⟹ f(A)+J and g(A)+J' Gaussian", True, (not d_gauss) or legs)
        report.bundle.update({"D gaussian": d_gauss, "legs gaussian": legs})
        return report.finish()

    report.hypothesis("A is Gaussian", is_gaussian(cfg.A).holds)
    sq_J, w_J   = _square_zero(cfg.J)
    sq_Jp, w_Jp = _square_zero(cfg.J_prime)
    report.hypothesis("J^2 = 0", sq_J, w_J)
    report.hypothesis("J'^2 = 0", sq_Jp, w_Jp)

    if m is not None:
        scale_f, w_f = _scaling_condition(cfg.f, cfg.J, m)
        scale_g, w_g = _scaling_condition(cfg.g, cfg.J_prime, m)
    else:
        scale_f, w_f, scale_g, w_g = False, None, False, None
    gauss_S1, gauss_S2 = is_gaussian(S1).holds, is_gaussian(S2).holds

    if part == 2:
        report.hypothesis("f(A)+J is Gaussian", gauss_S1)
        report.hypothesis("g(A)+J' is Gaussian", gauss_S2)
        report.hypothesis("f(a)J = f(a)^2 J for all a in m", scale_f, w_f)
        report.hypothesis("g(a)J' = g(a)^2 J' for all a in m", scale_g, w_g)
        if not report.hypotheses_hold:
            return report.finish()
        report.conclusion("D is Gaussian", True, is_gaussian(biamalg(cfg).ring).holds)
        return report.finish()

    prime = is_prime_ideal(cfg.I0)
    report.hypothesis("I0 is a prime ideal of A", prime, None if prime else cfg.I0)
    if not report.hypotheses_hold:
        return report.finish()
    d_gauss = is_gaussian(biamalg(cfg).ring).holds
    rhs     = gauss_S1 and gauss_S2 and scale_f and scale_g
    report.conclusion("D Gaussian ⟹ legs Gaussian and scaling conditions", True, (not d_gauss) or rhs)
    report.conclusion("legs Gaussian and scaling conditions ⟹ D Gaussian", True, (not rhs) or d_gauss)
    report.bundle.update({"D gaussian": d_gauss, "right-hand side": rhs})
    return report.finish()


def verify_prop_2_6(cfg: BiAmalgConfig) -> TheoremReport:
    report = TheoremReport("prop2.6", bundle=_bundle(cfg))
    _local_base_hypotheses(report, cfg)
    tq = is_total_quotient_ring(cfg.A)
    report.hypothesis("A is a total ring of quotients", tq.holds, None if tq.holds else tq.witness)
    injective = cfg.f.is_injective()
    report.hypothesis("f is injective", injective, None if injective else "ker f != 0")
    sq_J, w_J   = _square_zero(cfg.J)
    sq_Jp, w_Jp = _square_zero(cfg.J_prime)
    report.hypothesis("J^2 = 0", sq_J, w_J)
    report.hypothesis("J'^2 = 0", sq_Jp, w_Jp)
    if not report.hypotheses_hold:
        return report.finish()

    D = biamalg(cfg).ring
    report.conclusion("D is local", True, is_local(D).holds)
    report.conclusion("D is a total ring of quotients", True, is_total_quotient_ring(D).holds)
    report.conclusion("D is Prüfer", True, is_prufer(D).holds)
    return report.finish()


# ── Localization, factor rings, hypothesis vacuity ────────────────────────────

def verify_prop_5_7_report(cfg: BiAmalgConfig, p: Ideal) -> TheoremReport:
    """D_P ≅ A_p ⋈^{f_p, g_p}(J_{S_p}, J'_{S'_p}) for maximal p ⊇ I0."""
    report = TheoremReport("prop5.7", bundle=_bundle(cfg, p=p.render()))
    if p.ring is not cfg.A:
        raise InvalidArgumentError(f"{p!r} is not an ideal of {cfg.A.name}")
    report.hypothesis("p is a maximal ideal of A", is_maximal_ideal(p))
    report.hypothesis("I0 ⊆ p", cfg.I0 <= p, None if cfg.I0 <= p else cfg.I0)
    if not report.hypotheses_hold:
        return report.finish()

    verdict = verify_prop_5_7(cfg, p)
    report.conclusion("D_P ≅ A_p ⋈ (J_S, J'_S)", True, verdict.holds)
    report.bundle["verdict"] = verdict.to_dict()
    return report.finish()


def verify_factor_isomorphisms(D: BiAmalgRing) -> TheoremReport:
    """D/(0 x J') ≅ f(A)+J and D/(J x 0) ≅ g(A)+J'."""
    cfg    = D.config
    report = TheoremReport("factor-isomorphisms", bundle=_bundle(cfg))
    ideals = canonical_ideals(D)
    left_B, _ = quotient_ring(D.ring, ideals.zero_cross_Jprime)
    left_C, _ = quotient_ring(D.ring, ideals.J_cross_zero)
    S1 = subring_of_fA_plus_J(cfg.f, cfg.J).ring
    S2 = subring_of_fA_plus_J(cfg.g, cfg.J_prime).ring
    report.conclusion("D/(0 x J') ≅ f(A)+J", True, ring_isomorphic(left_B, S1).holds)
    report.conclusion("D/(J x 0) ≅ g(A)+J'", True, ring_isomorphic(left_C, S2).holds)
    return report.finish()


def theorem_2_1_vacuity_scan(rings: Iterable[FiniteRing]) -> TheoremReport:
    """
    Scans every proper ideal of every ring for a regular element. In a finite
    ring regular elements are units, so none is ever found and the regularity
    hypothesis can only hold with J = B and J' = C.
    """
    report  = TheoremReport("thm2.1-vacuity")
    scanned = 0
    for R in rings:
        proper = [I for I in all_ideals(R) if I.is_proper]
        scanned += len(proper)
        regular = [I for I in proper if is_regular_ideal(I)[0]]
        report.conclusion(f"no proper regular ideal in {R.name}", True, not regular)
        if regular:
            report.bundle[R.name] = regular[0].render()
    report.notes.append(f"proper ideals scanned: {scanned}")
    return report.finish()
