# test_theorems.py
import sys

sys.path.insert(0, '.')

import pytest

from services.algebra.constructions import BiAmalgConfig, biamalg, duplicate, module_ideal, trivext
from services.algebra.errors import InvalidArgumentError
from services.algebra.homs import hom_from_table, identity_hom
from services.algebra.ideals import maximal_ideals, preimage_ideal, span, unit_ideal, zero_ideal
from services.algebra.modules import make_module
from services.algebra.ring_core import make_monomial_quotient, make_product, make_zmod
from services.harness.paper_examples import (
    build_example_2_5, build_example_2_7, run_example, squares_vanish,
)
from services.harness.random_configs import (
    ConfigGenerationError, fuzz_configs, fuzz_reports, random_config,
)
from services.harness.theorems import (
    Mode, Status, theorem_2_1_vacuity_scan, verify_cor_2_2, verify_cor_2_3,
    verify_factor_isomorphisms, verify_prop_2_4, verify_prop_2_6, verify_prop_5_7_report,
    verify_theorem_2_1,
)
from services.runner.report import render_report


@pytest.fixture(scope="module")
def example_2_5():
    return build_example_2_5()


@pytest.fixture(scope="module")
def example_2_7():
    return build_example_2_7()


def _full_legs(A):
    return BiAmalgConfig(identity_hom(A), identity_hom(A), unit_ideal(A), unit_ideal(A))


def _hypothesis(report, name):
    return next(h for h in report.hypotheses if h.name == name)


# ── Regular-ideal transfer ────────────────────────────────────────────────────

@pytest.mark.parametrize("mode", list(Mode))
def test_thm_2_1_with_full_legs(mode):
    report = verify_theorem_2_1(_full_legs(make_zmod(4)), mode)
    assert report.status is Status.VERIFIED
    (check,) = report.conclusion_checks
    assert check.computed is True


def test_thm_2_1_non_gaussian_legs():
    A1     = make_monomial_quotient(2, ["x", "y"], {"x": 2, "y": 2})
    report = verify_theorem_2_1(_full_legs(A1), Mode.GAUSSIAN)
    assert report.status is Status.VERIFIED
    assert report.conclusion_checks[0].computed is False

    prufer = verify_theorem_2_1(_full_legs(A1), Mode.PRUFER)
    assert prufer.status is Status.VERIFIED
    assert prufer.conclusion_checks[0].computed is True


def test_thm_2_1_proper_ideal_is_never_regular():
    Z4     = make_zmod(4)
    report = verify_theorem_2_1(duplicate(Z4, span(Z4, [2])).config)
    assert report.status is Status.HYPOTHESIS_NOT_MET
    assert report.notes
    assert report.to_dict()["status"] == "hypothesis_not_met"


def test_cor_2_2():
    Z4, Z2 = make_zmod(4), make_zmod(2)
    f = hom_from_table(Z4, Z2, [0, 1, 0, 1])
    assert verify_cor_2_2(f, unit_ideal(Z2)).status is Status.VERIFIED
    assert verify_cor_2_2(f, zero_ideal(Z2), Mode.PRUFER).status is Status.HYPOTHESIS_NOT_MET


def test_cor_2_3():
    Z4 = make_zmod(4)
    assert verify_cor_2_3(Z4, span(Z4, [2])).status is Status.HYPOTHESIS_NOT_MET
    report = verify_cor_2_3(Z4, unit_ideal(Z4), "gaussian")
    assert report.status is Status.VERIFIED
    assert report.notes


def test_vacuity_scan():
    rings  = [make_zmod(n) for n in (1, 2, 4, 6, 8, 12)]
    rings += [make_monomial_quotient(2, ["x", "y"], {"x": 2, "y": 2})]
    report = theorem_2_1_vacuity_scan(rings)
    assert report.status is Status.VERIFIED
    assert len(report.conclusion_checks) == len(rings)
    assert report.notes[0].startswith("proper ideals scanned")


# ── Local Gaussian transfer ───────────────────────────────────────────────────

@pytest.mark.parametrize("part", [2, 3])
def test_prop_2_4_on_example_2_5(example_2_5, part):
    report = verify_prop_2_4(part, example_2_5)
    assert report.status is Status.VERIFIED, report.to_dict()


def test_prop_2_4_1_on_example_2_7(example_2_7):
    report = verify_prop_2_4(1, example_2_7)
    assert report.status is Status.VERIFIED
    assert report.bundle["D gaussian"] is False


def test_prop_2_4_unknown_part(example_2_5):
    with pytest.raises(InvalidArgumentError):
        verify_prop_2_4(4, example_2_5)


def test_prop_2_4_needs_a_local_base():
    Z6 = make_zmod(6)
    report = verify_prop_2_4(2, duplicate(Z6, span(Z6, [2])).config)
    assert report.status is Status.HYPOTHESIS_NOT_MET
    assert not _hypothesis(report, "A is local").holds


def test_prop_2_6_on_example_2_7(example_2_7):
    report = verify_prop_2_6(example_2_7)
    assert report.status is Status.VERIFIED
    assert [c.computed for c in report.conclusion_checks] == [True, True, True]


def test_prop_2_6_with_zero_J():
    Z4 = make_zmod(4)
    cfg = BiAmalgConfig(identity_hom(Z4), identity_hom(Z4), zero_ideal(Z4), zero_ideal(Z4))
    report = verify_prop_2_6(cfg)
    assert report.status is Status.HYPOTHESIS_NOT_MET
    assert not _hypothesis(report, "J is a nonzero proper ideal of B").holds


def test_prop_2_6_with_non_injective_f():
    Z4 = make_zmod(4)
    T  = trivext(Z4, make_module(Z4, [span(Z4, [2])]))
    J  = span(Z4, [2])
    cfg = BiAmalgConfig(T.projection, identity_hom(T.ring), J, preimage_ideal(T.projection, J))
    report = verify_prop_2_6(cfg)
    assert report.status is Status.HYPOTHESIS_NOT_MET
    assert not _hypothesis(report, "f is injective").holds
    assert _hypothesis(report, "J'^2 = 0").holds


# ── Localization and factor rings ─────────────────────────────────────────────

def test_prop_5_7_report(example_2_5):
    (m,) = maximal_ideals(example_2_5.A)
    assert verify_prop_5_7_report(example_2_5, m).status is Status.VERIFIED


def test_prop_5_7_report_when_p_misses_I0():
    Z6 = make_zmod(6)
    report = verify_prop_5_7_report(duplicate(Z6, span(Z6, [2])).config, span(Z6, [3]))
    assert report.status is Status.HYPOTHESIS_NOT_MET


def test_factor_isomorphisms(example_2_5):
    assert verify_factor_isomorphisms(biamalg(example_2_5)).status is Status.VERIFIED
    Z6 = make_zmod(6)
    assert verify_factor_isomorphisms(duplicate(Z6, span(Z6, [2]))).status is Status.VERIFIED


def test_factor_isomorphisms_on_a_product_target():
    Z4 = make_zmod(4)
    P  = make_product(make_zmod(2), make_zmod(2))
    f  = hom_from_table(Z4, P, [P.element(t) for t in ("(0, 0)", "(1, 1)", "(0, 0)", "(1, 1)")])
    J  = span(P, [P.element("(1, 0)")])
    cfg = BiAmalgConfig(f, identity_hom(Z4), J, preimage_ideal(f, J))
    assert verify_factor_isomorphisms(biamalg(cfg)).status is Status.VERIFIED


# ── Random configurations ─────────────────────────────────────────────────────

@pytest.mark.parametrize("seed", [1, 2])
def test_random_config_is_seed_deterministic(seed):
    first, second = random_config(seed), random_config(seed)
    assert first.description == second.description
    assert first.expected_size() == second.expected_size()
    assert first.expected_size() <= 256


def test_random_config_respects_the_bound():
    for s in range(10):
        assert random_config(s, max_elements=64).expected_size() <= 64


def test_random_config_gives_up():
    with pytest.raises(ConfigGenerationError) as excinfo:
        random_config(3, max_elements=1)
    assert excinfo.value.kind == "generation-failure"


def test_random_config_unknown_filter():
    with pytest.raises(InvalidArgumentError):
        random_config(0, filter="prop9.9")


def test_fuzz_configs_yields_every_seed():
    seeds = [s for s, _ in fuzz_configs(5, 4)]
    assert seeds == [5, 6, 7, 8]


def test_fuzz_prop_2_4_2_has_no_violation():
    report = fuzz_reports(0, 100, "prop2.4.2", progress=False)
    assert len(report.statements) == 100
    assert report.status == "ok"
    assert all(s.theorem["status"] == "verified" for s in report.statements)


def test_fuzz_degenerate_thm_2_1():
    report = fuzz_reports(0, 20, "thm2.1-degenerate", progress=False)
    assert len(report.statements) == 40
    assert report.status == "ok"
    assert not any(s.is_violation for s in report.statements)


def test_fuzz_factor_isomorphisms():
    report = fuzz_reports(100, 10, progress=False)
    assert report.status == "ok"
    assert report.find("seed100") is not None


def test_fuzz_negative_count():
    with pytest.raises(InvalidArgumentError):
        fuzz_reports(0, -1, progress=False)


# ── Worked examples ───────────────────────────────────────────────────────────

def test_run_example_2_5():
    report = run_example("2.5")
    assert report.status == "ok"
    assert "32 elements" in report.find("D").summary
    verdicts = {s.text: s.verdict for s in report.statements if s.verdict}
    assert verdicts["check gaussian D"]["holds"] is True
    assert verdicts["check arithmetical D"]["holds"] is False
    assert verdicts["check arithmetical A"]["holds"] is False
    theorems = [s.theorem["status"] for s in report.statements if s.theorem]
    assert theorems and set(theorems) == {"verified"}


def test_run_example_2_7():
    report = run_example("2.7", verbose=True)
    assert report.status == "ok"
    verdicts = {s.text: s.verdict for s in report.statements if s.verdict}
    assert sorted(verdicts["check gaussian A1"]["witness"]) == ["x", "y"]
    assert verdicts["check prufer D"]["holds"] is True
    assert verdicts["check gaussian D"]["holds"] is False
    assert verdicts["check total_quotients D"]["holds"] is True
    assert all(s.elapsed_ms is not None for s in report.statements)


def test_run_example_unknown():
    with pytest.raises(InvalidArgumentError):
        run_example("3.1")


def test_example_2_5_stated_squares_vanish():
    report   = run_example("2.5")
    verdicts = {s.text: s.verdict for s in report.statements if s.verdict}
    assert verdicts["m1^2 = 0 in A1 and m^2 = 0 in A"]["holds"] is True
    extension = verdicts["extend m to D"]
    assert extension["holds"] is True
    assert extension["data"] == {"|P|": 16, "|D/P|": 2}


def test_squares_vanish_reports_the_nonzero_square():
    Z8 = make_zmod(8)
    v  = squares_vanish(span(Z8, [4]), span(Z8, [2]))
    assert not v.holds
    (square,) = v.witness
    assert square.elements == {0, 4}
    assert squares_vanish(span(Z8, [4])).holds


@pytest.mark.parametrize("which", ["2.5", "2.7"])
def test_example_reports_are_reproducible(which):
    first  = render_report(run_example(which), "json")
    second = render_report(run_example(which), "json")
    assert first == second


def test_fuzz_prop_2_6_has_no_violation():
    report = fuzz_reports(0, 10, "prop2.6", progress=False)
    assert len(report.statements) == 10
    assert report.status == "ok"
    assert all(s.theorem["status"] == "verified" for s in report.statements)


@pytest.mark.parametrize("seed", [0, 40])
def test_fuzz_degenerate_thm_2_1_checks_both_modes(seed):
    report = fuzz_reports(seed, 5, "thm2.1-degenerate", progress=False)
    assert len(report.statements) == 10
    assert report.status == "ok"
    assert not any(s.theorem["status"] == "VIOLATION" for s in report.statements)
    assert [s.line for s in report.statements] == [n for n in range(seed, seed + 5) for _ in range(2)]
