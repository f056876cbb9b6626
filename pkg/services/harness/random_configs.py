# services/harness/random_configs.py
# Seed-deterministic generator of small bi-amalgamation configurations, and the
# fuzz loop that runs a theorem verifier over a run of consecutive seeds.
#
# Every family is assembled so that f⁻¹(J) = g⁻¹(J') holds by construction;
# hypothesis filters and size bounds reject candidates, and tenacity retries
# with the same random stream until one passes or the budget is spent.

import random
import time
from typing import Callable, Iterable

from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt
from tqdm import tqdm

from constants import (
    BASE_RING_POOL, GENERATOR_FAMILIES, GENERATOR_FILTERS, GENERATOR_RETRIES, GENERATOR_SIZE_BOUND,
)
from shared.config.settings import override_settings, restore_settings
from shared.logging.logger import get_logger
from services.algebra.constructions import BiAmalgConfig, biamalg, module_ideal, trivext
from services.algebra.errors import (
    AlgebraError, ConductorMismatchError, InvalidArgumentError, SizeLimitError,
)
from services.algebra.homs import identity_hom
from services.algebra.ideals import all_ideals, extend_ideal, quotient_ring, unit_ideal, zero_ideal
from services.algebra.modules import make_module
from services.algebra.properties import is_local
from services.algebra.ring_core import FiniteRing, make_monomial_quotient, make_zmod
from services.harness.theorems import (
    Mode, TheoremReport, verify_factor_isomorphisms, verify_prop_2_4, verify_prop_2_6,
    verify_theorem_2_1,
)
from services.runner.report import ErrorInfo, RunReport, StatementResult

logger = get_logger(__name__)


class ConfigGenerationError(AlgebraError):
    """The retry budget ran out before a candidate passed the size bound and the filter."""
    kind = "generation-failure"


class _Rejected(Exception):
    """A candidate built fine but failed the hypothesis filter."""


# ── Base rings ────────────────────────────────────────────────────────────────

def _build_base(entry: tuple) -> FiniteRing:
    if entry[0] == "zmod":
        return make_zmod(entry[1])
    _, p, variables, bounds, extra = entry
    return make_monomial_quotient(p, variables, dict(bounds), extra)


def _pick_base(rng: random.Random, local: bool) -> FiniteRing:
    entry = rng.choice(BASE_RING_POOL)
    A     = _build_base(entry)
    if local and not is_local(A).holds:
        raise _Rejected(f"{A.name} is not local")
    return A


def _maximal_ideal(A: FiniteRing):
    return is_local(A).data["maximal_ideal"]


# ── Families ──────────────────────────────────────────────────────────────────

def _trivext_legs(rng: random.Random) -> BiAmalgConfig:
    """B = A ⋉ A/m, C = A ⋉ A/m (separate copies), both legs the inclusions."""
    A  = _pick_base(rng, local=True)
    m  = _maximal_ideal(A)
    TB = trivext(A, make_module(A, [m], symbol="u"))
    TC = trivext(A, make_module(A, [m], symbol="v"))
    base = m if rng.random() < 0.5 else zero_ideal(A)
    return BiAmalgConfig(TB.inclusion, TC.inclusion, module_ideal(TB, base), module_ideal(TC, base),
                         description=f"trivext-legs over {A.name}, I0 = {base.describe()}")


def _maximal_legs(rng: random.Random) -> BiAmalgConfig:
    """A = A1 ⋉ A1/m1, B = A ⋉ A/m, C = A1, g the projection, J' = m1."""
    A1 = _pick_base(rng, local=True)
    m1 = _maximal_ideal(A1)
    TA = trivext(A1, make_module(A1, [m1], symbol="e"))
    m  = module_ideal(TA, m1)
    TB = trivext(TA.ring, make_module(TA.ring, [m], symbol="u"))
    return BiAmalgConfig(TB.inclusion, TA.projection, module_ideal(TB, m), m1,
                         description=f"maximal-legs over {A1.name}")


def _duplication(rng: random.Random) -> BiAmalgConfig:
    A  = _pick_base(rng, local=False)
    I  = rng.choice(all_ideals(A))
    ident  = identity_hom(A)
    return BiAmalgConfig(ident, ident, I, I, description=f"duplication of {A.name} along {I.describe()}")


def _quotient_leg(rng: random.Random) -> BiAmalgConfig:
    """f = id, g = A → A/K with K ⊆ I; J = I and J' = the image of I."""
    A      = _pick_base(rng, local=False)
    ideals = all_ideals(A)
    I      = rng.choice(ideals)
    K      = rng.choice([K for K in ideals if K <= I])
    _, q   = quotient_ring(A, K)
    return BiAmalgConfig(identity_hom(A), q, I, extend_ideal(q, I),
                         description=f"quotient-leg {A.name} / {K.describe()}, J = {I.describe()}")


def _full_legs(rng: random.Random) -> BiAmalgConfig:
    """J = B and J' = C."""
    A    = _pick_base(rng, local=False)
    K    = rng.choice(all_ideals(A))
    Q, q = quotient_ring(A, K)
    return BiAmalgConfig(identity_hom(A), q, unit_ideal(A), unit_ideal(Q),
                         description=f"full-legs {A.name} and {Q.name}")


_FAMILIES: dict = {
    "trivext-legs": _trivext_legs,
    "maximal-legs": _maximal_legs,
    "duplication":  _duplication,
    "quotient-leg": _quotient_leg,
    "full-legs":    _full_legs,
}
assert tuple(_FAMILIES) == GENERATOR_FAMILIES


# ── Filters ───────────────────────────────────────────────────────────────────

_FILTER_FAMILIES = {
    "none":              GENERATOR_FAMILIES,
    "prop2.4.2":         ("trivext-legs", "maximal-legs"),
    "prop2.6":           ("trivext-legs",),
    "thm2.1-degenerate": ("full-legs",),
}

_FILTERS: dict = {
    "none":              lambda cfg: True,
    "prop2.4.2":         lambda cfg: verify_prop_2_4(2, cfg).hypotheses_hold,
    "prop2.6":           lambda cfg: verify_prop_2_6(cfg).hypotheses_hold,
    "thm2.1-degenerate": lambda cfg: cfg.J.is_unit_ideal and cfg.J_prime.is_unit_ideal,
}


def _check_filter(name: str) -> None:
    if name not in GENERATOR_FILTERS:
        raise InvalidArgumentError(f"unknown filter {name!r}; choose one of {', '.join(GENERATOR_FILTERS)}")


def _candidate(rng: random.Random, filter: str, max_elements: int) -> BiAmalgConfig:
    family = rng.choice(_FILTER_FAMILIES[filter])
    cfg    = _FAMILIES[family](rng)
    if cfg.expected_size() > max_elements:
        raise SizeLimitError(cfg.description, cfg.expected_size(), max_elements)
    if not _FILTERS[filter](cfg):
        raise _Rejected(f"{cfg.description} fails the {filter} hypotheses")
    return cfg


def _log_retry(seed: int):
    def after(state):
        exc = state.outcome.exception()
        logger.warning("Config candidate rejected", extra={
            "seed": seed, "op": "random_config", "status": type(exc).__name__, "witness": str(exc),
        })
    return after


def random_config(
    seed:         int,
    max_elements: int = GENERATOR_SIZE_BOUND,
    filter:       str = "none",
) -> BiAmalgConfig:
    """
    Draws a configuration from `seed`. Every ring built along the way, and the
    bi-amalgamation itself, must fit in `max_elements`.
    """
    _check_filter(filter)
    rng      = random.Random(seed)
    previous = override_settings(max_elements=max_elements)
    try:
        for attempt in Retrying(
            stop  = stop_after_attempt(GENERATOR_RETRIES),
            retry = retry_if_exception_type((_Rejected, ConductorMismatchError, SizeLimitError)),
            after = _log_retry(seed),
        ):
            with attempt:
                cfg = _candidate(rng, filter, max_elements)
    except RetryError as exc:
        raise ConfigGenerationError(
            f"seed {seed}: no configuration passed filter {filter!r} within "
            f"{GENERATOR_RETRIES} attempts ({exc.last_attempt.exception()})"
        ) from exc
    finally:
        restore_settings(previous)

    logger.info("Generated config", extra={"seed": seed, "op": filter, "size": cfg.expected_size()})
    return cfg


# ── Fuzzing ───────────────────────────────────────────────────────────────────

def _verifiers(filter: str) -> Callable[[BiAmalgConfig], list]:
    if filter == "prop2.4.2":
        return lambda cfg: [verify_prop_2_4(2, cfg)]
    if filter == "prop2.6":
        return lambda cfg: [verify_prop_2_6(cfg)]
    if filter == "thm2.1-degenerate":
        return lambda cfg: [verify_theorem_2_1(cfg, mode) for mode in Mode]
    return lambda cfg: [verify_factor_isomorphisms(biamalg(cfg))]


def fuzz_configs(seed: int, count: int, filter: str = "none") -> Iterable[tuple]:
    """Yields (seed, config or ConfigGenerationError) for seeds seed .. seed+count-1."""
    _check_filter(filter)
    for s in range(seed, seed + count):
        try:
            yield s, random_config(s, filter=filter)
        except ConfigGenerationError as exc:
            yield s, exc


def fuzz_reports(seed: int, count: int, filter: str = "none", progress: bool = True) -> RunReport:
    """One statement per verifier run, in seed order."""
    if count < 0:
        raise InvalidArgumentError(f"count must be >= 0, got {count}")
    verify  = _verifiers(filter)
    results = []

    def add(s: int, text: str, **fields) -> None:
        results.append(StatementResult(index=len(results), line=s, text=text, kind="verify", **fields))

    for s, cfg in tqdm(fuzz_configs(seed, count, filter), total=count, desc=f"fuzz {filter}",
                       unit="config", disable=not progress):
        if isinstance(cfg, ConfigGenerationError):
            add(s, f"config seed={s}", ok=False, error=ErrorInfo(kind=cfg.kind, message=str(cfg)))
            continue
        started = time.perf_counter()
        try:
            reports: list[TheoremReport] = verify(cfg)
        except AlgebraError as exc:
            add(s, f"config seed={s}: {cfg.description}", ok=False,
                error=ErrorInfo(kind=exc.kind, message=str(exc)))
            continue
        elapsed = (time.perf_counter() - started) * 1000
        for report in reports:
            add(s, f"{report.theorem_id} seed={s}: {cfg.description}", name=f"seed{s}",
                theorem=report.to_dict())
        logger.info("Fuzz config checked", extra={"seed": s, "elapsed_ms": round(elapsed, 1)})

    return RunReport(seed=seed, statements=results).finalize()
