# services/runner/executor.py
# Executes a parsed Script against the algebra library, one statement at a time.
# The ONLY place script names are bound to rings, modules, ideals and homs.
#
# A failed statement never stops the run (unless fail_fast): its name is marked
# failed and every later statement that refers to it reports dependency-failed.

import time
from typing import Any

from script_parser import REF_KINDS, SIGNATURES
from script_state import Script, Statement
from shared.logging.logger import get_logger
from services.algebra.constructions import (
    BiAmalgConfig, BiAmalgRing, TrivialExtension, amalg, biamalg, duplicate, trivext,
)
from services.algebra.errors import AlgebraError, InvalidArgumentError
from services.algebra.homs import hom_compose, hom_from_table, identity_hom
from services.algebra.ideals import Ideal, quotient_ring, span
from services.algebra.modules import make_module
from services.algebra.properties import check_property
from services.algebra.ring_core import FiniteRing, make_monomial_quotient, make_product, make_zmod
from services.harness.theorems import (
    Mode, verify_cor_2_2, verify_cor_2_3, verify_prop_2_4, verify_prop_2_6,
    verify_prop_5_7_report, verify_theorem_2_1,
)
from services.runner.report import ErrorInfo, RunReport, StatementResult

logger = get_logger(__name__)


class DependencyError(AlgebraError):
    kind = "dependency-failed"


class _Session:
    def __init__(self):
        self.bindings:  dict = {}
        self.failed:    set  = set()
        self._trivexts: dict = {}   # (id(A), id(E)) -> TrivialExtension
        self._by_ring:  dict = {}   # id(A ⋉ E) -> TrivialExtension
        self._quotients: dict = {}  # (id(R), elements of I) -> (Q, q)

    # ── Lookups ───────────────────────────────────────────────────────────────

    def ring(self, name: str) -> FiniteRing:
        value = self.bindings[name]
        return value.ring if isinstance(value, BiAmalgRing) else value

    def config(self, name: str) -> BiAmalgConfig:
        return self.bindings[name].config

    def trivext(self, A: FiniteRing, E) -> TrivialExtension:
        key = (id(A), id(E))
        if key not in self._trivexts:
            T = trivext(A, E)
            self._trivexts[key]    = T
            self._by_ring[id(T.ring)] = T
        return self._trivexts[key]

    def trivext_of(self, R: FiniteRing) -> TrivialExtension:
        if id(R) not in self._by_ring:
            raise InvalidArgumentError(f"{R.name} was not built by trivext in this script")
        return self._by_ring[id(R)]

    def quotient(self, R: FiniteRing, I: Ideal) -> tuple:
        if I.ring is not R:
            raise InvalidArgumentError(f"{I!r} is not an ideal of {R.name}")
        key = (id(R), I.elements)
        if key not in self._quotients:
            self._quotients[key] = quotient_ring(R, I)
        return self._quotients[key]

    # ── Statement handlers ────────────────────────────────────────────────────

    def ring_stmt(self, st: Statement) -> tuple:
        op, env, args = st.op, self.bindings, st.args
        if op == "zmod":
            R = make_zmod(args[0])
        elif op == "polyquo":
            R = make_monomial_quotient(args[0], args[1], None, args[2])
        elif op == "product":
            R = make_product(self.ring(args[0]), self.ring(args[1]))
        elif op == "quotient":
            R, _ = self.quotient(self.ring(args[0]), env[args[1]])
        elif op == "trivext":
            R = self.trivext(self.ring(args[0]), env[args[1]]).ring
        else:
            if op == "biamalg":
                D = biamalg(BiAmalgConfig(env[args[0]], env[args[1]], env[args[2]], env[args[3]]), name=st.name)
            elif op == "amalg":
                D = amalg(env[args[0]], env[args[1]], name=st.name)
            else:
                D = duplicate(self.ring(args[0]), env[args[1]], name=st.name)
            I0 = D.config.I0
            return D, f"{st.name} = {D.ring.name}: {D.size} elements (I0 = {I0.describe()}, {I0.size} elements)"
        return R, f"{st.name} = {R.name}: {R.size} elements"

    def module_stmt(self, st: Statement) -> tuple:
        ring, ideal, copies, symbol = st.args
        E = make_module(self.ring(ring), [self.bindings[ideal]], copies=copies, symbol=symbol)
        return E, f"{st.name} = {E.name}: {E.size} elements"

    def ideal_stmt(self, st: Statement) -> tuple:
        R = self.ring(st.args[0])
        I = span(R, [R.element(text) for text in st.args[1]])
        return I, f"{st.name} = {I.describe()} in {R.name}: {I.size} elements"

    def hom_stmt(self, st: Statement) -> tuple:
        op, env, args = st.op, self.bindings, st.args
        if op == "id":
            h = identity_hom(self.ring(args[0]))
        elif op == "quomap":
            _, h = self.quotient(self.ring(args[0]), env[args[1]])
        elif op == "inject_trivext":
            h = self.trivext(self.ring(args[0]), env[args[1]]).inclusion
        elif op == "project_trivext":
            h = self.trivext_of(self.ring(args[0])).projection
        elif op == "compose":
            h = hom_compose(env[args[0]], env[args[1]])
        else:
            A, B = self.ring(args[0]), self.ring(args[1])
            h = hom_from_table(A, B, {A.element(x): B.element(y) for x, y in args[2]}, name=st.name)
        return h, f"{st.name}: {h.domain.name} → {h.codomain.name}"

    def check_stmt(self, st: Statement) -> dict:
        return check_property(st.op, self.ring(st.args[0])).to_dict()

    def verify_stmt(self, st: Statement) -> dict:
        tid, args = st.op, st.args
        if tid == "thm2.1":
            report = verify_theorem_2_1(self.config(args[0]), Mode(args[1]))
        elif tid == "cor2.2":
            report = verify_cor_2_2(self.bindings[args[0]], self.bindings[args[1]], Mode(args[2]))
        elif tid == "cor2.3":
            report = verify_cor_2_3(self.ring(args[0]), self.bindings[args[1]], Mode(args[2]))
        elif tid.startswith("prop2.4."):
            report = verify_prop_2_4(int(tid.rsplit(".", 1)[1]), self.config(args[0]))
        elif tid == "prop2.6":
            report = verify_prop_2_6(self.config(args[0]))
        else:
            report = verify_prop_5_7_report(self.config(args[0]), self.bindings[args[1]])
        return report.to_dict()

    # ── Dispatch ──────────────────────────────────────────────────────────────

    def failed_dependency(self, st: Statement) -> Any:
        refs = [v for arg_kind, v in zip(SIGNATURES[(st.keyword, st.op)], st.args) if arg_kind in REF_KINDS]
        return next((r for r in refs if r in self.failed), None)

    def execute(self, st: Statement, result: StatementResult) -> None:
        missing = self.failed_dependency(st)
        if missing is not None:
            raise DependencyError(f"depends on {missing!r}, which failed")

        if st.keyword == "check":
            result.verdict = self.check_stmt(st)
        elif st.keyword == "verify":
            result.theorem = self.verify_stmt(st)
        else:
            handler = getattr(self, f"{st.keyword}_stmt")
            value, result.summary = handler(st)
            self.bindings[st.name] = value


def run_script(script: Script, seed: int = 0, fail_fast: bool = False, verbose: bool = False) -> RunReport:
    """Runs every statement in order; errors are attached to their statement."""
    session = _Session()
    results = []

    for index, st in enumerate(script):
        started = time.perf_counter()
        result  = StatementResult(index=index, line=st.line, text=st.text, kind=st.keyword, name=st.name)
        try:
            session.execute(st, result)
        except AlgebraError as exc:
            result.ok    = False
            result.error = ErrorInfo(kind=exc.kind, message=str(exc), line=st.line)
        except Exception as exc:
            logger.error("Statement crashed", extra={"line": st.line, "statement": st.text,
                                                     "status": type(exc).__name__})
            result.ok    = False
            result.error = ErrorInfo(kind="internal-error", message=f"{type(exc).__name__}: {exc}",
                                     line=st.line)

        if result.error and st.name is not None:
            session.failed.add(st.name)
        elapsed = (time.perf_counter() - started) * 1000
        if verbose:
            result.elapsed_ms = elapsed
        logger.info("Statement executed", extra={
            "line": st.line, "statement": st.text, "elapsed_ms": round(elapsed, 1),
            "status": result.error.kind if result.error else "ok",
        })
        results.append(result)
        if fail_fast and result.error:
            break

    return RunReport(seed=seed, statements=results).finalize()
