# biamalg.py
# Command-line entry point.
#
#   biamalg run <script> [--json-out PATH] [--seed N] [--max-elements N] [--fail-fast] [--verbose]
#   biamalg example 2.5|2.7
#   biamalg fuzz --seed N --count K --filter none|prop2.4.2|prop2.6|thm2.1-degenerate
#
# The text report goes to stdout, logs to stderr. Exit code 0 iff no statement
# errored and no theorem check came back VIOLATION.

import sys
from pathlib import Path
from typing import Optional

import click

from constants import GENERATOR_FILTERS, VERSION
from script_parser import ScriptError, parse_script
from shared.config.settings import get_settings, override_settings, restore_settings
from shared.logging.logger import get_logger, set_level
from services.harness.paper_examples import run_example
from services.harness.random_configs import fuzz_reports
from services.runner.executor import run_script
from services.runner.report import ErrorInfo, RunReport, StatementResult, render_report

logger = get_logger(__name__)


def _parse_error_report(exc: ScriptError, seed: int) -> RunReport:
    result = StatementResult(
        index=0, line=exc.line, text=f"parse {exc.kind}", kind="parse", ok=False,
        error=ErrorInfo(kind=exc.kind, message=exc.message, line=exc.line, column=exc.column),
    )
    return RunReport(seed=seed, statements=[result]).finalize()


def _emit(report: RunReport, json_out: Optional[str]) -> None:
    sys.stdout.buffer.write(render_report(report, "text"))
    sys.stdout.flush()
    if json_out:
        Path(json_out).write_bytes(render_report(report, "json"))


@click.group()
@click.version_option(VERSION, prog_name="biamalg")
def cli():
    """Finite commutative rings, bi-amalgamations and their Gaussian / Prüfer checks."""


@cli.command()
@click.argument("script", type=click.Path(exists=True, dir_okay=False))
@click.option("--json-out", type=click.Path(dir_okay=False), default=None, help="Also write the JSON report here.")
@click.option("--seed", type=int, default=None, help="Seed recorded in the report (default BIAMALG_SEED).")
@click.option("--max-elements", type=click.IntRange(min=1), default=None, help="Element cap for every constructor.")
@click.option("--fail-fast", is_flag=True, help="Stop at the first failing statement.")
@click.option("--verbose", is_flag=True, help="INFO logs and per-statement timings.")
def run(script, json_out, seed, max_elements, fail_fast, verbose):
    """Parse and execute a script."""
    if verbose:
        set_level("INFO")
    seed     = get_settings().seed if seed is None else seed
    previous = override_settings(max_elements=max_elements) if max_elements is not None else None

    try:
        parsed = parse_script(Path(script).read_text(encoding="utf-8"))
    except ScriptError as exc:
        logger.warning("Script rejected", extra={"line": exc.line, "status": exc.kind})
        report = _parse_error_report(exc, seed)
    else:
        report = run_script(parsed, seed=seed, fail_fast=fail_fast, verbose=verbose)
    finally:
        if previous is not None:
            restore_settings(previous)

    _emit(report, json_out)
    sys.exit(report.exit_code)


@cli.command()
@click.argument("which", type=click.Choice(["2.5", "2.7"]))
@click.option("--json-out", type=click.Path(dir_okay=False), default=None)
@click.option("--verbose", is_flag=True)
def example(which, json_out, verbose):
    """Rebuild a worked example and run every check stated about it."""
    if verbose:
        set_level("INFO")
    report = run_example(which, verbose=verbose, seed=get_settings().seed)
    _emit(report, json_out)
    sys.exit(report.exit_code)


@cli.command()
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--count", type=click.IntRange(min=0), default=10, show_default=True)
@click.option("--filter", "filter_", type=click.Choice(GENERATOR_FILTERS), default="none", show_default=True)
@click.option("--json-out", type=click.Path(dir_okay=False), default=None)
@click.option("--verbose", is_flag=True)
def fuzz(seed, count, filter_, json_out, verbose):
    """Verify a theorem on randomly generated configurations."""
    if verbose:
        set_level("INFO")
    report = fuzz_reports(seed, count, filter_)
    _emit(report, json_out)
    sys.exit(report.exit_code)


if __name__ == "__main__":
    cli()
