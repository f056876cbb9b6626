# services/runner/report.py
# Run report models and their text / JSON renderings.
# Both renderings are produced from the same StatementResult fields.

import json
from typing import Optional

from pydantic import BaseModel

from constants import VERSION


class ErrorInfo(BaseModel):
    kind:    str
    message: str
    line:    Optional[int] = None
    column:  Optional[int] = None


class StatementResult(BaseModel):
    index:      int
    line:       int
    text:       str
    kind:       str
    name:       Optional[str] = None
    ok:         bool = True
    summary:    Optional[str] = None
    verdict:    Optional[dict] = None
    theorem:    Optional[dict] = None
    error:      Optional[ErrorInfo] = None
    elapsed_ms: Optional[float] = None

    @property
    def is_violation(self) -> bool:
        return bool(self.theorem) and self.theorem.get("status") == "VIOLATION"


class RunReport(BaseModel):
    version:    str = VERSION
    seed:       int = 0
    status:     str = "ok"
    statements: list[StatementResult] = []

    def finalize(self) -> "RunReport":
        if any(s.error for s in self.statements):
            self.status = "error"
        elif any(s.is_violation for s in self.statements):
            self.status = "violation"
        else:
            self.status = "ok"
        return self

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "ok" else 1

    def find(self, name: str) -> Optional[StatementResult]:
        return next((s for s in self.statements if s.name == name), None)


# ── Rendering ─────────────────────────────────────────────────────────────────

def _mark(ok: bool) -> str:
    return "✓" if ok else "✗"


def _text_lines(s: StatementResult) -> list:
    head = f"[{s.line}] {s.text}"
    if s.error:
        return [head, f"    error [{s.error.kind}]: {s.error.message}"]

    lines = [head]
    if s.summary:
        lines.append(f"    {s.summary}")
    if s.verdict:
        v = s.verdict
        status = "holds" if v["holds"] else "fails"
        lines.append(f"    {_mark(v['holds'])} {status} ({v['method']})")
        if "witness" in v:
            lines.append(f"    witness: {json.dumps(v['witness'], ensure_ascii=False)}")
    if s.theorem:
        t = s.theorem
        lines.append(f"    status: {t['status']}")
        for h in t["hypotheses"]:
            detail = f"  [{json.dumps(h['witness'], ensure_ascii=False)}]" if h.get("witness") else ""
            lines.append(f"      {_mark(h['holds'])} {h['name']}{detail}")
        for c in t["conclusion_checks"]:
            ok = c["expected"] == c["computed"]
            lines.append(f"      {_mark(ok)} {c['name']}: expected {str(c['expected']).lower()}, "
                         f"computed {str(c['computed']).lower()}")
        for note in t.get("notes", []):
            lines.append(f"      note: {note}")
    if s.elapsed_ms is not None:
        lines.append(f"    elapsed: {s.elapsed_ms:.1f} ms")
    return lines


def render_report(report: RunReport, fmt: str = "text") -> bytes:
    if fmt == "json":
        payload = report.model_dump(exclude_none=True)
        return (json.dumps(payload, ensure_ascii=False, indent=2) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")

    lines = [f"biamalg {report.version}  seed={report.seed}"]
    for s in report.statements:
        lines.extend(_text_lines(s))
    lines.append(f"status: {report.status} ({len(report.statements)} statements)")
    return ("\n".join(lines) + "\n").encode("utf-8")
