# script_state.py
# Parsed script representation.
# A Script is an ordered list of Statements; the parser guarantees every name is
# bound exactly once and before use, so the executor never re-checks that.

from dataclasses import dataclass, field
from typing import Optional


# ── Binding kinds ─────────────────────────────────────────────────────────────

# A "config" is a ring built by biamalg / amalg / duplicate: usable wherever a
# ring is expected, and also where a theorem needs the whole configuration.
BINDING_KINDS = ("ring", "config", "module", "ideal", "hom")

CONFIG_OPS = {"biamalg", "amalg", "duplicate"}


def binding_kind(keyword: str, op: str) -> Optional[str]:
    if keyword == "ring":
        return "config" if op in CONFIG_OPS else "ring"
    if keyword in ("module", "ideal", "hom"):
        return keyword
    return None


def accepts(expected: str, actual: str) -> bool:
    return expected == actual or (expected == "ring" and actual == "config")


# ── Statements ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Statement:
    """
    One script line.

    keyword  ring | module | ideal | hom | check | verify
    name     the bound name, None for check / verify
    op       constructor, property name or theorem id
    args     argument values in signature order; list-valued arguments
             (polyquo variables, span elements, table pairs) are tuples
    """
    keyword: str
    name:    Optional[str]
    op:      str
    args:    tuple = ()
    line:    int   = field(default=0, compare=False)
    columns: tuple = field(default=(), compare=False)
    text:    str   = field(default="", compare=False)

    @property
    def binds(self) -> Optional[str]:
        return binding_kind(self.keyword, self.op)

    def column_of(self, position: int) -> int:
        return self.columns[position] if position < len(self.columns) else 1


@dataclass
class Script:
    statements: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.statements)

    def __iter__(self):
        return iter(self.statements)

    def definitions(self) -> list:
        return [s for s in self.statements if s.name is not None]

    def names(self) -> dict:
        """name -> binding kind, in definition order."""
        return {s.name: s.binds for s in self.statements if s.name is not None}

    def find(self, name: str) -> Optional[Statement]:
        return next((s for s in self.statements if s.name == name), None)
