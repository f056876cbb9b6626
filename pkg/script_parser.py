# script_parser.py
# Line-oriented script parser. Takes script text, returns a Script or raises the
# first error with its line and column. No execution, no ring construction.
#
# Two passes per line:
#   1. Head check: statement keyword, constructor / property / theorem id
#      (unknown ones raise UnknownCommandError)
#   2. pyparsing grammar for that statement's argument signature
# then a scope pass over the whole script for redefinition, use before
# definition and argument kinds.

from typing import NamedTuple

import pyparsing as pp

from constants import (
    HOM_CONSTRUCTORS, MODES, PROPERTIES, RING_CONSTRUCTORS, STATEMENT_KEYWORDS, THEOREM_ARGS,
)
from script_state import Script, Statement, accepts


# ── Errors ────────────────────────────────────────────────────────────────────

class ScriptError(Exception):
    kind = "script-error"

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line    = line
        self.column  = column


class ScriptSyntaxError(ScriptError):
    kind = "syntax-error"


class UnknownCommandError(ScriptError):
    kind = "unknown-command"


class RedefinitionError(ScriptError):
    kind = "redefinition"


class UseBeforeDefinitionError(ScriptError):
    kind = "use-before-definition"


class ArgumentKindError(ScriptError):
    kind = "argument-kind"


# ── Signatures ────────────────────────────────────────────────────────────────
# Reference kinds: ring, config, module, ideal, hom.
# Value kinds: int, vars (identifiers up to ':'), monos, elems, pairs,
# power? (^ k), symbol? (as s), mode?.

REF_KINDS = {"ring", "config", "module", "ideal", "hom"}

SIGNATURES = {
    ("ring", "zmod"):           ("int",),
    ("ring", "polyquo"):        ("int", "vars", "monos"),
    ("ring", "product"):        ("ring", "ring"),
    ("ring", "quotient"):       ("ring", "ideal"),
    ("ring", "trivext"):        ("ring", "module"),
    ("ring", "biamalg"):        ("hom", "hom", "ideal", "ideal"),
    ("ring", "amalg"):          ("hom", "ideal"),
    ("ring", "duplicate"):      ("ring", "ideal"),
    ("module", "cyclic"):       ("ring", "ideal", "power?", "symbol?"),
    ("ideal", "span"):          ("ring", "elems"),
    ("hom", "id"):              ("ring",),
    ("hom", "quomap"):          ("ring", "ideal"),
    ("hom", "inject_trivext"):  ("ring", "module"),
    ("hom", "project_trivext"): ("ring",),
    ("hom", "compose"):         ("hom", "hom"),
    ("hom", "table"):           ("ring", "ring", "pairs"),
}
SIGNATURES.update({("check", prop): ("ring",) for prop in PROPERTIES})
SIGNATURES.update({
    ("verify", tid): tuple("mode?" if kind == "mode" else kind for kind in kinds)
    for tid, kinds in THEOREM_ARGS.items()
})

_OPS = {
    "ring":   RING_CONSTRUCTORS,
    "module": {"cyclic"},
    "ideal":  {"span"},
    "hom":    HOM_CONSTRUCTORS,
    "check":  set(PROPERTIES),
    "verify": set(THEOREM_ARGS),
}


# ── Grammar ───────────────────────────────────────────────────────────────────

class Arg(NamedTuple):
    value:  object
    column: int


def _arg(expr: pp.ParserElement, convert=lambda t: t[0]) -> pp.ParserElement:
    expr = expr.copy()
    expr.add_parse_action(lambda s, loc, toks: [Arg(convert(toks), pp.col(loc, s))])
    return expr


IDENT = pp.Word(pp.alphas + "_", pp.alphanums + "_'")
INT   = pp.Word(pp.nums)
# Element literals use the ring's label syntax: bare words ("2", "x+y", "e1")
# or one parenthesised group, spaces included ("(2, e1)", "((0, e1), 0)").
ELEM  = pp.original_text_for(pp.nested_expr("(", ")")) | pp.Word(pp.printables, exclude_chars="()#-")
MONO  = pp.Word(pp.alphanums + "^*")

_VALUE_GRAMMARS = {
    "int":     _arg(INT, lambda t: int(t[0])),
    "vars":    _arg(pp.Group(pp.OneOrMore(IDENT)) + pp.Suppress(":"), lambda t: tuple(t[0])),
    "monos":   _arg(pp.Group(pp.OneOrMore(MONO)), lambda t: tuple(t[0])),
    "elems":   _arg(pp.Group(pp.ZeroOrMore(ELEM)), lambda t: tuple(t[0])),
    "pairs":   _arg(
        pp.Group(pp.ZeroOrMore(pp.Group(ELEM + pp.Suppress("->") + ELEM))),
        lambda t: tuple((a, b) for a, b in t[0]),
    ),
    "power?":  pp.Opt(_arg(pp.Suppress("^") + INT, lambda t: int(t[0])), default=Arg(1, 0)),
    "symbol?": pp.Opt(_arg(pp.Suppress(pp.Keyword("as")) + pp.Word(pp.alphas)), default=Arg("e", 0)),
    "mode?":   pp.Opt(_arg(pp.one_of(" ".join(MODES), as_keyword=True)), default=Arg("gaussian", 0)),
}


def _arg_grammar(arg_kind: str) -> pp.ParserElement:
    if arg_kind in REF_KINDS:
        return _arg(IDENT)
    return _VALUE_GRAMMARS[arg_kind]


def _statement_grammar(keyword: str, op: str) -> pp.ParserElement:
    if keyword in ("check", "verify"):
        head = pp.Keyword(keyword) + pp.Keyword(op)
    else:
        head = pp.Keyword(keyword) + _arg(IDENT) + pp.Suppress("=") + pp.Keyword(op)
    grammar = head
    for arg_kind in SIGNATURES[(keyword, op)]:
        grammar = grammar + _arg_grammar(arg_kind)
    return grammar


_GRAMMARS = {key: _statement_grammar(*key) for key in SIGNATURES}


# ── Line parsing ──────────────────────────────────────────────────────────────

def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _column_of_word(text: str, index: int) -> int:
    """1-based column of the index-th whitespace-separated word."""
    col, seen, inside = 1, -1, False
    for i, ch in enumerate(text):
        if not ch.isspace() and not inside:
            seen += 1
            if seen == index:
                return i + 1
        inside = not ch.isspace()
        col = i + 1
    return col + 1


def _head(text: str, line: int) -> tuple:
    words = text.split()
    keyword = words[0]
    if keyword not in STATEMENT_KEYWORDS:
        raise UnknownCommandError(f"unknown statement {keyword!r}", line, _column_of_word(text, 0))

    if keyword in ("check", "verify"):
        if len(words) < 2:
            raise ScriptSyntaxError(f"{keyword} needs a {'property' if keyword == 'check' else 'theorem id'}",
                                    line, _column_of_word(text, 1))
        op, op_word = words[1], 1
    else:
        if len(words) < 4 or words[2] != "=":
            raise ScriptSyntaxError(f"expected '{keyword} <name> = <constructor> ...'",
                                    line, _column_of_word(text, min(len(words), 2)))
        op, op_word = words[3], 3

    if op not in _OPS[keyword]:
        raise UnknownCommandError(
            f"unknown {keyword} {'constructor' if keyword not in ('check', 'verify') else 'target'} "
            f"{op!r}; expected one of {', '.join(sorted(_OPS[keyword]))}",
            line, _column_of_word(text, op_word),
        )
    return keyword, op


def parse_statement(raw: str, line: int = 1) -> Statement:
    text = _strip_comment(raw)
    if not text.strip():
        raise ScriptSyntaxError("empty statement", line)
    keyword, op = _head(text, line)
    try:
        toks = _GRAMMARS[(keyword, op)].parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise ScriptSyntaxError(f"bad arguments for {keyword} {op}: {exc.msg}", line, exc.column) from None

    values = [t for t in toks if isinstance(t, Arg)]
    name   = None
    if keyword not in ("check", "verify"):
        name, values = values[0].value, values[1:]
    return Statement(
        keyword = keyword,
        name    = name,
        op      = op,
        args    = tuple(a.value for a in values),
        line    = line,
        columns = tuple(a.column for a in values),
        text    = text.strip(),
    )


# ── Scope pass ────────────────────────────────────────────────────────────────

def _check_scope(statements: list) -> None:
    bound = {}
    for st in statements:
        for i, (arg_kind, value) in enumerate(zip(SIGNATURES[(st.keyword, st.op)], st.args)):
            if arg_kind not in REF_KINDS:
                continue
            if value not in bound:
                raise UseBeforeDefinitionError(f"{value!r} is not defined", st.line, st.column_of(i))
            if not accepts(arg_kind, bound[value]):
                raise ArgumentKindError(
                    f"{value!r} is a {bound[value]}, {st.keyword} {st.op} expects a {arg_kind} here",
                    st.line, st.column_of(i),
                )
        if st.name is not None:
            if st.name in bound:
                raise RedefinitionError(f"{st.name!r} is already defined", st.line,
                                        _column_of_word(st.text, 1))
            bound[st.name] = st.binds


def parse_script(text: str) -> Script:
    """Full parse or the first error; blank lines and '#' comments are skipped."""
    statements = []
    for line, raw in enumerate(text.splitlines(), start=1):
        if not _strip_comment(raw).strip():
            continue
        statements.append(parse_statement(raw, line))
    _check_scope(statements)
    return Script(statements)


# ── Rendering ─────────────────────────────────────────────────────────────────

def _render_arg(arg_kind: str, value) -> str:
    if arg_kind == "vars":
        return " ".join(value) + " :"
    if arg_kind in ("monos", "elems"):
        return " ".join(value)
    if arg_kind == "pairs":
        return " ".join(f"{a} -> {b}" for a, b in value)
    if arg_kind == "power?":
        return "" if value == 1 else f"^ {value}"
    if arg_kind == "symbol?":
        return "" if value == "e" else f"as {value}"
    return str(value)


def render_statement(st: Statement) -> str:
    if st.name is None:
        parts = [st.keyword, st.op]
    else:
        parts = [st.keyword, st.name, "=", st.op]
    parts += [_render_arg(arg_kind, v) for arg_kind, v in zip(SIGNATURES[(st.keyword, st.op)], st.args)]
    return " ".join(p for p in parts if p)


def render_script(script: Script) -> str:
    return "".join(render_statement(st) + "\n" for st in script)
