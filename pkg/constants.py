# constants.py
VERSION = "1.0.0"

RING_CONSTRUCTORS = {
    "zmod", "polyquo", "product", "quotient", "trivext", "biamalg", "amalg", "duplicate",
}

HOM_CONSTRUCTORS = {
    "id", "quomap", "inject_trivext", "project_trivext", "compose", "table",
}

STATEMENT_KEYWORDS = {"ring", "module", "ideal", "hom", "check", "verify"}

PROPERTIES = ("local", "gaussian", "arithmetical", "prufer", "total_quotients")

# verify <id> <args...>: argument kinds, in order
THEOREM_ARGS = {
    "thm2.1":    ("config", "mode"),
    "cor2.2":    ("hom", "ideal", "mode"),
    "cor2.3":    ("ring", "ideal", "mode"),
    "prop2.4.1": ("config",),
    "prop2.4.2": ("config",),
    "prop2.4.3": ("config",),
    "prop2.6":   ("config",),
    "prop5.7":   ("config", "ideal"),
}

THEOREM_IDS = tuple(THEOREM_ARGS)

MODES = ("gaussian", "prufer")

GENERATOR_FILTERS = ("none", "prop2.4.2", "prop2.6", "thm2.1-degenerate")

GENERATOR_FAMILIES = ("trivext-legs", "maximal-legs", "duplication", "quotient-leg", "full-legs")

# Base rings for random_config: ("zmod", n) or ("polyquo", p, vars, {var: bound}, extra monomials)
BASE_RING_POOL = (
    ("zmod", 2), ("zmod", 3), ("zmod", 4), ("zmod", 5), ("zmod", 6),
    ("zmod", 7), ("zmod", 8), ("zmod", 9),
    ("polyquo", 2, ("x",), {"x": 2}, ()),
    ("polyquo", 2, ("x",), {"x": 3}, ()),
    ("polyquo", 3, ("x",), {"x": 2}, ()),
    ("polyquo", 2, ("x", "y"), {"x": 2, "y": 2}, ("xy",)),
)

GENERATOR_RETRIES     = 50
GENERATOR_SIZE_BOUND  = 256

CONTENT_SAMPLE_TRIALS = 10_000
CONTENT_SAMPLE_DEGREE = 3

EXHAUSTIVE_CAP  = 64
SAMPLED_TRIPLES = 10_000
