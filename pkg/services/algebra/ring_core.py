# services/algebra/ring_core.py
# Finite commutative unital rings with enumerable elements.
#
# Elements are canonical indices 0..size-1 (0 is always the additive identity).
# Arithmetic is computed from the construction recipe (residues, coefficient
# vectors, pairs, ...) and table rows are memoised lazily for small rings.
# Rings are immutable after construction; the row caches only ever receive
# the same value for the same key, so concurrent readers are safe.

import random
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import product as cartesian
from typing import Callable, Hashable, Iterable, NewType, Optional, Sequence

from constants import EXHAUSTIVE_CAP, SAMPLED_TRIPLES
from shared.config.settings import get_settings
from shared.logging.logger import get_logger
from services.algebra.errors import (
    InfiniteRingError, InternalError, InvalidArgumentError, SizeLimitError,
)

logger = get_logger(__name__)

Elem = NewType("Elem", int)


# ── Provenance ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Provenance:
    """Which constructor built a ring, and from what."""
    recipe:  str
    args:    tuple = ()
    parents: tuple = field(default=(), compare=False, repr=False)

    def describe(self) -> str:
        if not self.args:
            return self.recipe
        return f"{self.recipe}({', '.join(str(a) for a in self.args)})"


class ElementClass(str, Enum):
    UNIT         = "unit"
    ZERO_DIVISOR = "zero_divisor"
    ZERO         = "zero"


def _normalize_label(text: str) -> str:
    return re.sub(r"\s+", "", text)


def check_cap(what: str, size: int) -> None:
    cap = get_settings().max_elements
    if size > cap:
        raise SizeLimitError(what, size, cap)


# ── Ring ──────────────────────────────────────────────────────────────────────

class FiniteRing:
    """
    A finite commutative ring with identity.

    `values` are the structural representatives (ints, coefficient tuples,
    index pairs, ...) in canonical order; the zero value must come first.
    `add`, `mul` and `neg` act on values.
    """

    def __init__(
        self,
        name:       str,
        values:     Sequence[Hashable],
        add:        Callable,
        mul:        Callable,
        neg:        Callable,
        zero:       Hashable,
        one:        Hashable,
        labels:     Sequence[str],
        provenance: Provenance,
    ):
        self.name       = name
        self.provenance = provenance
        self._values    = tuple(values)
        self._index     = {v: i for i, v in enumerate(self._values)}
        self._add_fn    = add
        self._mul_fn    = mul
        self._neg_fn    = neg

        if len(self._index) != len(self._values):
            raise InternalError(f"{name}: duplicate element values")
        if self._index.get(zero) != 0:
            raise InternalError(f"{name}: the zero element must have index 0")
        if one not in self._index:
            raise InternalError(f"{name}: identity is not an element")

        self.size   = len(self._values)
        self.zero   = Elem(0)
        self.one    = Elem(self._index[one])
        self.labels = tuple(labels)

        if len(self.labels) != self.size:
            raise InternalError(f"{name}: one label per element required")
        self._by_label = {_normalize_label(l): i for i, l in enumerate(self.labels)}
        if len(self._by_label) != self.size:
            raise InternalError(f"{name}: element labels are not unique")

        self._memo      = self.size <= get_settings().table_cap
        self._add_rows: dict = {}
        self._mul_rows: dict = {}
        self._neg_table: Optional[tuple] = None

        logger.debug("Constructed ring", extra={"ring": name, "size": self.size,
                                                "op": provenance.recipe})

    # ── Element access ────────────────────────────────────────────────────────

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def __repr__(self):
        return f"FiniteRing({self.name!r}, size={self.size})"

    def render(self) -> str:
        return self.name

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def is_zero_ring(self) -> bool:
        return self.size == 1

    def value(self, a: int) -> Hashable:
        return self._values[a]

    def index_of(self, value: Hashable) -> Elem:
        try:
            return Elem(self._index[value])
        except KeyError:
            raise InternalError(f"{self.name}: {value!r} is outside the carrier") from None

    def contains_value(self, value: Hashable) -> bool:
        return value in self._index

    def label(self, a: int) -> str:
        return self.labels[a]

    def element(self, text: str) -> Elem:
        """Resolves an element literal written in this ring's label syntax."""
        try:
            return Elem(self._by_label[_normalize_label(text)])
        except KeyError:
            raise InvalidArgumentError(f"{text!r} is not an element of {self.name}") from None

    # ── Arithmetic ────────────────────────────────────────────────────────────

    def add(self, a: int, b: int) -> Elem:
        row = self._add_rows.get(a)
        if row is not None:
            return row[b]
        return self.index_of(self._add_fn(self._values[a], self._values[b]))

    def mul(self, a: int, b: int) -> Elem:
        row = self._mul_rows.get(a)
        if row is not None:
            return row[b]
        return self.index_of(self._mul_fn(self._values[a], self._values[b]))

    def neg(self, a: int) -> Elem:
        if self._neg_table is None:
            self._neg_table = tuple(
                self.index_of(self._neg_fn(v)) for v in self._values
            )
        return self._neg_table[a]

    def sub(self, a: int, b: int) -> Elem:
        return self.add(a, self.neg(b))

    def power(self, a: int, k: int) -> Elem:
        result = self.one
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def add_row(self, a: int) -> tuple:
        row = self._add_rows.get(a)
        if row is None:
            va  = self._values[a]
            row = tuple(self.index_of(self._add_fn(va, vb)) for vb in self._values)
            if self._memo:
                self._add_rows[a] = row
        return row

    def mul_row(self, a: int) -> tuple:
        """Row a of the multiplication table: (a*0, a*1, ..., a*(n-1))."""
        row = self._mul_rows.get(a)
        if row is None:
            va  = self._values[a]
            row = tuple(self.index_of(self._mul_fn(va, vb)) for vb in self._values)
            if self._memo:
                self._mul_rows[a] = row
        return row

    # ── Derived sets ──────────────────────────────────────────────────────────

    @cached_property
    def units(self) -> frozenset:
        return frozenset(a for a in self.elements if self.one in self.mul_row(a))

    def has_nonzero_annihilator(self, a: int) -> bool:
        # row[0] is a*0; any later zero is a nonzero annihilator
        return 0 in self.mul_row(a)[1:]


# ── Element classification ────────────────────────────────────────────────────

def classify_element(R: FiniteRing, a: int) -> ElementClass:
    if a == R.zero:
        return ElementClass.ZERO
    is_unit = a in R.units
    is_zd   = R.has_nonzero_annihilator(a)
    if is_unit == is_zd:
        # a finite ring splits its nonzero elements into units and zero-divisors
        raise InternalError(f"{R.label(a)} in {R.name}: unit={is_unit}, zero-divisor={is_zd}")
    return ElementClass.UNIT if is_unit else ElementClass.ZERO_DIVISOR


def regular_elements(R: FiniteRing) -> frozenset:
    """Elements without a nonzero annihilator (computed, not assumed equal to the units)."""
    return frozenset(a for a in R.elements if not R.has_nonzero_annihilator(a))


def idempotents(R: FiniteRing) -> frozenset:
    return frozenset(e for e in R.elements if R.mul(e, e) == e)


def nilpotent_elements(R: FiniteRing) -> frozenset:
    result = set()
    for a in R.elements:
        x = a
        for _ in range(R.size):
            if x == R.zero:
                result.add(a)
                break
            x = R.mul(x, a)
    return frozenset(result)


def is_field(R: FiniteRing) -> bool:
    return R.size > 1 and len(R.units) == R.size - 1


# ── Axiom check ───────────────────────────────────────────────────────────────

def verify_ring_axioms(
    R:              FiniteRing,
    exhaustive_cap: int = EXHAUSTIVE_CAP,
    samples:        int = SAMPLED_TRIPLES,
    seed:           int = 0,
) -> None:
    """
    Checks the commutative-ring axioms: exhaustively on rings up to
    `exhaustive_cap` elements, on `samples` random triples above.
    Raises InternalError naming the failed identity and its witness.
    """
    n = R.size
    for a in R.elements:
        if R.add(a, R.zero) != a:
            raise InternalError(f"{R.name}: a+0 != a for a={R.label(a)}")
        if R.mul(a, R.one) != a:
            raise InternalError(f"{R.name}: a*1 != a for a={R.label(a)}")
        if R.add(a, R.neg(a)) != R.zero:
            raise InternalError(f"{R.name}: a+(-a) != 0 for a={R.label(a)}")

    if n <= exhaustive_cap:
        triples: Iterable = cartesian(range(n), repeat=3)
    else:
        rng = random.Random(seed)
        triples = (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n))
            for _ in range(samples)
        )

    for a, b, c in triples:
        checks = (
            ("commutativity of +", R.add(a, b) == R.add(b, a)),
            ("commutativity of *", R.mul(a, b) == R.mul(b, a)),
            ("associativity of +", R.add(R.add(a, b), c) == R.add(a, R.add(b, c))),
            ("associativity of *", R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))),
            ("distributivity",     R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))),
        )
        for identity, ok in checks:
            if not ok:
                witness = (R.label(a), R.label(b), R.label(c))
                raise InternalError(f"{R.name}: {identity} fails at {witness}")


# ── Constructors ──────────────────────────────────────────────────────────────

def make_zmod(n: int) -> FiniteRing:
    """Z/nZ with elements labelled 0..n-1. make_zmod(1) is the zero ring."""
    if n < 1:
        raise InvalidArgumentError(f"zmod needs n >= 1, got {n}")
    check_cap(f"Z/{n}", n)
    return FiniteRing(
        name       = f"Z/{n}",
        values     = range(n),
        add        = lambda x, y: (x + y) % n,
        mul        = lambda x, y: (x * y) % n,
        neg        = lambda x: (-x) % n,
        zero       = 0,
        one        = 1 % n,
        labels     = [str(i) for i in range(n)],
        provenance = Provenance("zmod", (n,)),
    )


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _parse_monomial(text: str, variables: Sequence[str]) -> tuple:
    """'x^2', 'xy', 'x*y^3' -> exponent tuple over `variables`."""
    exps   = [0] * len(variables)
    names  = sorted(variables, key=len, reverse=True)
    for factor in text.replace(" ", "").split("*"):
        pos = 0
        while pos < len(factor):
            for name in names:
                if factor.startswith(name, pos):
                    pos += len(name)
                    m = re.match(r"\^(\d+)", factor[pos:])
                    k = 1
                    if m:
                        k    = int(m.group(1))
                        pos += len(m.group(0))
                    exps[variables.index(name)] += k
                    break
            else:
                raise InvalidArgumentError(f"cannot read monomial {text!r} over {list(variables)}")
    return tuple(exps)


def _monomial_label(exps: tuple, variables: Sequence[str]) -> str:
    parts = []
    for name, k in zip(variables, exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    if not parts:
        return "1"
    sep = "" if all(len(v) == 1 for v in variables) else "*"
    return sep.join(parts)


def _divides(small: tuple, big: tuple) -> bool:
    return all(s <= b for s, b in zip(small, big))


def make_monomial_quotient(
    p:               int,
    variables:       Sequence[str],
    nilpotency:      Optional[dict] = None,
    extra_relations: Sequence = (),
) -> FiniteRing:
    """
    F_p[vars] modulo monomial relations.

    `nilpotency` maps a variable to k (x^k = 0); `extra_relations` are further
    monomials set to zero, written as strings ('xy', 'x^2*y') or exponent tuples.
    Every variable must be nilpotent, otherwise the quotient is infinite.
    """
    if not is_prime(p):
        raise InvalidArgumentError(f"polyquo needs a prime characteristic, got {p}")
    variables = list(variables)
    if len(set(variables)) != len(variables):
        raise InvalidArgumentError(f"repeated variable in {variables}")

    relations = []
    for name, k in (nilpotency or {}).items():
        if name not in variables:
            raise InvalidArgumentError(f"unknown variable {name!r}")
        if k < 1:
            raise InvalidArgumentError(f"nilpotency bound for {name} must be >= 1")
        relations.append(tuple(k if v == name else 0 for v in variables))
    for rel in extra_relations:
        exps = _parse_monomial(rel, variables) if isinstance(rel, str) else tuple(rel)
        relations.append(exps)
    if any(sum(r) == 0 for r in relations):
        raise InvalidArgumentError("the relation 1 = 0 collapses the ring; use zmod 1")

    bounds = []
    for i, name in enumerate(variables):
        pure = [r[i] for r in relations if r[i] > 0 and sum(r) == r[i]]
        if not pure:
            raise InfiniteRingError(f"variable {name} is not nilpotent; the quotient is infinite")
        bounds.append(min(pure))

    basis = [
        e for e in cartesian(*(range(b) for b in bounds))
        if not any(_divides(r, e) for r in relations)
    ]
    basis.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    k = len(basis)

    rel_text = ", ".join(_monomial_label(r, variables) for r in relations)
    name     = f"F_{p}[{','.join(variables)}]/({rel_text})"
    check_cap(name, p ** k)

    where = {e: i for i, e in enumerate(basis)}
    table = [
        [where.get(tuple(x + y for x, y in zip(bi, bj))) for bj in basis]
        for bi in basis
    ]
    mono_labels = [_monomial_label(e, variables) for e in basis]

    def add(x, y):
        return tuple((a + b) % p for a, b in zip(x, y))

    def mul(x, y):
        out = [0] * k
        for i, a in enumerate(x):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(y):
                if b and row[j] is not None:
                    t = row[j]
                    out[t] = (out[t] + a * b) % p
        return tuple(out)

    def neg(x):
        return tuple((-a) % p for a in x)

    def label(x):
        terms = []
        for c, mono in zip(x, mono_labels):
            if not c:
                continue
            if mono == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    values = list(cartesian(range(p), repeat=k))
    one    = tuple(1 if sum(e) == 0 else 0 for e in basis)
    return FiniteRing(
        name       = name,
        values     = values,
        add        = add,
        mul        = mul,
        neg        = neg,
        zero       = tuple([0] * k),
        one        = one,
        labels     = [label(v) for v in values],
        provenance = Provenance("polyquo", (p, tuple(variables), rel_text)),
    )


def make_product(R1: FiniteRing, R2: FiniteRing) -> FiniteRing:
    """Componentwise ring on pairs (a, b); refuses beyond the element cap."""
    name = f"{R1.name} x {R2.name}"
    check_cap(name, R1.size * R2.size)
    values = [(a, b) for a in R1.elements for b in R2.elements]
    return FiniteRing(
        name       = name,
        values     = values,
        add        = lambda x, y: (R1.add(x[0], y[0]), R2.add(x[1], y[1])),
        mul        = lambda x, y: (R1.mul(x[0], y[0]), R2.mul(x[1], y[1])),
        neg        = lambda x: (R1.neg(x[0]), R2.neg(x[1])),
        zero       = (R1.zero, R2.zero),
        one        = (R1.one, R2.one),
        labels     = [f"({R1.label(a)}, {R2.label(b)})" for a, b in values],
        provenance = Provenance("product", (R1.name, R2.name), parents=(R1, R2)),
    )


def make_subset_ring(
    parent:   FiniteRing,
    members:  Iterable[int],
    one:      int,
    name:     str,
    recipe:   str,
) -> FiniteRing:
    """
    A ring carried by a subset of `parent`, closed under the parent's + and *,
    with identity `one` (which need not be the parent's identity, as for eR).
    Values are parent indices; labels are the parent's labels.
    """
    values = sorted(set(members))
    return FiniteRing(
        name       = name,
        values     = values,
        add        = parent.add,
        mul        = parent.mul,
        neg        = parent.neg,
        zero       = parent.zero,
        one        = one,
        labels     = [parent.label(v) for v in values],
        provenance = Provenance(recipe, (parent.name,), parents=(parent,)),
    )
