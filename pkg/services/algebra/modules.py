# services/algebra/modules.py
# Finite modules presented as direct sums of cyclic quotients base/I_1 ⊕ ... ⊕ base/I_k.
# Each coset is represented by its smallest base index; element k of the sum
# is written with the basis symbol, e.g. "e1", "2e1", "(x+y)e2".

from itertools import product as cartesian
from typing import Sequence

from services.algebra.errors import InternalError, InvalidArgumentError
from services.algebra.ideals import Ideal
from services.algebra.ring_core import FiniteRing, _normalize_label, check_cap


def _coset_reps(R: FiniteRing, I: Ideal) -> list:
    rep = [None] * R.size
    for x in R.elements:
        if rep[x] is None:
            for i in I.elements:
                rep[R.add(x, i)] = x
    return rep


class FiniteModule:
    """Indices 0..size-1 like FiniteRing; index 0 is the zero vector."""

    def __init__(self, base: FiniteRing, components: Sequence[Ideal], symbol: str = "e"):
        for I in components:
            if I.ring is not base:
                raise InvalidArgumentError(f"{I!r} is not an ideal of {base.name}")
        self.base       = base
        self.components = tuple(components)
        self.symbol     = symbol
        self._rep       = [_coset_reps(base, I) for I in self.components]
        reps            = [sorted(set(r)) for r in self._rep]

        self._values = list(cartesian(*reps)) if reps else [()]
        self._index  = {v: i for i, v in enumerate(self._values)}
        self.size    = len(self._values)
        self.labels  = tuple(self._label_of(v) for v in self._values)
        self._by_label = {_normalize_label(l): i for i, l in enumerate(self.labels)}

        quotients = [f"{base.name}/{I.describe()}" for I in self.components]
        self.name = " ⊕ ".join(quotients) if quotients else "0"

    def _label_of(self, value: tuple) -> str:
        terms = []
        for k, r in enumerate(value, start=1):
            if r == self.base.zero:
                continue
            basis = f"{self.symbol}{k}"
            if r == self._rep[k - 1][self.base.one]:
                terms.append(basis)
            else:
                text = self.base.label(r)
                terms.append(f"{text}{basis}" if text.isalnum() else f"({text}){basis}")
        return "+".join(terms) if terms else "0"

    def __len__(self) -> int:
        return self.size

    def __repr__(self):
        return f"FiniteModule({self.name!r}, size={self.size})"

    def render(self) -> str:
        return self.name

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def zero(self) -> int:
        return 0

    def label(self, m: int) -> str:
        return self.labels[m]

    def element(self, text: str) -> int:
        try:
            return self._by_label[_normalize_label(text)]
        except KeyError:
            raise InvalidArgumentError(f"{text!r} is not an element of {self.name}") from None

    def basis_element(self, k: int) -> int:
        """The generator of the k-th summand (1-based)."""
        value = tuple(
            self._rep[i][self.base.one] if i == k - 1 else self.base.zero
            for i in range(len(self.components))
        )
        return self._index[value]

    # ── Arithmetic ────────────────────────────────────────────────────────────

    def add(self, m: int, n: int) -> int:
        R = self.base
        return self._index[tuple(
            rep[R.add(x, y)] for rep, x, y in zip(self._rep, self._values[m], self._values[n])
        )]

    def neg(self, m: int) -> int:
        R = self.base
        return self._index[tuple(rep[R.neg(x)] for rep, x in zip(self._rep, self._values[m]))]

    def act(self, a: int, m: int) -> int:
        """Scalar action a·m, componentwise on cosets."""
        R = self.base
        return self._index[tuple(rep[R.mul(a, x)] for rep, x in zip(self._rep, self._values[m]))]

    def verify_module_axioms(self, exhaustive_cap: int = 64) -> None:
        """Exhaustive axiom check for modules up to `exhaustive_cap` elements."""
        if self.size > exhaustive_cap:
            return
        R = self.base
        for m in self.elements:
            if self.act(R.one, m) != m:
                raise InternalError(f"{self.name}: 1·m != m at {self.label(m)}")
            if self.add(m, self.neg(m)) != self.zero:
                raise InternalError(f"{self.name}: m + (-m) != 0 at {self.label(m)}")
            for n in self.elements:
                if self.add(m, n) != self.add(n, m):
                    raise InternalError(f"{self.name}: + is not commutative")
                for a in R.elements:
                    if self.act(a, self.add(m, n)) != self.add(self.act(a, m), self.act(a, n)):
                        raise InternalError(f"{self.name}: a(m+n) != am+an")
            for a in R.elements:
                for b in R.elements:
                    if self.act(R.add(a, b), m) != self.add(self.act(a, m), self.act(b, m)):
                        raise InternalError(f"{self.name}: (a+b)m != am+bm")
                    if self.act(R.mul(a, b), m) != self.act(a, self.act(b, m)):
                        raise InternalError(f"{self.name}: (ab)m != a(bm)")


def make_module(
    base:       FiniteRing,
    components: Sequence[Ideal],
    copies:     int = 1,
    symbol:     str = "e",
) -> FiniteModule:
    """(base/I_1 ⊕ ... ⊕ base/I_k) repeated `copies` times."""
    if copies < 1:
        raise InvalidArgumentError(f"copies must be >= 1, got {copies}")
    if not symbol.isalpha():
        raise InvalidArgumentError(f"basis symbol must be alphabetic, got {symbol!r}")
    summands = list(components) * copies
    size = 1
    for I in summands:
        size *= base.size // I.size
    check_cap(f"module over {base.name}", size)
    return FiniteModule(base, summands, symbol)
