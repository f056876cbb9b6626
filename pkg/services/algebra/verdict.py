# services/algebra/verdict.py
# Structured result of every property checker and of the isomorphism tester.

from dataclasses import dataclass, field
from typing import Any, Optional

from services.algebra.errors import InternalError
from services.algebra.ring_core import FiniteRing


@dataclass(frozen=True)
class Verdict:
    """
    holds=False always carries a witness: elements of `ring` (as indices),
    ideals, polynomials or short descriptions, checkable on their own.
    Plain ints in `data` are counts, not elements.
    """
    holds:   bool
    method:  str
    ring:    Optional[FiniteRing] = field(default=None, compare=False, repr=False)
    witness: tuple = ()
    data:    dict  = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.holds and not self.witness:
            raise InternalError(f"negative verdict from {self.method} without a witness")

    def __bool__(self) -> bool:
        return self.holds

    def render_item(self, item: Any) -> Any:
        return render_value(item, self.ring)

    def to_dict(self) -> dict:
        out = {
            "holds":  self.holds,
            "method": self.method,
        }
        if self.witness:
            out["witness"] = [self.render_item(w) for w in self.witness]
        if self.data:
            out["data"] = {k: render_value(v) for k, v in self.data.items()}
        return out


def render_value(item: Any, ring: Optional[FiniteRing] = None) -> Any:
    """Elements become labels; objects with render() render themselves."""
    if isinstance(item, bool) or item is None:
        return item
    if isinstance(item, int):
        return ring.label(item) if ring is not None else item
    if hasattr(item, "render"):
        return item.render()
    if isinstance(item, (list, tuple)):
        return [render_value(x, ring) for x in item]
    if isinstance(item, dict):
        return {str(k): render_value(v, ring) for k, v in item.items()}
    return item if isinstance(item, (str, float)) else str(item)
