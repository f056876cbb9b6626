# services/algebra/decomposition.py
# Splits a finite ring into its local factors eR, one per primitive idempotent.
# A finite commutative ring is the product of these factors, so local
# criteria (Gaussian, arithmetical) are decided factor by factor.

from dataclasses import dataclass

from services.algebra.homs import RingHom, hom_from_table, identity_hom
from services.algebra.ring_core import FiniteRing, idempotents, make_subset_ring


@dataclass(frozen=True, eq=False)
class LocalFactor:
    """
    One factor eR. `projection` is the unital map r ↦ er; `embedding` maps a
    factor index back to the R index it stands for (not unital unless e = 1).
    """
    idempotent: int
    ring:       FiniteRing
    projection: RingHom
    embedding:  tuple

    def lift(self, x: int) -> int:
        return self.embedding[x]


def primitive_idempotents(R: FiniteRing) -> list:
    """Nonzero idempotents that dominate no other nonzero idempotent, ascending."""
    nonzero = sorted(e for e in idempotents(R) if e != R.zero)
    return [
        e for e in nonzero
        if not any(f != e and R.mul(e, f) == f for f in nonzero)
    ]


def local_decomposition(R: FiniteRing) -> list:
    """
    [(e, eR, r ↦ er)] over the primitive idempotents. The zero ring has no
    factors; a local ring is its own single factor.
    """
    if R.is_zero_ring:
        return []

    prims = primitive_idempotents(R)
    if prims == [R.one]:
        return [LocalFactor(R.one, R, identity_hom(R), tuple(R.elements))]

    factors = []
    for e in prims:
        row = R.mul_row(e)
        F   = make_subset_ring(
            parent  = R,
            members = row,
            one     = e,
            name    = f"{R.label(e)}·{R.name}",
            recipe  = "local-factor",
        )
        projection = hom_from_table(R, F, [F.index_of(row[r]) for r in R.elements],
                                    name=f"proj_{R.label(e)}")
        factors.append(LocalFactor(e, F, projection, tuple(F.value(x) for x in F.elements)))
    return factors
