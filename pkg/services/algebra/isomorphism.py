# services/algebra/isomorphism.py
# Ring isomorphism testing by invariant-pruned backtracking.
#
# Only a generating set of R1 is searched over; every partial assignment is
# closed under + and × immediately, so a conflict or a collision of images
# prunes the branch as early as possible.

from collections import Counter
from typing import Optional

from shared.config.settings import get_settings
from shared.logging.logger import get_logger
from services.algebra.errors import InternalError, SizeLimitError
from services.algebra.homs import RingHom, hom_from_table
from services.algebra.ring_core import FiniteRing, classify_element
from services.algebra.verdict import Verdict

logger = get_logger(__name__)


def element_signature(R: FiniteRing, a: int) -> tuple:
    """Isomorphism invariants of a single element."""
    order, x = 1, a
    while x != R.zero:
        x = R.add(x, a)
        order += 1

    seen, x, k = {}, R.one, 0
    while x not in seen:
        seen[x] = k
        x = R.mul(x, a)
        k += 1
    preperiod, period = seen[x], k - seen[x]

    row = R.mul_row(a)
    return (
        classify_element(R, a).value,
        order,
        preperiod,
        period,
        R.mul(a, a) == a,
        len(set(row)),
        row.count(R.zero),
    )


def _generating_set(R: FiniteRing, rarity: dict, sig: list) -> list:
    order = sorted(R.elements, key=lambda a: (rarity[sig[a]], a))
    gens, closure = [], _subring_closure(R, set())
    for a in order:
        if len(closure) == R.size:
            break
        if a not in closure:
            gens.append(a)
            closure = _subring_closure(R, closure | {a})
    return gens


def _subring_closure(R: FiniteRing, seed: set) -> set:
    closed = {R.zero, R.one} | seed
    frontier = list(closed)
    while frontier:
        fresh = []
        for x in frontier:
            for y in list(closed):
                for z in (R.add(x, y), R.mul(x, y)):
                    if z not in closed:
                        closed.add(z)
                        fresh.append(z)
        frontier = fresh
    return closed


def _extend(R1: FiniteRing, R2: FiniteRing, forward: dict, backward: dict, pending: list):
    """
    Closes the partial map under + and ×. Returns the enlarged (forward,
    backward) maps, or None if the closure is inconsistent or not injective.
    """
    forward, backward = dict(forward), dict(backward)

    def assign(x, y) -> bool:
        if x in forward:
            return forward[x] == y
        if y in backward:
            return False
        forward[x], backward[y] = y, x
        queue.append(x)
        return True

    queue = []
    for x, y in pending:
        if not assign(x, y):
            return None
    while queue:
        x = queue.pop()
        y = forward[x]
        for u, v in list(forward.items()):
            if not assign(R1.add(x, u), R2.add(y, v)):
                return None
            if not assign(R1.mul(x, u), R2.mul(y, v)):
                return None
    return forward, backward


def ring_isomorphic(R1: FiniteRing, R2: FiniteRing) -> Verdict:
    """Verdict with data["isomorphism"] (a validated bijective RingHom) when true."""
    if R1.size != R2.size:
        return Verdict(False, "size", R1, witness=(f"|{R1.name}| = {R1.size}", f"|{R2.name}| = {R2.size}"))

    cap = get_settings().iso_cap
    if R1.size > cap:
        raise SizeLimitError(f"isomorphism search on {R1.name}", R1.size, cap)

    sig1 = [element_signature(R1, a) for a in R1.elements]
    sig2 = [element_signature(R2, a) for a in R2.elements]
    count1, count2 = Counter(sig1), Counter(sig2)
    if count1 != count2:
        differing = min(str(s) for s in (count1.keys() | count2.keys()) if count1[s] != count2[s])
        return Verdict(False, "element-invariants", R1,
                       witness=(f"invariant {differing} occurs a different number of times",))

    gens  = _generating_set(R1, count1, sig1)
    by_sig: dict = {}
    for b in R2.elements:
        by_sig.setdefault(sig2[b], []).append(b)

    start = _extend(R1, R2, {}, {}, [(R1.zero, R2.zero), (R1.one, R2.one)])
    if start is None:
        return Verdict(False, "prime-subring", R1, witness=("the prime subrings differ",))

    def search(i: int, forward: dict, backward: dict) -> Optional[dict]:
        if len(forward) == R1.size:
            return forward
        if i == len(gens):
            return None
        g = gens[i]
        if g in forward:
            return search(i + 1, forward, backward)
        for c in by_sig[sig1[g]]:
            if c in backward:
                continue
            extended = _extend(R1, R2, forward, backward, [(g, c)])
            if extended is not None:
                found = search(i + 1, *extended)
                if found is not None:
                    return found
        return None

    found = search(0, *start)
    if found is None:
        return Verdict(False, "backtracking", R1,
                       witness=(f"no isomorphism {R1.name} -> {R2.name} extends any generator assignment",))

    hom: RingHom = hom_from_table(R1, R2, [found[a] for a in R1.elements], name="iso")
    if not hom.is_injective():
        raise InternalError(f"isomorphism search returned a non-bijective map {R1.name} -> {R2.name}")
    logger.debug("Found isomorphism", extra={"ring": R1.name, "size": R1.size, "op": "iso"})
    return Verdict(True, "backtracking", R1, data={"generators": [R1.label(g) for g in gens],
                                                   "isomorphism": hom})
