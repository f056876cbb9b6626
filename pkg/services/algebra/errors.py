# services/algebra/errors.py
# Exception hierarchy shared by every algebra module.
# Script and generator errors live next to the parser and the generator.


class AlgebraError(Exception):
    """Base class for every error raised by the algebra library."""
    kind = "algebra-error"


class InvalidArgumentError(AlgebraError):
    kind = "invalid-argument"


class SizeLimitError(AlgebraError):
    """Raised when a construction would exceed a configured element cap."""
    kind = "size-limit"

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what} would have {size} elements, cap is {cap}")
        self.size = size
        self.cap  = cap


class InfiniteRingError(AlgebraError):
    kind = "infinite-ring"


class NotAHomomorphismError(AlgebraError):
    """Names the violated identity and the witness pair."""
    kind = "not-a-homomorphism"

    def __init__(self, identity: str, witness: tuple = ()):
        detail = f" (witness {witness})" if witness else ""
        super().__init__(f"map violates {identity}{detail}")
        self.identity = identity
        self.witness  = witness


class ConductorMismatchError(AlgebraError):
    """f^-1(J) != g^-1(J'); carries the first element lying in exactly one preimage."""
    kind = "conductor-mismatch"

    def __init__(self, witness: int, witness_label: str, in_f: bool):
        side = "f^-1(J) but not g^-1(J')" if in_f else "g^-1(J') but not f^-1(J)"
        super().__init__(f"conductor mismatch: {witness_label} lies in {side}")
        self.witness = witness
        self.in_f    = in_f


class InternalError(AlgebraError):
    """A guaranteed invariant failed: this is a bug, never a mathematical counterexample."""
    kind = "internal-error"
