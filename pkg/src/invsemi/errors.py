"""Exception types shared across the toolkit.

Every error carries a machine-readable witness where one exists, so the
CLI can emit it in certificates instead of prose.
"""


class InvsemiError(Exception):
    """Base class for all toolkit errors."""


class AxiomViolation(InvsemiError):
    """A candidate multiplication table fails an inverse-semigroup axiom.

    ``kind`` is one of ``malformed``, ``zero``, ``associativity``,
    ``inverse``, ``idempotents``; ``witness`` is the offending tuple.
    """

    def __init__(self, kind, witness, message=None):
        self.kind = kind
        self.witness = witness
        super().__init__(message or f"{kind}: witness {witness!r}")


class CapExceeded(InvsemiError):
    """A configured size cap was hit before the computation finished."""

    def __init__(self, what, cap):
        self.what = what
        self.cap = cap
        super().__init__(f"{what} exceeded cap {cap}")


class NotIdempotent(InvsemiError):
    pass


class NotBelow(InvsemiError):
    pass


class FieldMismatch(InvsemiError):
    pass


class NotBoolean(InvsemiError):
    """The semigroup lacks the joins/complements the operation needs."""


class NotAdditiveIdeal(InvsemiError):
    pass


class WrongActionShape(InvsemiError):
    """The operation only applies to a specific built-in action shape."""


class ShapeViolation(InvsemiError):
    """Section-vector input does not have the required branch shape."""


class UnsupportedAction(InvsemiError):
    pass


class Undecidable(InvsemiError):
    """No exact answer is available for this action within the depth budget."""


class ParseError(InvsemiError):
    pass
