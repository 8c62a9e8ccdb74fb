"""Exception hierarchy shared by every module."""


class LaxDualError(Exception):
    """Base class for all library errors."""


class MalformedTable(LaxDualError):
    """A table references an unknown identifier or is missing a required entry."""


class NotComposable(LaxDualError):
    pass


class SizeLimit(LaxDualError):
    """A construction would exceed the configured size guard."""


class TypeMismatch(LaxDualError):
    """Source/target of a morphism do not match what the operation needs."""


class DomainMismatch(LaxDualError):
    pass


class EmptyLimit(LaxDualError):
    pass


class NotMonotone(LaxDualError):
    pass


class NotAChain(LaxDualError):
    pass


class InvalidAlgebra(LaxDualError):
    pass


class NotDualizable(LaxDualError):
    pass


class SquareCellFailure(LaxDualError):
    """A generalized projection-formula cell failed to be invertible for a dualizable object."""


class RoundTripMismatch(LaxDualError):
    pass


class SchemaError(LaxDualError):
    """Input document does not match its declared schema."""
