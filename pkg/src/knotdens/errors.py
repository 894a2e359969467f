"""Exception hierarchy shared by all knotdens modules."""


class KnotdensError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(KnotdensError):
    """Input text does not match the PD / DT / braid grammar."""


class ValidationError(KnotdensError):
    """Structurally well-formed input violates a diagram invariant
    (arc appears != 2 times, split diagram, non-realizable DT code,
    census row contradicts a recomputed invariant)."""


class DomainError(KnotdensError):
    """Operation applied outside its mathematical domain
    (non-alternating input to a Tait construction, det = 0 density, ...)."""


class ResourceError(KnotdensError):
    """Configured crossing / color / state-space cap exceeded."""


class PrecisionError(KnotdensError):
    """Requested floating precision cannot be certified a posteriori."""


class MissingDataError(KnotdensError):
    """A verification sweep needs an ingested column that is absent."""


class SchemaError(KnotdensError):
    """Census CSV does not match the documented schema."""
