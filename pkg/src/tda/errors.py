"""Exception hierarchy for the tda package.

Every domain error raised by this package derives from :class:`TdaError`,
so callers (notably the CLI) can catch one type and map it to exit code 1.
"""


class TdaError(ValueError):
    """Base class for all domain errors raised by tda."""


class MalformedSimplexError(TdaError):
    """A simplex had duplicate or negative vertex ids."""


class InvalidMetricError(TdaError):
    """A distance matrix was not square, symmetric and nonnegative."""


class NonlinearNerveError(TdaError):
    """An interval cover has non-consecutive overlaps, or a complex that
    must be linear (disjoint paths) is not."""


class MissingVertexValueError(TdaError):
    """A vertex of a complex has no value assigned."""


class NonSimplicialMapError(TdaError):
    """A vertex map does not send every simplex to a simplex."""


class InvalidCosheafError(TdaError):
    """Cosheaf data is structurally broken or fails path independence."""


class CoverGranularityError(TdaError):
    """A simplex's value range fits inside no single cover interval."""


class NotASubcomplexError(TdaError):
    """The given complex is not a subcomplex of the expected base."""


class InternalInconsistencyError(TdaError):
    """An internal cross-check failed; indicates a bug, not bad input."""
