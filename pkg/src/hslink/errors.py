"""Exception types shared across the package."""


class HSLinkError(Exception):
    """Base class for all errors raised by hslink."""


class MalformedWordError(HSLinkError, ValueError):
    pass


class RankMismatchError(HSLinkError, ValueError):
    pass


class NotPureBraidError(HSLinkError, ValueError):
    pass


class InvalidMultiIndexError(HSLinkError, ValueError):
    pass


class BraidSyntaxError(HSLinkError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DomainError(HSLinkError, ValueError):
    """Operation undefined for this input, e.g. coordinates of a non-Borromean link."""


class RefinementError(HSLinkError):
    """Sampling too coarse to keep strands separated."""


class DegenerateConfigurationError(HSLinkError):
    """Two configuration points coincide."""


class QuotientUndefinedError(HSLinkError):
    """A cube map does not descend to the torus."""


class InvalidTorusError(HSLinkError, ValueError):
    pass


class IllFormedInputError(HSLinkError):
    """A map was evaluated where its boundary points are not at the basepoints."""


class IntervalError(HSLinkError, ValueError):
    pass


class IllConditionedWarning(UserWarning):
    pass
