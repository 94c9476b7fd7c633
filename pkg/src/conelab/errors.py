"""Exception hierarchy.

Every error raised for bad input derives from :class:`ConelabError`, which
the command line maps to exit code 2.  :class:`InvariantViolation` is
different: it signals that a derived identity failed to hold, which means
the implementation (or the mathematics) is wrong, and it is never caught.
"""


class ConelabError(Exception):
    """Base class for input and precondition errors."""


class CycleError(ConelabError):
    """The reflexive-transitive closure of a cover list is not antisymmetric."""


class UnknownNameError(ConelabError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class NotT0Error(ConelabError):
    """Two points share every open set."""


class SizeError(ConelabError):
    """An enumeration would exceed its configured bound."""


class NoJoinError(ConelabError):
    pass


class NotLatticeError(ConelabError):
    pass


class NotUpsetError(ConelabError):
    pass


class NotMonotoneError(ConelabError):
    pass


class ValuationError(ConelabError):
    pass


class InfiniteValueError(ValuationError):
    """Möbius inversion needs subtraction, which is undefined on inf."""


class NegativeWeightError(ValuationError):
    pass


class NotModularError(ValuationError):
    pass


class NotSeparableError(ConelabError):
    pass


class NotConvexError(ConelabError):
    pass


class InvariantViolation(AssertionError):
    """A derived identity that must hold did not."""


class NonPrincipalError(InvariantViolation):
    """The powercone barycenter was not the upward closure of a point.

    Carries the full pipeline trace in :attr:`trace`.
    """

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace
