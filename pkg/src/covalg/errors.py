"""Exception hierarchy shared by all modules."""


class PDSError(Exception):
    """Base class for every error raised by covalg."""


class ValidationError(PDSError, ValueError):
    """Malformed input (bad system, bad matrix, bad element)."""


class UnknownPoint(ValidationError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DuplicatePoint(ValidationError):
    pass


class InvalidPoint(ValidationError):
    """An extension point violating the anti-orbit condition."""


class ZeroRow(ValidationError):
    pass


class NotSquare(ValidationError):
    pass


class BadEntry(ValidationError):
    pass


class SupportViolation(ValidationError):
    """A sequence term a_n that does not vanish outside the domain of alpha^n."""


class NotInjective(PDSError):
    pass


class NotInvariant(PDSError):
    pass


class HasPeriodicPoints(PDSError):
    pass


class NotTopologicallyFree(PDSError):
    pass


class InvalidRep(PDSError):
    pass


class TooLarge(PDSError):
    """An enumeration or dimension cap was exceeded."""
