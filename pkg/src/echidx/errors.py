"""Exception taxonomy shared by all echidx modules."""


class EchidxError(ValueError):
    """Base class for all domain errors raised by echidx."""


class NonCoprime(EchidxError):
    """Monodromy angle numerator and denominator share a factor."""


class IntegerMultiple(EchidxError):
    """Some iterate k <= k_max makes k*theta an integer."""

    def __init__(self, k):
        self.k = k
        super().__init__(f"k*theta is an integer for k={k}")


class HorizonExceeded(EchidxError):
    """A multiplicity exceeds the validated horizon of an elliptic angle."""


class DegenerateRegion(EchidxError):
    """Zero-area staircase region; Pick's formula does not apply."""


class MalformedWord(EchidxError):
    """Braid word violates the axis/component invariants."""


class MissingOffset(EchidxError):
    """Trivialization does not cover an orbit in use."""


class MismatchedTrivializations(EchidxError):
    """Shared orbits carry different trivializations on the two sides."""


class ModulusMismatch(EchidxError):
    """Declared torsor modulus disagrees with the divisibility computation."""


class InconsistentData(EchidxError):
    """Supplied values violate an identity they are required to satisfy."""


class MissingIntersectionData(EchidxError):
    """A pairwise intersection or Q value needed for a union is absent."""


class NoPositiveEnd(EchidxError):
    """Contact hypothesis fails: a non-trivial component has no positive end."""
