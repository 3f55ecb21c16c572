"""Exact combinatorial index arithmetic for embedded contact homology.

Everything is computed in exact integer/rational arithmetic: orbit types
and Conley-Zehnder indices, lattice-path partitions with the Pick's-formula
machinery, solid-torus braid invariants, the relative indices I and
J0/J+/J- with their torsor-valued absolute refinements, curve-level
checkers, and exhaustive desk-scale verification sweeps.
"""

from .core import (
    HomologyModel,
    MonodromyAngle,
    OrbitClass,
    OrbitSet,
    RelClass,
    Trivialization,
    divide_common_factor,
    validate_angle,
)
from .cz import End, cz, mu_prime, mu_total, mu_zero
from .errors import (
    DegenerateRegion,
    EchidxError,
    HorizonExceeded,
    InconsistentData,
    IntegerMultiple,
    MalformedWord,
    MismatchedTrivializations,
    MissingIntersectionData,
    MissingOffset,
    ModulusMismatch,
    NoPositiveEnd,
    NonCoprime,
)

__version__ = "0.1.0"
