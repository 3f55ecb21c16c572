"""Conley-Zehnder index arithmetic and the three index aggregates.

Closed forms: a k-fold iterate of a hyperbolic orbit with rotation integer
n has index k*n; an elliptic orbit with monodromy angle theta has index
2*floor(k*theta) + 1.  A trivialization offset delta acts on the stored
data by theta -> theta - delta and n -> n - 2*delta, which makes the shift
law CZ_tau - CZ_tau' = 2k(tau' - tau) hold with the sign convention used
throughout this package.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .core import OrbitClass, OrbitSet, Trivialization


class End(NamedTuple):
    """One curve end: sign +1 (positive end) or -1 (negative end)."""

    sign: int
    orbit: OrbitClass
    mult: int


def cz(orbit: OrbitClass, tau: Trivialization, k: int) -> int:
    """Conley-Zehnder index of the k-fold iterate in trivialization tau."""
    if k < 1:
        raise ValueError(f"iterate must be positive, got {k}")
    offset = tau.offset_of(orbit)
    if orbit.is_hyperbolic:
        return k * (orbit.n - 2 * offset)
    angle = orbit.angle.shifted(offset)
    return 2 * angle.floor_mult(k) + 1


def mu_total(a: OrbitSet, tau: Trivialization) -> int:
    """Sum of CZ over all iterates 1..m_i of every orbit in the set."""
    return sum(
        cz(orbit, tau, k) for orbit, mult in a for k in range(1, mult + 1)
    )


def mu_prime(a: OrbitSet, tau: Trivialization) -> int:
    """Like mu_total but with the upper limit m_i replaced by m_i - 1."""
    return sum(cz(orbit, tau, k) for orbit, mult in a for k in range(1, mult))


def mu_zero(ends: Iterable[End], tau: Trivialization) -> int:
    """Signed sum of end Conley-Zehnder indices: positive minus negative."""
    return sum(e.sign * cz(e.orbit, tau, e.mult) for e in ends)
