"""Foundational types: orbit classes, trivializations, orbit sets, and
relative-class surrogates.

All values are immutable after construction and every operation on them is
pure, so unrestricted concurrent use is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Optional

from .errors import (
    HorizonExceeded,
    IntegerMultiple,
    MissingOffset,
    NonCoprime,
)

ELLIPTIC = "elliptic"
POS_HYP = "hyp+"
NEG_HYP = "hyp-"

PLUS = "plus"
MINUS = "minus"


@dataclass(frozen=True)
class MonodromyAngle:
    """Exact rational rotation number theta = p/q with a guard horizon.

    The horizon plays the role of irrationality at working scale: no
    iterate k <= k_max may make k*theta an integer, so every floor and
    ceiling entering the index formulas is unambiguous up to k_max.
    """

    p: int
    q: int
    k_max: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"denominator must be positive, got {self.q}")
        if self.k_max < 1:
            raise ValueError(f"horizon must be positive, got {self.k_max}")
        if math.gcd(abs(self.p), self.q) != 1:
            raise NonCoprime(f"gcd(|{self.p}|, {self.q}) != 1")
        for k in range(1, self.k_max + 1):
            if (k * self.p) % self.q == 0:
                raise IntegerMultiple(k)

    def floor_mult(self, k: int) -> int:
        """floor(k * theta), exact; valid for |k| <= k_max."""
        if abs(k) > self.k_max:
            raise HorizonExceeded(f"k={k} beyond horizon {self.k_max}")
        return (k * self.p) // self.q

    def ceil_mult(self, k: int) -> int:
        """ceil(k * theta), exact; valid for |k| <= k_max."""
        if abs(k) > self.k_max:
            raise HorizonExceeded(f"k={k} beyond horizon {self.k_max}")
        return -((-k * self.p) // self.q)

    def shifted(self, delta: int) -> "MonodromyAngle":
        """Angle seen from a trivialization offset by delta: theta - delta."""
        return MonodromyAngle(self.p - delta * self.q, self.q, self.k_max)

    def negated(self) -> "MonodromyAngle":
        return MonodromyAngle(-self.p, self.q, self.k_max)

    def normalized(self) -> "MonodromyAngle":
        """Representative of the class of theta in R/Z with 0 < theta < 1."""
        return MonodromyAngle(self.p % self.q, self.q, self.k_max)

    def as_fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self):
        return f"{self.p}/{self.q}"


def validate_angle(p: int, q: int, k_max: int) -> MonodromyAngle:
    """Build a MonodromyAngle, checking coprimality and the horizon guard."""
    return MonodromyAngle(p, q, k_max)


@dataclass(frozen=True)
class OrbitClass:
    """Symplectic type of an embedded orbit: elliptic with an exact rational
    monodromy angle, or hyperbolic with a rotation integer.

    The rotation integer is even for positive hyperbolic orbits and odd for
    negative hyperbolic ones.
    """

    kind: str
    id: str = "a"
    angle: Optional[MonodromyAngle] = None
    n: Optional[int] = None

    def __post_init__(self):
        if self.kind == ELLIPTIC:
            if self.angle is None:
                raise ValueError("elliptic orbit needs a monodromy angle")
        elif self.kind == POS_HYP:
            if self.n is None or self.n % 2 != 0:
                raise ValueError(f"positive hyperbolic rotation must be even, got {self.n}")
        elif self.kind == NEG_HYP:
            if self.n is None or self.n % 2 == 0:
                raise ValueError(f"negative hyperbolic rotation must be odd, got {self.n}")
        else:
            raise ValueError(f"unknown orbit kind {self.kind!r}")

    @classmethod
    def elliptic(cls, p: int, q: int, k_max: int, id: str = "a") -> "OrbitClass":
        return cls(ELLIPTIC, id=id, angle=validate_angle(p, q, k_max))

    @classmethod
    def positive_hyperbolic(cls, n: int, id: str = "a") -> "OrbitClass":
        return cls(POS_HYP, id=id, n=n)

    @classmethod
    def negative_hyperbolic(cls, n: int, id: str = "a") -> "OrbitClass":
        return cls(NEG_HYP, id=id, n=n)

    @property
    def is_elliptic(self) -> bool:
        return self.kind == ELLIPTIC

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind in (POS_HYP, NEG_HYP)

    @property
    def k_max(self) -> Optional[int]:
        return self.angle.k_max if self.angle is not None else None

    def to_json(self) -> dict:
        if self.kind == ELLIPTIC:
            return {
                "kind": "elliptic",
                "p": self.angle.p,
                "q": self.angle.q,
                "k_max": self.angle.k_max,
            }
        return {"kind": self.kind, "n": self.n}

    @classmethod
    def from_json(cls, doc: Mapping, id: Optional[str] = None) -> "OrbitClass":
        oid = id if id is not None else doc.get("id", "a")
        kind = doc["kind"]
        if kind == "elliptic":
            return cls.elliptic(int(doc["p"]), int(doc["q"]), int(doc["k_max"]), id=oid)
        if kind == POS_HYP:
            return cls.positive_hyperbolic(int(doc["n"]), id=oid)
        if kind == NEG_HYP:
            return cls.negative_hyperbolic(int(doc["n"]), id=oid)
        raise ValueError(f"unknown orbit kind {kind!r}")


@dataclass(frozen=True)
class Trivialization:
    """Integer offsets from the per-orbit reference trivialization.

    An orbit absent from `offsets` falls back to `default`; with
    `default=None` the lookup raises MissingOffset, which enforces totality
    over the orbits in use.  Offsets compose additively.
    """

    offsets: Mapping[str, int] = field(default_factory=dict)
    default: Optional[int] = None

    @classmethod
    def reference(cls) -> "Trivialization":
        return cls({}, default=0)

    @classmethod
    def constant(cls, delta: int) -> "Trivialization":
        return cls({}, default=delta)

    def offset_of(self, orbit) -> int:
        oid = orbit.id if isinstance(orbit, OrbitClass) else orbit
        if oid in self.offsets:
            return self.offsets[oid]
        if self.default is not None:
            return self.default
        raise MissingOffset(f"no trivialization offset for orbit {oid!r}")

    def shifted(self, delta: int) -> "Trivialization":
        """Compose with a uniform extra offset (additive on every orbit)."""
        return Trivialization(
            {k: v + delta for k, v in self.offsets.items()},
            default=None if self.default is None else self.default + delta,
        )

    def with_offset(self, oid: str, value: int) -> "Trivialization":
        new = dict(self.offsets)
        new[oid] = value
        return Trivialization(new, default=self.default)


@dataclass(frozen=True)
class OrbitSet:
    """Finite list of (orbit, positive multiplicity) pairs with a side tag."""

    entries: tuple
    side: str = PLUS

    def __post_init__(self):
        if self.side not in (PLUS, MINUS):
            raise ValueError(f"side must be 'plus' or 'minus', got {self.side!r}")
        entries = tuple((o, int(m)) for o, m in self.entries)
        object.__setattr__(self, "entries", entries)
        seen = set()
        for orbit, mult in entries:
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult}")
            if orbit.id in seen:
                raise ValueError(f"duplicate orbit id {orbit.id!r} in orbit set")
            seen.add(orbit.id)

    def __iter__(self) -> Iterator:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def empty(cls, side: str = PLUS) -> "OrbitSet":
        return cls((), side)

    @classmethod
    def of(cls, *pairs, side: str = PLUS) -> "OrbitSet":
        return cls(tuple(pairs), side)

    def multiplicity_of(self, oid: str) -> int:
        for orbit, mult in self.entries:
            if orbit.id == oid:
                return mult
        return 0

    def orbit_by_id(self, oid: str) -> Optional[OrbitClass]:
        for orbit, _ in self.entries:
            if orbit.id == oid:
                return orbit
        return None

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    def with_side(self, side: str) -> "OrbitSet":
        return OrbitSet(self.entries, side)

    def product(self, other: "OrbitSet") -> "OrbitSet":
        """Product of orbit sets: add the multiplicities of all orbits."""
        mults = {o.id: m for o, m in self.entries}
        orbits = {o.id: o for o, _ in self.entries}
        for orbit, mult in other.entries:
            if orbit.id in orbits and orbits[orbit.id] != orbit:
                raise ValueError(f"orbit id {orbit.id!r} bound to two different orbits")
            orbits[orbit.id] = orbit
            mults[orbit.id] = mults.get(orbit.id, 0) + mult
        entries = tuple((orbits[oid], mults[oid]) for oid in sorted(mults))
        return OrbitSet(entries, self.side)

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "entries": [{"orbit": o.id, "mult": m} for o, m in self.entries],
        }

    @classmethod
    def from_json(cls, doc: Mapping, orbits: Mapping[str, OrbitClass]) -> "OrbitSet":
        entries = []
        for entry in doc.get("entries", []):
            oid = entry["orbit"]
            if oid not in orbits:
                raise ValueError(f"orbit id {oid!r} not present in the orbit table")
            entries.append((orbits[oid], int(entry["mult"])))
        return cls(tuple(entries), doc.get("side", PLUS))


def divide_common_factor(alpha: OrbitSet, beta: OrbitSet):
    """Divide two orbit sets by their greatest common factor.

    Returns (alpha_hat, beta_hat, gcf) where gcf holds, for every orbit
    shared by alpha and beta, the multiplicity removed from both sides.
    alpha_hat and beta_hat have no orbits in common.
    """
    beta_mults = {o.id: m for o, m in beta.entries}
    a_entries, g_entries = [], []
    for orbit, mult in alpha.entries:
        common = min(mult, beta_mults.get(orbit.id, 0))
        if common:
            g_entries.append((orbit, common))
        if mult - common:
            a_entries.append((orbit, mult - common))
    alpha_mults = {o.id: m for o, m in alpha.entries}
    b_entries = []
    for orbit, mult in beta.entries:
        common = min(mult, alpha_mults.get(orbit.id, 0))
        if mult - common:
            b_entries.append((orbit, mult - common))
    return (
        OrbitSet(tuple(a_entries), alpha.side),
        OrbitSet(tuple(b_entries), beta.side),
        OrbitSet(tuple(g_entries), alpha.side),
    )


@dataclass(frozen=True)
class HomologyModel:
    """Finitely generated abelian group given by invariant factors.

    A factor of 0 encodes an infinite cyclic summand; a factor d >= 1
    encodes Z/d.  Elements are integer vectors of matching length with
    torsion coordinates reduced.
    """

    invariant_factors: tuple

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        if any(d < 0 for d in factors):
            raise ValueError("invariant factors must be non-negative")
        object.__setattr__(self, "invariant_factors", factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def reduce(self, vec) -> tuple:
        if len(vec) != self.rank:
            raise ValueError(f"element has length {len(vec)}, expected {self.rank}")
        out = []
        for x, d in zip(vec, self.invariant_factors):
            out.append(int(x) % d if d > 0 else int(x))
        return tuple(out)

    def add(self, u, v) -> tuple:
        return self.reduce([a + b for a, b in zip(u, v)])

    def scale(self, c: int, u) -> tuple:
        return self.reduce([c * a for a in u])

    def zero(self) -> tuple:
        return (0,) * self.rank


@dataclass(frozen=True)
class RelClass:
    """Surrogate for a relative homology class between two orbit sets.

    Stores the reference-trivialization values of the relative first Chern
    number and the relative self-intersection, plus optional cross pairings
    against other labelled classes (caller-supplied geometric data).
    """

    alpha: OrbitSet
    beta: OrbitSet
    c_ref: int = 0
    q_ref: int = 0
    q_cross: Optional[Mapping[str, int]] = None
    label: Optional[str] = None

    def __post_init__(self):
        if self.alpha.side != PLUS:
            raise ValueError("alpha must have side 'plus'")
        if self.beta.side != MINUS:
            raise ValueError("beta must have side 'minus'")
        for orbit, _ in self.beta.entries:
            other = self.alpha.orbit_by_id(orbit.id)
            if other is not None and other != orbit:
                raise ValueError(f"orbit id {orbit.id!r} bound to two different orbits")

    def orbit_entries(self):
        """Yield (orbit, multiplicity, sign) with sign +1 for alpha, -1 for beta."""
        for orbit, mult in self.alpha.entries:
            yield orbit, mult, +1
        for orbit, mult in self.beta.entries:
            yield orbit, mult, -1

    def cross_with(self, other: "RelClass") -> Optional[int]:
        if self.q_cross is not None and other.label in self.q_cross:
            return self.q_cross[other.label]
        if other.q_cross is not None and self.label in other.q_cross:
            return other.q_cross[self.label]
        return None
