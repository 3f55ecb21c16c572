"""Concrete solid-torus braid model: words on m strands around a
distinguished axis strand, with writhe, pairwise linking, and winding
numbers read off as signed crossing counts.

Slots are numbered 0..m with the axis starting in slot 0; the letter
(i, s) crosses the strands currently in slots i and i+1 with sign s
(counterclockwise positive).  All invariants are reported in the
reference framing; `reframe` applies the framing shift laws.

Fidelity contract: the counts equal the geometric writhe, linking, and
winding numbers of the closed diagram under the framing-determined
embedding whenever the axis strand is isotopic to the core circle of the
solid torus.  Only the combinatorial invariants are validated here, and
no claim is made that every isotopy class of braids arising from curve
ends is realized by some word.  Winding numbers presuppose a link
disjoint from the core; keeping the axis as a separate strand encodes
that disjointness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Mapping

from .errors import MalformedWord

AXIS = 0


@dataclass(frozen=True)
class BraidWord:
    """Braid word on strands 1..m plus the axis strand 0.

    `components` partitions {1..m} into named components; the induced
    permutation must fix the axis and preserve each component setwise.
    """

    m: int
    letters: tuple
    components: Mapping[str, FrozenSet[int]]

    def __post_init__(self):
        if self.m < 0:
            raise MalformedWord("strand count must be non-negative")
        letters = tuple((int(i), int(s)) for i, s in self.letters)
        object.__setattr__(self, "letters", letters)
        comps = {name: frozenset(v) for name, v in self.components.items()}
        object.__setattr__(self, "components", comps)
        for pos, sign in letters:
            if not 0 <= pos <= self.m - 1:
                raise MalformedWord(f"letter position {pos} out of range for m={self.m}")
            if sign not in (-1, 1):
                raise MalformedWord(f"letter sign must be +-1, got {sign}")
        covered = set()
        for name, strands in comps.items():
            if not strands:
                raise MalformedWord(f"component {name!r} is empty")
            if covered & strands:
                raise MalformedWord("components must be disjoint")
            covered |= strands
        if covered != set(range(1, self.m + 1)):
            raise MalformedWord("components must partition strands 1..m")
        self._validate_permutation()

    def component_of(self, strand: int):
        if strand == AXIS:
            return None
        for name, strands in self.components.items():
            if strand in strands:
                return name
        raise MalformedWord(f"strand {strand} not in any component")

    def final_slots(self) -> list:
        """slots[j] = strand occupying slot j after the whole word."""
        slots = list(range(self.m + 1))
        for pos, _ in self.letters:
            slots[pos], slots[pos + 1] = slots[pos + 1], slots[pos]
        return slots

    def _validate_permutation(self):
        slots = self.final_slots()
        if slots[0] != AXIS:
            raise MalformedWord("axis strand does not return to slot 0")
        axis_crossings = 0
        probe = list(range(self.m + 1))
        for pos, _ in self.letters:
            if AXIS in (probe[pos], probe[pos + 1]):
                axis_crossings += 1
            probe[pos], probe[pos + 1] = probe[pos + 1], probe[pos]
        if axis_crossings % 2 != 0:
            raise MalformedWord("axis-crossing count must be even")
        # strand starting in slot j ends in the slot where the closure
        # reconnects it; each component must be preserved setwise
        end_slot = {strand: j for j, strand in enumerate(slots)}
        for name, strands in self.components.items():
            if {end_slot[s] for s in strands} != set(strands):
                raise MalformedWord(f"permutation does not preserve component {name!r}")

    def strand_counts(self) -> Dict[str, int]:
        return {name: len(strands) for name, strands in self.components.items()}


@dataclass(frozen=True)
class BraidInvariants:
    """Writhe per component, linking per unordered component pair, and
    winding (half the signed axis-crossing count) per component."""

    w: Mapping[str, int]
    link: Mapping[FrozenSet[str], int]
    eta: Mapping[str, int]
    strand_counts: Mapping[str, int]

    def link_of(self, c1: str, c2: str) -> int:
        return self.link.get(frozenset((c1, c2)), 0)


def braid_invariants(b: BraidWord) -> BraidInvariants:
    """Count crossings of the word: same-component pairs feed the writhe,
    cross-component pairs the linking numbers, axis pairs the winding."""
    names = list(b.components)
    w = {name: 0 for name in names}
    link_double = {
        frozenset((c1, c2)): 0
        for i, c1 in enumerate(names)
        for c2 in names[i + 1 :]
    }
    eta_double = {name: 0 for name in names}
    slots = list(range(b.m + 1))
    for pos, sign in b.letters:
        s1, s2 = slots[pos], slots[pos + 1]
        c1 = b.component_of(s1)
        c2 = b.component_of(s2)
        if c1 is None and c2 is None:
            raise MalformedWord("axis cannot cross itself")
        elif c1 is None:
            eta_double[c2] += sign
        elif c2 is None:
            eta_double[c1] += sign
        elif c1 == c2:
            w[c1] += sign
        else:
            link_double[frozenset((c1, c2))] += sign
        slots[pos], slots[pos + 1] = slots[pos + 1], slots[pos]
    link = {}
    for key, doubled in link_double.items():
        if doubled % 2 != 0:
            raise MalformedWord("odd signed crossing count between components")
        link[key] = doubled // 2
    eta = {}
    for name, doubled in eta_double.items():
        if doubled % 2 != 0:
            raise MalformedWord("odd signed axis-crossing count")
        eta[name] = doubled // 2
    return BraidInvariants(w, link, eta, b.strand_counts())


def reframe(invs: BraidInvariants, strand_counts: Mapping[str, int], delta: int) -> BraidInvariants:
    """Shift the framing by delta = tau' - tau: writhe drops by m(m-1)*delta
    per component, linking by m1*m2*delta, winding by m*delta."""
    names = list(strand_counts)
    w = {
        name: invs.w.get(name, 0)
        - strand_counts[name] * (strand_counts[name] - 1) * delta
        for name in names
    }
    link = {}
    for i, c1 in enumerate(names):
        for c2 in names[i + 1 :]:
            key = frozenset((c1, c2))
            link[key] = invs.link_of(c1, c2) - strand_counts[c1] * strand_counts[c2] * delta
    eta = {name: invs.eta.get(name, 0) - strand_counts[name] * delta for name in names}
    return BraidInvariants(w, link, eta, dict(strand_counts))


def insert_full_twist(b: BraidWord, positive: bool) -> BraidWord:
    """Append the full twist on strands 1..m: m(m-1) crossings of uniform
    sign, realized as (sigma_1 ... sigma_{m-1})^m on slots 1..m."""
    if b.m <= 1:
        return b
    sign = 1 if positive else -1
    twist = []
    for _ in range(b.m):
        for pos in range(1, b.m):
            twist.append((pos, sign))
    return BraidWord(b.m, b.letters + tuple(twist), b.components)


def union_writhe(invs: BraidInvariants, c1: str, c2: str) -> int:
    """Writhe of the union of two components:
    w(c1) + w(c2) + 2*link(c1, c2)."""
    if c1 == c2:
        raise ValueError("union_writhe needs two distinct components")
    return invs.w[c1] + invs.w[c2] + 2 * invs.link_of(c1, c2)


def merge_components(b: BraidWord, c1: str, c2: str, merged: str = None) -> BraidWord:
    """Replace components c1 and c2 by their union (recount oracle for the
    union-writhe identity)."""
    if c1 == c2:
        raise ValueError("cannot merge a component with itself")
    comps = {}
    for name, strands in b.components.items():
        if name in (c1, c2):
            continue
        comps[name] = strands
    comps[merged or f"{c1}+{c2}"] = b.components[c1] | b.components[c2]
    return BraidWord(b.m, b.letters, comps)
