"""Deterministic random generators for property demos and tests.

Negative-end admissibility mirrors positive-end admissibility through
orientation reversal (angle negated, rotation integer negated, signs of
writhe and linking flipped), so every generator draws positive-side data
and reflects it where needed.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence, Tuple

from .braid import BraidWord
from .core import MonodromyAngle, OrbitClass, OrbitSet, RelClass, Trivialization, MINUS, PLUS
from .curves import CurveComponent, CurveData, max_writhe, self_intersection2
from .cz import cz
from .kernels import pair_max_sum
from .relindex import NiceRepData, NiceRepEntry


def random_angle(rng: random.Random, k_max: int = 40, denominators: Sequence[int] = (41, 43, 53, 59, 97)) -> MonodromyAngle:
    usable = [q for q in denominators if q > k_max]
    q = rng.choice(usable)
    while True:
        p = rng.randrange(1, q)
        try:
            return MonodromyAngle(p, q, k_max)
        except ValueError:
            continue


def random_orbit(rng: random.Random, oid: str, k_max: int = 40) -> OrbitClass:
    roll = rng.random()
    if roll < 0.5:
        return OrbitClass(kind="elliptic", id=oid, angle=random_angle(rng, k_max))
    if roll < 0.75:
        return OrbitClass.positive_hyperbolic(2 * rng.randint(-2, 2), id=oid)
    return OrbitClass.negative_hyperbolic(2 * rng.randint(-2, 2) + 1, id=oid)


def random_orbit_pool(rng: random.Random, count: int, prefix: str = "o", k_max: int = 40) -> List[OrbitClass]:
    return [random_orbit(rng, f"{prefix}{i}", k_max) for i in range(count)]


def random_orbit_set(
    rng: random.Random,
    pool: Sequence[OrbitClass],
    side: str = PLUS,
    max_mult: int = 5,
    max_orbits: Optional[int] = None,
) -> OrbitSet:
    k = rng.randint(0, max_orbits if max_orbits is not None else len(pool))
    chosen = rng.sample(list(pool), k)
    entries = tuple((o, rng.randint(1, max_mult)) for o in chosen)
    return OrbitSet(entries, side)


def random_trivialization(rng: random.Random, ids: Sequence[str], span: int = 3) -> Trivialization:
    return Trivialization({oid: rng.randint(-span, span) for oid in ids})


def random_relclass(rng: random.Random, pool: Sequence[OrbitClass], max_mult: int = 4) -> RelClass:
    alpha = random_orbit_set(rng, pool, PLUS, max_mult)
    beta = random_orbit_set(rng, pool, MINUS, max_mult)
    return RelClass(alpha, beta, c_ref=rng.randint(-6, 6), q_ref=rng.randint(-6, 6))


def random_braid_word(rng: random.Random, m: int, max_len: int = 40) -> BraidWord:
    """Random valid word: random letters, then walk the axis back to slot 0
    and take the closure cycles (optionally merged) as components."""
    budget = max(0, max_len - m)
    letters = [
        (rng.randrange(0, m), rng.choice((-1, 1))) for _ in range(rng.randint(0, budget))
    ]
    slots = list(range(m + 1))
    for pos, _ in letters:
        slots[pos], slots[pos + 1] = slots[pos + 1], slots[pos]
    axis_slot = slots.index(0)
    while axis_slot > 0:
        letters.append((axis_slot - 1, rng.choice((-1, 1))))
        slots[axis_slot - 1], slots[axis_slot] = slots[axis_slot], slots[axis_slot - 1]
        axis_slot -= 1
    end_slot = {strand: j for j, strand in enumerate(slots)}
    remaining = set(range(1, m + 1))
    cycles = []
    while remaining:
        s = min(remaining)
        cycle = set()
        while s not in cycle:
            cycle.add(s)
            remaining.discard(s)
            s = end_slot[s]
        cycles.append(cycle)
    rng.shuffle(cycles)
    components: Dict[str, set] = {}
    idx = 0
    while cycles:
        take = rng.randint(1, min(2, len(cycles)))
        merged = set()
        for _ in range(take):
            merged |= cycles.pop()
        components[f"c{idx}"] = merged
        idx += 1
    return BraidWord(m, tuple(letters), components)


def mirror_orbit(orbit: OrbitClass) -> OrbitClass:
    """Orientation-reversed orbit: angle or rotation integer negated."""
    if orbit.is_elliptic:
        return OrbitClass(kind="elliptic", id=orbit.id, angle=orbit.angle.negated())
    factory = (
        OrbitClass.positive_hyperbolic
        if orbit.kind == "hyp+"
        else OrbitClass.negative_hyperbolic
    )
    return factory(-orbit.n, id=orbit.id)


def writhe_cap(orbit: OrbitClass, qs: Sequence[int]) -> int:
    """Strengthened aggregate writhe bound at a positive end: per-end
    bounds plus pairwise linking bounds."""
    qs = tuple(qs)
    tau = Trivialization.reference()
    rho = {q: cz(orbit, tau, q) // 2 for q in qs}
    if orbit.is_elliptic:
        return max_writhe(qs, orbit).main
    pair_part = 0
    for i, qi in enumerate(qs):
        for j in range(i + 1, len(qs)):
            qj = qs[j]
            pair_part += 2 * max(qi * rho[qj], qj * rho[qi])
    if orbit.kind == "hyp+":
        return pair_part + sum((rho[q] - 1) * (q - 1) for q in qs)
    # negative hyperbolic: transport the rotation-number-one bound
    m = sum(qs)
    base_rho = {q: q // 2 for q in qs}
    base = sum(((q - 1) * (q - 1) + 1) // 2 for q in qs)
    for i, qi in enumerate(qs):
        for j in range(i + 1, len(qs)):
            qj = qs[j]
            base += 2 * max(qi * base_rho[qj], qj * base_rho[qi])
    return base - m * (m - 1) * (1 - orbit.n) // 2


def linking_cap(orbit: OrbitClass, qs1: Sequence[int], qs2: Sequence[int]) -> int:
    """Pairwise linking bound between two braids at a positive end."""
    m = max(list(qs1) + list(qs2))
    tau = Trivialization.reference()
    rho = [0] * (m + 1)
    for v in range(1, m + 1):
        rho[v] = cz(orbit, tau, v) // 2
    return pair_max_sum(tuple(qs1), tuple(qs2), rho)


def consistent_nice_rep(rng: random.Random, n_plus: int = 2, n_minus: int = 2, shared: int = 1):
    """Random internally consistent nice-representative data: the conormal
    Chern value satisfies c_conormal = c_ref + eta_total."""
    plus = []
    minus = []
    offsets = {}
    for i in range(n_plus):
        oid = f"p{i}" if i >= shared else f"s{i}"
        offsets.setdefault(oid, rng.randint(-2, 2))
        plus.append(
            NiceRepEntry(
                oid,
                w=rng.randint(-4, 4),
                eta=rng.randint(-3, 3),
                gcf_mult=rng.randint(0, 3),
                offset=offsets[oid],
            )
        )
    for j in range(n_minus):
        oid = f"m{j}" if j >= shared else f"s{j}"
        offsets.setdefault(oid, rng.randint(-2, 2))
        minus.append(
            NiceRepEntry(
                oid,
                w=rng.randint(-4, 4),
                eta=rng.randint(-3, 3),
                gcf_mult=rng.randint(0, 3),
                offset=offsets[oid],
            )
        )
    c_ref = rng.randint(-8, 8)
    eta_total = sum(e.eta for e in plus) - sum(e.eta for e in minus)
    data = NiceRepData(tuple(plus), tuple(minus), c_ref=c_ref, c_conormal=c_ref + eta_total)
    return data, c_ref


def _end_groups(ends) -> Dict[Tuple[str, int], list]:
    groups: Dict[Tuple[str, int], list] = {}
    for sign, orbit, mult in ends:
        groups.setdefault((orbit.id, sign), []).append((orbit, mult))
    return groups


def admissible_writhe(rng: random.Random, ends, spread: int = 3) -> int:
    """Total signed writhe drawn within the strengthened bounds, group by
    group.  A negative-end braid obeys the mirrored lower bound
    w >= -cap(mirror), so its -w contribution to the total is bounded
    above by cap(mirror), exactly like a positive group at the mirrored
    orbit."""
    total = 0
    for (oid, sign), items in _end_groups(ends).items():
        orbit = items[0][0]
        qs = [m for _, m in items]
        cap = writhe_cap(orbit if sign > 0 else mirror_orbit(orbit), qs)
        total += cap - rng.randint(0, spread)
    return total


def random_jplus_curve(rng: random.Random, pool: Sequence[OrbitClass]):
    """Curve data for the J+ pipeline: a few trivial-cylinder covers over
    fresh orbits plus non-trivial components with at least one positive
    end, adjunction-consistent Q, strengthened-bound writhes, bound-capped
    linking, and non-negative geometric intersections."""
    comps = []
    q: Dict[tuple, int] = {}
    dots: Dict[tuple, int] = {}

    n_nontrivial = rng.randint(1, 3)
    for a in range(n_nontrivial):
        genus = rng.randint(0, 2)
        delta = rng.randint(0, 2)
        ends = []
        n_pos = rng.randint(1, 2)
        for _ in range(n_pos):
            orbit = rng.choice(list(pool))
            ends.append((1, orbit, rng.randint(1, 3)))
        for _ in range(rng.randint(0, 2)):
            orbit = rng.choice(list(pool))
            ends.append((-1, orbit, rng.randint(1, 3)))
        # a trivial-cylinder shape has forced zero invariants; keep the
        # generic components genuinely non-trivial
        if (
            genus == 0
            and delta == 0
            and len(ends) == 2
            and {s for s, _, _ in ends} == {-1, 1}
            and ends[0][1].id == ends[1][1].id
            and all(m == 1 for _, _, m in ends)
        ):
            ends.append((1, rng.choice(list(pool)), 1))
        w_ref = admissible_writhe(rng, ends)
        key = f"N{a}"
        comp = CurveComponent(key, genus, delta, tuple(ends), c_ref=0, w_ref=w_ref)
        # raise the Chern number until the symplectization guarantee
        # C.C >= 0 holds for this non-cylinder component
        c_ref = 0
        while True:
            comp = CurveComponent(key, genus, delta, tuple(ends), c_ref=c_ref, w_ref=w_ref)
            if self_intersection2(comp) >= 0:
                break
            c_ref += 1
        comps.append((comp, 1))
        q[(key, key)] = comp.c_ref - comp.chi - comp.w_ref + 2 * comp.delta

    for t in range(rng.randint(0, 2)):
        orbit = random_orbit(rng, f"t{t}", k_max=40)
        key = f"T{t}"
        comp = CurveComponent(
            key, 0, 0, ((1, orbit, 1), (-1, orbit, 1)), c_ref=0, w_ref=0
        )
        comps.append((comp, rng.randint(1, 3)))
        q[(key, key)] = 0

    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            ca, _ = comps[i]
            cb, _ = comps[j]
            ell_total = 0
            groups_a = _end_groups(ca.ends)
            groups_b = _end_groups(cb.ends)
            for (oid, sign), items_a in groups_a.items():
                if (oid, sign) not in groups_b:
                    continue
                items_b = groups_b[(oid, sign)]
                orbit = items_a[0][0]
                qs_a = [m for _, m in items_a]
                qs_b = [m for _, m in items_b]
                cap = linking_cap(orbit if sign > 0 else mirror_orbit(orbit), qs_a, qs_b)
                ell_total += cap - rng.randint(0, 3)
            dot_val = rng.randint(0, 2)
            key = (ca.key, cb.key)
            dots[key] = dot_val
            q[key] = dot_val - ell_total
    return CurveData(tuple(comps), q, dots)
