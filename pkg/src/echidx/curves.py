"""Combinatorial holomorphic-curve data and the curve-level formulas:
Fredholm index, relative adjunction, writhe bounds, the index inequality,
intersection numbers of unions and covers, and the J-index bounds.

Asymptotic writhes are caller-supplied data; the analytic bounds on them
appear here only as admissibility constraints and slack computations.
Half-integer self-intersection numbers are handled as doubled integers
internally and surface as exact Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, NamedTuple, Optional, Sequence, Tuple

from .core import MINUS, PLUS, OrbitClass, OrbitSet, Trivialization
from .cz import End, cz, mu_prime, mu_total, mu_zero
from .errors import (
    InconsistentData,
    MissingIntersectionData,
    NoPositiveEnd,
)
from .partitions import p_in, p_out
from .relindex import size_measure

_REF = Trivialization.reference()


@dataclass(frozen=True)
class CurveComponent:
    """A simple irreducible component: genus, singularity count, ends, and
    the reference-trivialization Chern number and asymptotic writhe."""

    key: str
    genus: int
    delta: int
    ends: tuple
    c_ref: int = 0
    w_ref: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.delta < 0:
            raise ValueError("genus and delta must be non-negative")
        ends = tuple(End(int(s), o, int(m)) for s, o, m in self.ends)
        object.__setattr__(self, "ends", ends)
        for e in ends:
            if e.sign not in (-1, 1):
                raise ValueError("end sign must be +-1")
            if e.mult < 1:
                raise ValueError("end multiplicity must be >= 1")

    @property
    def chi(self) -> int:
        return 2 - 2 * self.genus - len(self.ends)

    @property
    def hyperbolic_end_count(self) -> int:
        return sum(1 for e in self.ends if e.orbit.is_hyperbolic)

    @property
    def elliptic_end_count(self) -> int:
        return sum(1 for e in self.ends if e.orbit.is_elliptic)

    def orbit_multiplicities(self, sign: int) -> Dict[str, tuple]:
        """Map orbit id -> (orbit, total end multiplicity) on one side."""
        out: Dict[str, tuple] = {}
        for e in self.ends:
            if e.sign != sign:
                continue
            orbit, total = out.get(e.orbit.id, (e.orbit, 0))
            if orbit != e.orbit:
                raise ValueError(f"orbit id {e.orbit.id!r} bound to two different orbits")
            out[e.orbit.id] = (orbit, total + e.mult)
        return out

    def orbit_set(self, sign: int) -> OrbitSet:
        mults = self.orbit_multiplicities(sign)
        entries = tuple(mults[oid] for oid in sorted(mults))
        return OrbitSet(entries, PLUS if sign > 0 else MINUS)

    def is_trivial_cylinder(self) -> bool:
        if self.genus != 0 or self.delta != 0 or len(self.ends) != 2:
            return False
        signs = sorted(e.sign for e in self.ends)
        if signs != [-1, 1]:
            return False
        e1, e2 = self.ends
        return e1.orbit.id == e2.orbit.id and e1.mult == 1 and e2.mult == 1


def _c_tau(c: CurveComponent, tau: Trivialization) -> int:
    value = c.c_ref
    for sign in (1, -1):
        for orbit, mult in c.orbit_multiplicities(sign).values():
            value += sign * mult * tau.offset_of(orbit)
    return value


def fredholm_index(c: CurveComponent, tau: Optional[Trivialization] = None) -> int:
    """ind = -chi + 2*c_tau + mu0_tau (jointly shift-invariant)."""
    if tau is None:
        tau = _REF
    return -c.chi + 2 * _c_tau(c, tau) + mu_zero(c.ends, tau)


def adjunction_residual(c: CurveComponent, q_self: int) -> int:
    """c_ref - (chi + Q + w - 2*delta); zero means adjunction-consistent."""
    return c.c_ref - (c.chi + q_self + c.w_ref - 2 * c.delta)


class SelfIntersection(NamedTuple):
    value: Fraction
    nonneg_guaranteed: bool


def self_intersection2(c: CurveComponent) -> int:
    """Doubled self-intersection number: 2g - 2 + ind + h + 4*delta."""
    return 2 * c.genus - 2 + fredholm_index(c) + c.hyperbolic_end_count + 4 * c.delta


def self_intersection(c: CurveComponent, tau: Optional[Trivialization] = None) -> SelfIntersection:
    """C.C as an exact half-integer, with a flag for the symplectization
    guarantee C.C >= 0 (which excludes only elliptic trivial cylinders)."""
    doubled = self_intersection2(c)
    elliptic_triv = c.is_trivial_cylinder() and c.ends[0].orbit.is_elliptic
    return SelfIntersection(Fraction(doubled, 2), not elliptic_triv)


def _pair_key(k1: str, k2: str) -> tuple:
    return (k1, k2) if k1 <= k2 else (k2, k1)


@dataclass(frozen=True)
class CurveData:
    """A union of covers of simple components, with the symmetric table of
    pairwise Q values and the geometric intersection counts of distinct
    components."""

    components: tuple
    q_matrix: Mapping[tuple, int] = field(default_factory=dict)
    dot_inputs: Mapping[tuple, int] = field(default_factory=dict)

    def __post_init__(self):
        comps = tuple((c, int(d)) for c, d in self.components)
        object.__setattr__(self, "components", comps)
        keys = [c.key for c, _ in comps]
        if len(keys) != len(set(keys)):
            raise ValueError("component keys must be distinct")
        for _, d in comps:
            if d < 1:
                raise ValueError("covering degrees must be >= 1")
        q = {_pair_key(*k): int(v) for k, v in self.q_matrix.items()}
        object.__setattr__(self, "q_matrix", q)
        dots = {_pair_key(*k): int(v) for k, v in self.dot_inputs.items()}
        object.__setattr__(self, "dot_inputs", dots)

    @classmethod
    def single(cls, comp: CurveComponent, q_self: int, degree: int = 1) -> "CurveData":
        return cls(((comp, degree),), {(comp.key, comp.key): q_self})

    def component_map(self) -> Dict[str, tuple]:
        return {c.key: (c, d) for c, d in self.components}

    def q_of(self, k1: str, k2: str) -> int:
        key = _pair_key(k1, k2)
        if key not in self.q_matrix:
            raise MissingIntersectionData(f"Q value missing for pair {key}")
        return self.q_matrix[key]


def _merge_tables(t1: Mapping, t2: Mapping, what: str) -> Dict[tuple, int]:
    merged = dict(t1)
    for key, value in t2.items():
        if key in merged and merged[key] != value:
            raise InconsistentData(f"conflicting {what} values for pair {key}")
        merged[key] = value
    return merged


def _union_components(c: CurveData, c_prime: CurveData) -> Dict[str, tuple]:
    """key -> (component, degree in c, degree in c_prime); shared keys must
    carry identical component data."""
    out: Dict[str, tuple] = {}
    for comp, d in c.components:
        out[comp.key] = (comp, d, 0)
    for comp, d in c_prime.components:
        if comp.key in out:
            prev, d0, _ = out[comp.key]
            if prev != comp:
                raise InconsistentData(f"component key {comp.key!r} bound to different data")
            out[comp.key] = (prev, d0, d)
        else:
            out[comp.key] = (comp, 0, d)
    return out


def dot2(c: CurveData, c_prime: CurveData) -> int:
    """Doubled intersection number 2 * (C . C'): weighted over covering
    degrees, mixing geometric counts for distinct components with the
    half-integer self-intersection for shared ones."""
    dots = _merge_tables(c.dot_inputs, c_prime.dot_inputs, "dot")
    total = 0
    for comp_a, da in c.components:
        for comp_b, db in c_prime.components:
            if comp_a.key == comp_b.key:
                if comp_a != comp_b:
                    raise InconsistentData(
                        f"component key {comp_a.key!r} bound to different data"
                    )
                term2 = self_intersection2(comp_a)
            else:
                key = _pair_key(comp_a.key, comp_b.key)
                if key not in dots:
                    raise MissingIntersectionData(f"geometric count missing for {key}")
                term2 = 2 * dots[key]
            total += da * db * term2
    return total


def dot(c: CurveData, c_prime: CurveData) -> Fraction:
    return Fraction(dot2(c, c_prime), 2)


def _orbit_totals(comps: Sequence[tuple], sign: int) -> Dict[str, tuple]:
    """Orbit totals of a weighted union: id -> (orbit, sum_a d_a * m_a)."""
    out: Dict[str, tuple] = {}
    for comp, degree in comps:
        for oid, (orbit, mult) in comp.orbit_multiplicities(sign).items():
            prev_orbit, prev = out.get(oid, (orbit, 0))
            if prev_orbit != orbit:
                raise ValueError(f"orbit id {oid!r} bound to two different orbits")
            out[oid] = (orbit, prev + degree * mult)
    return out


def _orbit_set_of(comps: Sequence[tuple], sign: int) -> OrbitSet:
    totals = _orbit_totals(comps, sign)
    entries = tuple(totals[oid] for oid in sorted(totals))
    return OrbitSet(entries, PLUS if sign > 0 else MINUS)


def _weighted_index(comps, q_of, mu, c_sign: int = 1) -> int:
    """c_sign*c + Q + mu for a weighted union of components, with Q
    expanded as a quadratic form over the covering degrees."""
    c_total = sum(d * comp.c_ref for comp, d in comps)
    q_total = 0
    for comp_a, da in comps:
        for comp_b, db in comps:
            q_total += da * db * q_of(comp_a.key, comp_b.key)
    plus = _orbit_set_of(comps, +1)
    minus = _orbit_set_of(comps, -1)
    return c_sign * c_total + q_total + mu(plus, _REF) - mu(minus, _REF)


def ech_index_of_curve(c: CurveData) -> int:
    """I(C) = c + Q + mu(alpha+) - mu(alpha-) of the weighted union."""
    return _weighted_index(c.components, c.q_of, mu_total)


def j0_of_curve(c: CurveData) -> int:
    """J0(C) = -c + Q + mu'(alpha+) - mu'(alpha-) of the weighted union."""
    return _weighted_index(c.components, c.q_of, mu_prime, c_sign=-1)


def j_plus_of_curve(c: CurveData) -> int:
    plus = _orbit_set_of(c.components, +1)
    minus = _orbit_set_of(c.components, -1)
    return j0_of_curve(c) + size_measure(plus) - size_measure(minus)


def _union_data(c: CurveData, c_prime: CurveData) -> CurveData:
    merged = _union_components(c, c_prime)
    comps = tuple(
        (comp, d0 + d1) for comp, d0, d1 in (merged[k] for k in sorted(merged))
    )
    q = _merge_tables(c.q_matrix, c_prime.q_matrix, "Q")
    dots = _merge_tables(c.dot_inputs, c_prime.dot_inputs, "dot")
    return CurveData(comps, q, dots)


class WritheBounds(NamedTuple):
    """Writhe bound data at one orbit: `total` is the telescoping bound
    sum_{k<=m} CZ(k) - sum_i CZ(q_i); `main` the pairwise-max bound."""

    total: int
    main: int
    per_end: tuple
    pairwise: dict


def max_writhe(qs: Sequence[int], orbit: OrbitClass, tau: Optional[Trivialization] = None) -> WritheBounds:
    if tau is None:
        tau = _REF
    qs = tuple(int(q) for q in qs)
    m = sum(qs)
    rho = [cz(orbit, tau, q) // 2 for q in qs]
    total = sum(cz(orbit, tau, k) for k in range(1, m + 1)) - sum(
        cz(orbit, tau, q) for q in qs
    )
    per_end = tuple(r * (q - 1) for r, q in zip(rho, qs))
    pairwise = {}
    main = -sum(rho)
    for i, (qi, ri) in enumerate(zip(qs, rho)):
        for j, (qj, rj) in enumerate(zip(qs, rho)):
            term = max(qi * rj, qj * ri)
            main += term
            if i < j:
                pairwise[(i, j)] = term
    return WritheBounds(total, main, per_end, pairwise)


class PartitionVerdict(NamedTuple):
    orbit_id: str
    side: str
    total: int
    ends: tuple
    extremal: tuple
    matches: bool


@dataclass(frozen=True)
class IndexInequalityReport:
    ind: int
    ech: int
    delta: int
    w_total: int
    writhe_slack: int
    index_slack: int
    adjunction_residuals: tuple
    verdicts: tuple
    equality_admissible: bool


def index_inequality_report(c: CurveData, tau: Optional[Trivialization] = None) -> IndexInequalityReport:
    """Evaluate ind, I, delta and the writhe-bound slack of a simple curve,
    with partition verdicts deciding whether equality in ind <= I - 2*delta
    is admissible (positive ends must form the outgoing partition, negative
    ends the incoming one, at every orbit)."""
    if tau is None:
        tau = _REF
    if any(d != 1 for _, d in c.components):
        raise ValueError("index inequality applies to simple curves (all degrees 1)")
    comps = c.components
    ind = sum(fredholm_index(comp, tau) for comp, _ in comps)
    ech = ech_index_of_curve(c)
    delta = sum(comp.delta for comp, _ in comps)
    w_total = sum(comp.w_ref for comp, _ in comps)
    plus = _orbit_set_of(comps, +1)
    minus = _orbit_set_of(comps, -1)
    mu_diff = mu_total(plus, _REF) - mu_total(minus, _REF)
    mu0 = sum(mu_zero(comp.ends, _REF) for comp, _ in comps)
    residuals = tuple(
        adjunction_residual(comp, c.q_of(comp.key, comp.key)) for comp, _ in comps
    )
    verdicts = []
    for sign, extremal_of in ((+1, p_out), (-1, p_in)):
        per_orbit: Dict[str, list] = {}
        orbits: Dict[str, OrbitClass] = {}
        for comp, _ in comps:
            for e in comp.ends:
                if e.sign == sign:
                    per_orbit.setdefault(e.orbit.id, []).append(e.mult)
                    orbits[e.orbit.id] = e.orbit
        for oid in sorted(per_orbit):
            mults = tuple(sorted(per_orbit[oid], reverse=True))
            total = sum(mults)
            expected = extremal_of(orbits[oid], total)[0].parts
            verdicts.append(
                PartitionVerdict(
                    oid,
                    PLUS if sign > 0 else MINUS,
                    total,
                    mults,
                    expected,
                    mults == expected,
                )
            )
    return IndexInequalityReport(
        ind=ind,
        ech=ech,
        delta=delta,
        w_total=w_total,
        writhe_slack=mu_diff - mu0 - w_total,
        index_slack=ech - 2 * delta - ind,
        adjunction_residuals=residuals,
        verdicts=tuple(verdicts),
        equality_admissible=all(v.matches for v in verdicts),
    )


def union_index_slack(c: CurveData, c_prime: CurveData) -> int:
    """I(C u C') - I(C) - I(C') - 2 C.C', evaluated from the supplied Q
    table, additive Chern numbers, and product orbit sets."""
    union = _union_data(c, c_prime)
    slack = (
        ech_index_of_curve(union)
        - ech_index_of_curve(c)
        - ech_index_of_curve(c_prime)
        - dot2(c, c_prime)
    )
    return slack


class HugeEntry(NamedTuple):
    """Per-component end data at one orbit: end multiplicities, covering
    degrees in the two curves, and the braid writhe."""

    qs: tuple
    d: int
    d_prime: int
    w: int


def huge_slack(
    entries: Sequence[HugeEntry],
    ell: Mapping[tuple, int],
    orbit: OrbitClass,
    tau: Optional[Trivialization] = None,
) -> int:
    """LHS - RHS of the per-orbit union inequality:

    (sum_{k<=M+M'} - sum_{k<=M} - sum_{k<=M'}) CZ(k)
      - 2 sum_{a!=b} d_a d'_b l(zeta_a, zeta_b)
      - sum_a d_a d'_a (-eps*n_a + sum_i CZ(q_{a,i}) + 2 w_a)

    with eps = 1 for elliptic orbits and 0 for hyperbolic ones."""
    if tau is None:
        tau = _REF
    entries = [HugeEntry(tuple(e[0]), int(e[1]), int(e[2]), int(e[3])) for e in entries]
    big_m = sum(e.d * sum(e.qs) for e in entries)
    big_m_prime = sum(e.d_prime * sum(e.qs) for e in entries)
    czs = [0]
    for k in range(1, big_m + big_m_prime + 1):
        czs.append(czs[-1] + cz(orbit, tau, k))
    telescope = czs[big_m + big_m_prime] - czs[big_m] - czs[big_m_prime]
    cross = 0
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            lij = ell.get((i, j), ell.get((j, i), 0))
            cross += (entries[i].d * entries[j].d_prime + entries[j].d * entries[i].d_prime) * lij
    eps = 1 if orbit.is_elliptic else 0
    diag = 0
    for e in entries:
        cz_ends = sum(cz(orbit, tau, q) for q in e.qs)
        diag += e.d * e.d_prime * (-eps * len(e.qs) + cz_ends + 2 * e.w)
    return telescope - 2 * cross - diag


def j_bound_rhs(c: CurveComponent) -> int:
    """Lower bound for J0 of a simple irreducible component:
    2(g - 1 + delta) + per-orbit terms (2n-1 elliptic, m positive
    hyperbolic, (m + n_odd)/2 negative hyperbolic), positive and negative
    ends counted separately."""
    total = 2 * (c.genus - 1 + c.delta)
    for sign in (1, -1):
        groups: Dict[str, list] = {}
        orbits: Dict[str, OrbitClass] = {}
        for e in c.ends:
            if e.sign == sign:
                groups.setdefault(e.orbit.id, []).append(e.mult)
                orbits[e.orbit.id] = e.orbit
        for oid, mults in groups.items():
            orbit = orbits[oid]
            m = sum(mults)
            n = len(mults)
            if orbit.is_elliptic:
                total += 2 * n - 1
            elif orbit.kind == "hyp+":
                total += m
            else:
                n_odd = sum(1 for q in mults if q % 2 == 1)
                assert (m + n_odd) % 2 == 0, "negative hyperbolic summand not integral"
                total += (m + n_odd) // 2
    return total


def euler_bound_check(c: CurveComponent, j0: int) -> bool:
    """-chi <= J0 - 2*delta."""
    return -c.chi <= j0 - 2 * c.delta


def _shared_orbit_counts(c: CurveData, c_prime: CurveData) -> Tuple[int, int, int, int]:
    """(E+, N+, E-, N-): shared elliptic orbits and both-odd negative
    hyperbolic orbits, split by side."""
    counts = []
    for sign in (1, -1):
        totals_a = _orbit_totals(c.components, sign)
        totals_b = _orbit_totals(c_prime.components, sign)
        e_count = n_count = 0
        for oid, (orbit, ma) in totals_a.items():
            if oid not in totals_b:
                continue
            mb = totals_b[oid][1]
            if orbit.is_elliptic:
                e_count += 1
            elif orbit.kind == "hyp-" and ma % 2 == 1 and mb % 2 == 1:
                n_count += 1
        counts.extend((e_count, n_count))
    return tuple(counts)


class JUnionSlack(NamedTuple):
    slack: int
    e_count: int
    n_count: int


def j_union_slack(c: CurveData, c_prime: CurveData) -> JUnionSlack:
    """J0(C u C') - J0(C) - J0(C') - 2 C.C' - E - N, where E counts the
    elliptic orbits at which both curves have ends and N the negative
    hyperbolic orbits at which both total end multiplicities are odd."""
    e_plus, n_plus, e_minus, n_minus = _shared_orbit_counts(c, c_prime)
    e_count = e_plus + e_minus
    n_count = n_plus + n_minus
    union = _union_data(c, c_prime)
    slack = (
        j0_of_curve(union)
        - j0_of_curve(c)
        - j0_of_curve(c_prime)
        - dot2(c, c_prime)
        - e_count
        - n_count
    )
    return JUnionSlack(slack, e_count, n_count)


class JPlusComponent(NamedTuple):
    key: str
    degree: int
    trivial_cylinder_cover: bool
    j_plus: int
    lower_bound: Optional[int]
    bound_ok: bool


class JPlusStep(NamedTuple):
    key: str
    e_plus: int
    n_plus: int
    e_minus: int
    n_minus: int
    size_identity_ok: bool
    dot2_value: int
    gain: int
    min_gain: int
    step_ok: bool


@dataclass(frozen=True)
class JPlusReport:
    components: tuple
    steps: tuple
    total: int
    nonnegative: bool


def _sub_data(c: CurveData, keys, degrees: Mapping[str, int]) -> CurveData:
    comps = tuple(
        (comp, degrees[comp.key]) for comp, _ in c.components if comp.key in keys
    )
    return CurveData(comps, c.q_matrix, c.dot_inputs)


def j_plus_pipeline(c: CurveData) -> JPlusReport:
    """Decompose a symplectization curve into trivial-cylinder cover groups
    and unit copies of the remaining components, then replay the union
    induction: per-piece J+ with its lower bound 2(g - 1 + |alpha+| +
    delta), and per-merge the gain against the predicted minimum
    2(E- + N-), checking the size-measure identity along the way.

    Raises NoPositiveEnd when a non-trivial-cylinder component has no
    positive end (the contact hypothesis)."""
    pieces = []
    comp_reports = []
    for comp, degree in c.components:
        if comp.is_trivial_cylinder():
            data = _sub_data(c, {comp.key}, {comp.key: degree})
            value = j_plus_of_curve(data)
            comp_reports.append(
                JPlusComponent(comp.key, degree, True, value, None, value == 0)
            )
            pieces.append((comp.key, data))
        else:
            if not any(e.sign == 1 for e in comp.ends):
                raise NoPositiveEnd(f"component {comp.key!r} has no positive end")
            unit = _sub_data(c, {comp.key}, {comp.key: 1})
            value = j_plus_of_curve(unit)
            plus = comp.orbit_set(+1)
            bound = 2 * (comp.genus - 1 + size_measure(plus) + comp.delta)
            comp_reports.append(
                JPlusComponent(comp.key, degree, False, value, bound, value >= bound)
            )
            for _ in range(degree):
                pieces.append((comp.key, unit))
    # merge non-trivial unit copies first, trivial-cylinder groups last,
    # so that no merge pairs two covers of the same cylinder
    pieces.sort(key=lambda item: (item[1].components[0][0].is_trivial_cylinder(),))
    steps = []
    acc = None
    for key, piece in pieces:
        if acc is None:
            acc = piece
            continue
        d2 = dot2(acc, piece)
        e_plus, n_plus, e_minus, n_minus = _shared_orbit_counts(acc, piece)
        ok = True
        for sign, e_cnt, n_cnt in ((1, e_plus, n_plus), (-1, e_minus, n_minus)):
            sa = _orbit_set_of(acc.components, sign)
            sb = _orbit_set_of(piece.components, sign)
            ok = ok and (
                size_measure(sa.product(sb))
                == size_measure(sa) + size_measure(sb) - e_cnt - n_cnt
            )
        union = _union_data(acc, piece)
        gain = j_plus_of_curve(union) - j_plus_of_curve(acc) - j_plus_of_curve(piece) - d2
        min_gain = 2 * (e_minus + n_minus)
        steps.append(
            JPlusStep(
                key,
                e_plus,
                n_plus,
                e_minus,
                n_minus,
                ok,
                d2,
                gain,
                min_gain,
                gain >= min_gain,
            )
        )
        acc = union
    total = j_plus_of_curve(acc) if acc is not None else 0
    return JPlusReport(tuple(comp_reports), tuple(steps), total, total >= 0)
