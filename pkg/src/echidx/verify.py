"""Exhaustive desk-scale sweeps establishing the combinatorial lemmas, with
violation reporting.

Every sweep is deterministic, shards cleanly over its parameter grid, and
returns a SweepReport whose `violations` list is empty exactly when the
lemma holds with the stipulated equality pattern.  Theta grids should use
denominators larger than the sweep bound so the irrationality guard never
trips; `theta_grid` builds them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, List, Mapping, Optional, Sequence

from . import kernels
from .core import MonodromyAngle, OrbitClass
from .curves import CurveData, CurveComponent, HugeEntry, huge_slack, j_union_slack, max_writhe
from .errors import HorizonExceeded
from .partitions import out_path, partitions_of, pick_stats, staircase

DEFAULT_CE1_M_MAX = 10
DEFAULT_CLI_M_MAX = 12
DEFAULT_HUGE_M_MAX = 10


@dataclass
class SweepReport:
    name: str
    parameters: dict
    instances_checked: int = 0
    violations: list = field(default_factory=list)
    equality_cases: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "name": self.name,
            "parameters": self.parameters,
            "instances_checked": self.instances_checked,
            "violations": [str(v) for v in self.violations],
            "equality_cases": [str(e) for e in self.equality_cases],
            "details": self.details,
            "ok": self.ok,
        }


def theta_grid(denominators: Iterable[int], k_max: int) -> List[MonodromyAngle]:
    """All p/q with 1 <= p < q and gcd(p, q) = 1, as validated angles."""
    grid = []
    for q in denominators:
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                grid.append(MonodromyAngle(p, q, k_max))
    return grid


def default_kind_grid(thetas: Sequence[MonodromyAngle], n_lo: int = -5, n_hi: int = 5) -> List[OrbitClass]:
    """Elliptic orbits for each angle plus the parity-respecting hyperbolic
    rotation grid."""
    kinds: List[OrbitClass] = [
        OrbitClass(kind="elliptic", id=f"e{i}", angle=t) for i, t in enumerate(thetas)
    ]
    for n in range(n_lo, n_hi + 1):
        if n % 2 == 0:
            kinds.append(OrbitClass.positive_hyperbolic(n, id=f"hp{n}"))
        else:
            kinds.append(OrbitClass.negative_hyperbolic(n, id=f"hn{n}"))
    return kinds


def sweep_ce1(
    m_max: int = DEFAULT_CE1_M_MAX,
    thetas: Optional[Sequence[MonodromyAngle]] = None,
    check_pick: bool = True,
) -> SweepReport:
    """Check the staircase inequality for every partition of every m <=
    m_max at every angle; equality cases must be exactly the outgoing
    partitions.  With check_pick, also verify the Pick chain on every
    non-degenerate staircase region: the doubled area equals both the
    shoelace count and the inequality's left side, the lattice-count bound
    holds with equality iff the staircase path matches the extremal path,
    and the boundary bound holds with equality iff no edge is divisible."""
    if thetas is None:
        thetas = theta_grid([11], m_max)
    report = SweepReport(
        "ce1", {"m_max": m_max, "thetas": [str(t) for t in thetas], "check_pick": check_pick}
    )
    degenerate = 0
    pick_checked = 0
    for theta in thetas:
        if theta.k_max < m_max:
            raise HorizonExceeded(f"theta {theta} has horizon {theta.k_max} < {m_max}")
        norm = theta.normalized()
        floors = kernels.floor_table(norm.p, norm.q, m_max)
        prefix = kernels.prefix_sums(floors)
        for m in range(1, m_max + 1):
            parts = list(partitions_of(m))
            flat, offs, _ = kernels.pack_partitions(parts)
            violations, equalities = kernels.ce1_sweep(flat, offs, floors, prefix)
            report.instances_checked += len(parts)
            for idx in violations:
                report.violations.append(("ce1", str(theta), parts[idx]))
            expected = out_path(norm, m).partition().parts
            eq_set = {parts[idx] for idx in equalities}
            if eq_set != {expected}:
                report.violations.append(
                    ("ce1-equality-set", str(theta), m, sorted(eq_set), expected)
                )
            report.equality_cases.append((str(theta), m, sorted(eq_set)))
            if not check_pick:
                continue
            for qs in parts:
                region = staircase(qs, norm)
                if region.degenerate:
                    degenerate += 1
                    continue
                pick_checked += 1
                stats = pick_stats(region)
                lhs, rhs = kernels.ce1_eval(qs, floors, prefix)
                if lhs != stats.twoA:
                    report.violations.append(("pick1", str(theta), qs, lhs, stats.twoA))
                l_bound = 1 + prefix[m] + m
                path_match = region.path().vertices == out_path(norm, m).vertices
                if stats.L > l_bound or (stats.L == l_bound) != path_match:
                    report.violations.append(("pick3", str(theta), qs, stats.L, l_bound))
                fsum = sum(floors[q] for q in qs)
                b_bound = m + len(qs) + fsum
                no_divisible_edge = all(
                    math.gcd(q, floors[q]) == 1 for q in qs
                )
                if stats.B < b_bound or (stats.B == b_bound) != no_divisible_edge:
                    report.violations.append(("pick4", str(theta), qs, stats.B, b_bound))
    report.details["degenerate_regions"] = degenerate
    report.details["pick_checked"] = pick_checked
    return report


def _czref(kind: OrbitClass, k: int) -> int:
    if kind.is_hyperbolic:
        return k * kind.n
    return 2 * kind.angle.floor_mult(k) + 1


def _kind_tables(kind: OrbitClass, m_total_max: int):
    rho = [0] * (m_total_max + 1)
    for v in range(1, m_total_max + 1):
        rho[v] = _czref(kind, v) // 2
    if kind.is_hyperbolic:
        czp = kernels.cz_prefix_hyperbolic(kind.n, m_total_max)
    else:
        n = kind.angle.normalized()
        czp = kernels.cz_prefix_elliptic(n.p, n.q, m_total_max)
    code = 0 if kind.is_elliptic else (1 if kind.kind == "hyp+" else 2)
    return rho, czp, code


def _run_cli(m_total_max: int, kinds: Sequence[OrbitClass]) -> SweepReport:
    parts = []
    for m in range(0, m_total_max + 1):
        parts.extend(partitions_of(m))
    flat, offs, ms = kernels.pack_partitions(parts)
    report = SweepReport(
        "cli",
        {"m_total_max": m_total_max, "kinds": [k.to_json() for k in kinds]},
    )
    for kind in kinds:
        if kind.is_elliptic and kind.angle.k_max < m_total_max:
            raise HorizonExceeded(
                f"angle {kind.angle} has horizon {kind.angle.k_max} < {m_total_max}"
            )
        rho, czp, code = _kind_tables(kind, m_total_max)
        pairs, viol_cli, viol_clip, viol_strict, bad = kernels.cli_sweep(
            flat, offs, ms, rho, czp, m_total_max, code
        )
        report.instances_checked += pairs
        examples = {0: [], 1: [], 2: []}
        for i, j, code_ in bad:
            examples[code_].append((parts[i], parts[j]))
        for code_, tag, count in (
            (0, "cli", viol_cli),
            (1, "cli-strict-form", viol_clip),
            (2, "cli-strictness", viol_strict),
        ):
            if count:
                report.violations.append((tag, kind.to_json(), count, examples[code_]))
    return report


def sweep_cli(
    m_total_max: int = DEFAULT_CLI_M_MAX, kinds: Optional[Sequence[OrbitClass]] = None
) -> SweepReport:
    """Pairwise linking-bound inequality over all partition pairs with
    m + m' <= m_total_max, for every orbit kind in the grid."""
    if kinds is None:
        kinds = default_kind_grid(theta_grid([13], m_total_max))
    report = _run_cli(m_total_max, kinds)
    report.name = "cli"
    report.violations = [v for v in report.violations if v[0] == "cli"]
    return report


def sweep_cli_strict(
    m_total_max: int = DEFAULT_CLI_M_MAX, kinds: Optional[Sequence[OrbitClass]] = None
) -> SweepReport:
    """Strict variant: the shifted inequality holds everywhere and is
    strict exactly for elliptic orbits with m, m' > 0 and for negative
    hyperbolic orbits with m and m' both odd."""
    if kinds is None:
        kinds = default_kind_grid(theta_grid([13], m_total_max))
    report = _run_cli(m_total_max, kinds)
    report.name = "cli-strict"
    report.violations = [v for v in report.violations if v[0] != "cli"]
    return report


def sweep_neg_hyp(m_max: int = 10) -> SweepReport:
    """Negative hyperbolic case of the equality analysis: over ordered odd
    parts, sum(1 - i + (1 - q_i)/2) <= 0, with equality iff at most one
    part is odd and that part equals 1; cross-checked against the full
    inequality at rotation number 1."""
    report = SweepReport("neg-hyp", {"m_max": m_max})
    for m in range(1, m_max + 1):
        for qs in partitions_of(m):
            report.instances_checked += 1
            odd = sorted((q for q in qs if q % 2 == 1), reverse=True)
            s2 = sum(2 * (1 - i) + (1 - q) for i, q in enumerate(odd, start=1))
            if s2 > 0:
                report.violations.append(("neg-hyp", qs, s2))
            # the displayed sum is equivalent to the full inequality at
            # rotation number 1: same truth value, same equality cases
            rho = [v // 2 for v in range(0, m + 1)]
            lhs = kernels.pair_max_sum(qs, qs, rho) - sum(rho[q] for q in qs)
            rhs = m * (m + 1) // 2 - m
            if lhs > rhs:
                report.violations.append(("neg-hyp-full", qs, lhs, rhs))
            if (lhs == rhs) != (s2 == 0):
                report.violations.append(("neg-hyp-mismatch", qs, lhs - rhs, s2))
            predicted = len(odd) == 0 or (len(odd) == 1 and odd[0] == 1)
            if (s2 == 0) != predicted:
                report.violations.append(("neg-hyp-equality", qs, s2))
            if s2 == 0:
                report.equality_cases.append(qs)
    return report


def sweep_jbound_cases(
    m_max: int = 10, thetas: Optional[Sequence[MonodromyAngle]] = None
) -> SweepReport:
    """The three per-orbit inequalities in the lower bound for J0.

    Case 1 (elliptic): the strengthened staircase inequality and the
    strengthened lattice-count bound.  Case 2 (positive hyperbolic): the
    per-orbit identity is an exact equality.  Case 3 (negative
    hyperbolic): the writhe-bound aggregation with the sum (j-1)q_j term."""
    if thetas is None:
        thetas = theta_grid([11], m_max)
    report = SweepReport("jbound", {"m_max": m_max, "thetas": [str(t) for t in thetas]})
    for theta in thetas:
        norm = theta.normalized()
        floors = kernels.floor_table(norm.p, norm.q, m_max)
        prefix = kernels.prefix_sums(floors)
        for m in range(1, m_max + 1):
            for qs in partitions_of(m):
                report.instances_checked += 1
                lhs = kernels.pair_max_sum(qs, qs, floors)
                fsum = sum(floors[q] for q in qs)
                rhs1 = 2 * prefix[m - 1] + fsum + m - len(qs)
                if lhs > rhs1:
                    report.violations.append(("jbound-case1", str(theta), qs))
                region = staircase(qs, norm)
                if not region.degenerate:
                    stats = pick_stats(region)
                    l_bound = 2 + prefix[m - 1] + (m - 1) + fsum
                    if stats.L > l_bound:
                        report.violations.append(("jbound-case1-L", str(theta), qs))
    for n in range(-4, 5, 2):
        for m in range(1, m_max + 1):
            for qs in partitions_of(m):
                report.instances_checked += 1
                value = (
                    len(qs)
                    - m * n
                    + sum(q * n for q in qs)
                    + sum(q - 1 for q in qs)
                )
                if value != m:
                    report.violations.append(("jbound-case2", n, qs, value))
    for m in range(1, m_max + 1):
        for qs in partitions_of(m):
            report.instances_checked += 1
            n_ends = len(qs)
            odd = sorted((q for q in qs if q % 2 == 1), reverse=True)
            n_odd = len(odd)
            w_bound = sum(((q - 1) * (q - 1) + 1) // 2 for q in qs)
            for i in range(n_ends):
                for j in range(i + 1, n_ends):
                    qi, qj = qs[i], qs[j]
                    w_bound += 2 * max(qi * (qj // 2), qj * (qi // 2))
            lhs = 2 * n_ends + m * (m - 1) - 2 * w_bound
            rhs = (m + n_odd) + 2 * sum((j - 1) * q for j, q in enumerate(odd, start=1))
            if lhs < rhs:
                report.violations.append(("jbound-case3", qs, lhs, rhs))
    return report


def iter_huge_configs(
    orbit: OrbitClass, m_max: int = DEFAULT_HUGE_M_MAX, d_max: int = 2, r_max: int = 2
):
    """Yield (entries, ell) saturating the analytic writhe and linking
    bounds, over <= r_max components with degrees <= d_max and weighted
    total multiplicity <= m_max.

    The per-orbit slack is non-increasing in every w and ell, so checking
    at saturation covers all admissible values below the bounds."""
    all_parts = []
    for m in range(1, m_max + 1):
        all_parts.extend((m, qs) for qs in partitions_of(m))
    rho = [0] * (m_max + 1)
    for v in range(1, m_max + 1):
        rho[v] = _czref(orbit, v) // 2
    w_caps = [max_writhe(qs, orbit).main for _, qs in all_parts]
    degree_pairs = [
        (d, dp) for d in range(d_max + 1) for dp in range(d_max + 1) if d or dp
    ]
    ell_cache: dict = {}

    def ell_cap(i: int, j: int) -> int:
        key = (i, j)
        if key not in ell_cache:
            ell_cache[key] = kernels.pair_max_sum(
                all_parts[i][1], all_parts[j][1], rho
            )
        return ell_cache[key]

    for idx1, (m1, qs1) in enumerate(all_parts):
        for d1, dp1 in degree_pairs:
            if (d1 + dp1) * m1 > m_max:
                continue
            yield [HugeEntry(qs1, d1, dp1, w_caps[idx1])], {}
            if r_max < 2:
                continue
            for idx2 in range(idx1, len(all_parts)):
                m2, qs2 = all_parts[idx2]
                for d2, dp2 in degree_pairs:
                    if (d1 + dp1) * m1 + (d2 + dp2) * m2 > m_max:
                        continue
                    yield (
                        [
                            HugeEntry(qs1, d1, dp1, w_caps[idx1]),
                            HugeEntry(qs2, d2, dp2, w_caps[idx2]),
                        ],
                        {(0, 1): ell_cap(idx1, idx2)},
                    )


def huge_config_curves(entries: Sequence[HugeEntry], ell: Mapping, orbit: OrbitClass):
    """Adjunction-consistent curve pair realizing a per-orbit config: genus
    and delta zero, Q from the adjunction formula, cross Q = -ell (zero
    geometric intersections)."""
    comps = []
    q: Dict[tuple, int] = {}
    dots: Dict[tuple, int] = {}
    for a, e in enumerate(entries):
        key = f"K{a}"
        ends = tuple((1, orbit, q_) for q_ in e.qs)
        comp = CurveComponent(key, 0, 0, ends, c_ref=0, w_ref=e.w)
        comps.append(comp)
        chi = 2 - len(e.qs)
        q[(key, key)] = -chi - e.w
    for (i, j), lij in ell.items():
        q[(f"K{i}", f"K{j}")] = -lij
        dots[(f"K{i}", f"K{j}")] = 0
    left = tuple((comps[a], e.d) for a, e in enumerate(entries) if e.d > 0)
    right = tuple((comps[a], e.d_prime) for a, e in enumerate(entries) if e.d_prime > 0)
    return CurveData(left, q, dots), CurveData(right, q, dots)


def sweep_huge(
    m_max: int = DEFAULT_HUGE_M_MAX,
    kinds: Optional[Sequence[OrbitClass]] = None,
    d_max: int = 2,
    r_max: int = 2,
    check_below: bool = True,
    check_j_union: bool = False,
) -> SweepReport:
    """Per-orbit union inequality: slack >= 0 with bound-admissible writhe
    and linking data, exactly 0 at saturation for positive hyperbolic
    orbits; optionally also the J0 union inequality on the induced curve
    pairs."""
    if kinds is None:
        kinds = default_kind_grid(theta_grid([11], m_max))
    report = SweepReport(
        "huge",
        {
            "m_max": m_max,
            "kinds": [k.to_json() for k in kinds],
            "d_max": d_max,
            "r_max": r_max,
        },
    )
    min_slack = None
    for kind in kinds:
        for entries, ell in iter_huge_configs(kind, m_max, d_max, r_max):
            report.instances_checked += 1
            slack = huge_slack(entries, ell, kind)
            min_slack = slack if min_slack is None else min(min_slack, slack)
            if slack < 0:
                report.violations.append(("huge", kind.to_json(), entries, slack))
            if kind.kind == "hyp+" and slack != 0:
                report.violations.append(
                    ("huge-saturation", kind.to_json(), entries, slack)
                )
            if slack == 0:
                report.equality_cases.append((kind.to_json(), tuple(entries)))
            if check_below:
                lowered = [HugeEntry(e.qs, e.d, e.d_prime, e.w - 1) for e in entries]
                ell_low = {key: v - 1 for key, v in ell.items()}
                below = huge_slack(lowered, ell_low, kind)
                if below < slack:
                    report.violations.append(
                        ("huge-monotonicity", kind.to_json(), entries, below, slack)
                    )
            if check_j_union:
                left, right = huge_config_curves(entries, ell, kind)
                if left.components and right.components:
                    result = j_union_slack(left, right)
                    if result.slack < 0:
                        report.violations.append(
                            ("j-union", kind.to_json(), entries, result.slack)
                        )
    report.details["min_slack"] = min_slack
    return report
