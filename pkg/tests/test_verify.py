from echidx import verify
from echidx.core import MonodromyAngle, OrbitClass


def test_sweep_ce1_examples():
    r = verify.sweep_ce1(4, [MonodromyAngle(3, 10, 4)])
    assert r.instances_checked == 11
    assert r.ok
    eq = {m: parts for _, m, parts in r.equality_cases}
    assert eq == {1: [(1,)], 2: [(1, 1)], 3: [(1, 1, 1)], 4: [(4,)]}
    r2 = verify.sweep_ce1(3, [MonodromyAngle(7, 10, 3)])
    assert [parts for _, _, parts in r2.equality_cases] == [[(1,)], [(2,)], [(3,)]]
    r3 = verify.sweep_ce1(1, [MonodromyAngle(4, 11, 1)])
    assert r3.instances_checked == 1 and r3.ok


def test_sweep_ce1_checks_pick_chain():
    r = verify.sweep_ce1(6, verify.theta_grid([7, 11], 6))
    assert r.ok
    assert r.details["pick_checked"] > 0
    assert r.details["degenerate_regions"] > 0


def test_sweep_cli_small():
    kinds = verify.default_kind_grid(verify.theta_grid([7], 6))
    r = verify.sweep_cli(6, kinds)
    assert r.ok and r.instances_checked > 0
    r2 = verify.sweep_cli_strict(6, kinds)
    assert r2.ok


def test_cli_worked_example():
    # elliptic 7/10: q=(2) vs q'=(1): LHS 2 <= RHS 4, strict RHS 3
    from echidx.kernels import pair_max_sum

    rho = [0, 0, 1]  # floor(q*7/10) for q = 0, 1, 2
    lhs = 2 * pair_max_sum((2,), (1,), rho)
    assert lhs == 2
    cz = [0, 1, 4, 9]  # prefix sums of CZ(gamma^k) at 7/10: 1, 3, 5
    assert cz[3] - cz[2] - cz[1] == 4
    assert cz[2] - cz[1] - cz[0] == 3


def test_sweep_neg_hyp():
    r = verify.sweep_neg_hyp(10)
    assert r.ok
    assert (1,) in r.equality_cases
    assert (2, 2, 1) in r.equality_cases
    assert (3,) not in r.equality_cases
    assert all(
        sum(1 for q in qs if q % 2 == 1) <= 1 and all(q == 1 for q in qs if q % 2)
        for qs in r.equality_cases
    )


def test_sweep_jbound_small():
    r = verify.sweep_jbound_cases(6, verify.theta_grid([7], 6))
    assert r.ok and r.instances_checked > 0


def test_sweep_huge_small():
    kinds = verify.default_kind_grid(verify.theta_grid([7], 6))
    r = verify.sweep_huge(6, kinds)
    assert r.ok
    assert r.details["min_slack"] == 0
    assert r.equality_cases  # saturation cases exist


def test_sweep_huge_j_union_reports_neg_hyp_defect():
    """The J0 union inequality with the E+N correction fails exactly on
    negative hyperbolic shared-component configurations with odd weighted
    multiplicities on both sides (see the README acceptance notes)."""
    kinds = [OrbitClass.negative_hyperbolic(1, id="n")]
    r = verify.sweep_huge(4, kinds, check_below=False, check_j_union=True)
    ju = [v for v in r.violations if v[0] == "j-union"]
    assert ju, "expected the documented negative hyperbolic deficit"
    assert all(v[3] == -1 for v in ju)
    assert not [v for v in r.violations if v[0] == "huge"]
    # elliptic and positive hyperbolic kinds are clean
    ok_kinds = verify.default_kind_grid(verify.theta_grid([7], 4), n_lo=0, n_hi=0)
    r2 = verify.sweep_huge(4, ok_kinds, check_below=False, check_j_union=True)
    assert r2.ok


def test_sweeps_deterministic():
    kinds = verify.default_kind_grid(verify.theta_grid([7], 5))
    a = verify.sweep_cli(5, kinds)
    b = verify.sweep_cli(5, kinds)
    assert a.to_json() == b.to_json()


def test_sweep_shards_aggregate():
    # sharding by angle yields the same report content as one combined run
    thetas = verify.theta_grid([7], 5)
    combined = verify.sweep_ce1(5, thetas)
    shard_instances = 0
    shard_violations = []
    shard_equalities = []
    for theta in thetas:
        piece = verify.sweep_ce1(5, [theta])
        shard_instances += piece.instances_checked
        shard_violations.extend(piece.violations)
        shard_equalities.extend(piece.equality_cases)
    assert shard_instances == combined.instances_checked
    assert shard_violations == combined.violations
    assert shard_equalities == combined.equality_cases
