import random

import pytest

from echidx.braid import BraidWord, braid_invariants
from echidx.core import (
    HomologyModel,
    OrbitClass,
    OrbitSet,
    RelClass,
    Trivialization,
)
from echidx.errors import (
    InconsistentData,
    MismatchedTrivializations,
    ModulusMismatch,
)
from echidx.relindex import (
    IndexValue,
    NiceRepData,
    NiceRepEntry,
    abs_grading,
    check_abs_vs_rel,
    compose,
    divisibility,
    ech_index,
    index_ambiguity,
    j_indices,
    q_from_nice_rep,
    quadratic_union,
    size_measure,
    size_union_deficit,
    transform_relclass,
)
from echidx.sampling import (
    consistent_nice_rep,
    random_braid_word,
    random_orbit_pool,
    random_relclass,
    random_trivialization,
)

E = OrbitClass.elliptic(3, 10, 9, id="e")
HP = OrbitClass.positive_hyperbolic(2, id="p")
HM = OrbitClass.negative_hyperbolic(1, id="n")
REF = Trivialization.reference()


def _relclass(alpha_entries, beta_entries, c_ref=0, q_ref=0):
    return RelClass(
        OrbitSet(tuple(alpha_entries), "plus"),
        OrbitSet(tuple(beta_entries), "minus"),
        c_ref,
        q_ref,
    )


def test_transform_examples():
    z = _relclass([(E, 2)], [], c_ref=1, q_ref=2)
    assert transform_relclass(z, Trivialization.constant(1)) == (3, 6)
    assert transform_relclass(z, REF) == (1, 2)
    z2 = _relclass([(HM, 1)], [(HM, 1)], c_ref=0, q_ref=5)
    assert transform_relclass(z2, Trivialization.constant(1)) == (0, 5)


def test_ech_index_examples():
    z = _relclass([(E, 2)], [], c_ref=1, q_ref=2)
    assert ech_index(z) == 5
    assert ech_index(z, Trivialization.constant(1)) == 5
    zero = _relclass([(E, 2)], [(E, 2)], c_ref=0, q_ref=0)
    assert ech_index(zero) == 0


def test_j_indices_examples():
    z = _relclass([(E, 2)], [], c_ref=1, q_ref=2)
    assert j_indices(z) == (2, 3, 1)
    zero = _relclass([(E, 1)], [(E, 1)])
    assert j_indices(zero) == (0, 0, 0)
    z2 = _relclass([(HM, 5)], [])
    assert j_indices(z2) == (10, 13, 7)


def test_size_measure_examples():
    assert size_measure(OrbitSet.of((E, 5))) == 1
    assert size_measure(OrbitSet.of((HP, 5))) == 5
    assert size_measure(OrbitSet.of((HM, 5))) == 3


def test_size_union_identity_random():
    rng = random.Random(17)
    for _ in range(300):
        pool = random_orbit_pool(rng, 4)
        a = OrbitSet(
            tuple((o, rng.randint(1, 5)) for o in rng.sample(pool, rng.randint(0, 4))),
            "plus",
        )
        b = OrbitSet(
            tuple((o, rng.randint(1, 5)) for o in rng.sample(pool, rng.randint(0, 4))),
            "plus",
        )
        e_cnt, n_cnt = size_union_deficit(a, b)
        assert size_measure(a.product(b)) == size_measure(a) + size_measure(b) - e_cnt - n_cnt


def test_tau_invariance_random():
    rng = random.Random(23)
    for _ in range(200):
        pool = random_orbit_pool(rng, 3)
        z = random_relclass(rng, pool)
        tau = random_trivialization(rng, [o.id for o in pool])
        assert ech_index(z, tau) == ech_index(z)
        assert j_indices(z, tau) == j_indices(z)


def test_index_ambiguity():
    h = HomologyModel((0, 0))
    pairing = [[1, 0], [0, 1]]
    c1 = (2, 0)
    gamma = (1, 0)
    z_diff = (1, 0)
    alpha = [(E, 1)]
    beta = []
    z1 = _relclass(alpha, beta, c_ref=2, q_ref=2)
    z2 = _relclass(alpha, beta, c_ref=0, q_ref=0)
    # <c1 + 2 PD(Gamma), D> = 2 + 2 = 4 matches the index difference
    assert index_ambiguity(z1, z2, z_diff, c1, gamma, pairing, h) == 4
    # zero difference
    assert index_ambiguity(z1, z1, (0, 0), c1, gamma, pairing, h) == 0
    # J variant: <-c1 + 2 PD(Gamma), D> = 0 = j0 difference
    assert index_ambiguity(z1, z2, z_diff, c1, gamma, pairing, h, j_variant=True) == 0
    bad = _relclass(alpha, beta, c_ref=2, q_ref=3)
    with pytest.raises(InconsistentData):
        index_ambiguity(bad, z2, z_diff, c1, gamma, pairing, h)


def test_divisibility_examples():
    h = HomologyModel((0, 0))
    assert divisibility((2, 4), h) == 2
    assert divisibility((0, 0), h) == 0
    ht = HomologyModel((3, 5))
    assert divisibility((1, 2), ht) == 0


def test_quadratic_union_examples():
    assert quadratic_union(2, 2, 0) == 4
    assert quadratic_union(0, 0, 3) == 6
    assert quadratic_union(1, 4, -2) == 1


def test_compose_additivity():
    rng = random.Random(31)
    for _ in range(100):
        pool = random_orbit_pool(rng, 3)
        mid_entries = tuple(
            (o, rng.randint(1, 3)) for o in rng.sample(pool, rng.randint(0, 3))
        )
        z = RelClass(
            OrbitSet(tuple((o, rng.randint(1, 3)) for o in pool[:2]), "plus"),
            OrbitSet(mid_entries, "minus"),
            rng.randint(-5, 5),
            rng.randint(-5, 5),
        )
        w = RelClass(
            OrbitSet(mid_entries, "plus"),
            OrbitSet(((pool[2], 2),), "minus"),
            rng.randint(-5, 5),
            rng.randint(-5, 5),
        )
        zw = compose(z, w)
        assert ech_index(z) + ech_index(w) == ech_index(zw)
        assert j_indices(z).j0 + j_indices(w).j0 == j_indices(zw).j0


def test_compose_rejects_mismatched_middle():
    z = _relclass([(E, 1)], [(E, 2)])
    w = _relclass([(E, 1)], [])
    with pytest.raises(InconsistentData):
        compose(z, w)


def test_q_from_nice_rep_examples():
    single = NiceRepData((NiceRepEntry("a", w=0, eta=2),), ())
    assert q_from_nice_rep(single) == -2
    zero = NiceRepData((NiceRepEntry("a"),), (NiceRepEntry("b"),))
    assert q_from_nice_rep(zero) == 0
    gcf = NiceRepData((NiceRepEntry("a", w=1, eta=1, gcf_mult=2),), ())
    assert q_from_nice_rep(gcf) == -6


def test_q_transformation_matches_reframed_braids():
    """Dual route to the pairing shift law: reframing the reduced braid at
    one orbit (writhe drops by m-hat(m-hat-1)*delta, winding by
    m-hat*delta) changes Q by exactly (m^2 - n^2)*delta, the direct
    transformation for total multiplicities m = m-hat + g and n = g."""
    rng = random.Random(73)
    for _ in range(200):
        m_hat = rng.randint(1, 4)
        g = rng.randint(0, 3)
        w = rng.randint(-5, 5)
        eta = rng.randint(-4, 4)
        delta = rng.randint(-3, 3)
        base = NiceRepData((NiceRepEntry("s", w=w, eta=eta, gcf_mult=g),), ())
        shifted = NiceRepData(
            (
                NiceRepEntry(
                    "s",
                    w=w - m_hat * (m_hat - 1) * delta,
                    eta=eta - m_hat * delta,
                    gcf_mult=g,
                ),
            ),
            (),
        )
        m = m_hat + g
        n = g
        assert q_from_nice_rep(shifted) == q_from_nice_rep(base) + (m * m - n * n) * delta


def test_nice_rep_trivialization_mismatch():
    data = NiceRepData(
        (NiceRepEntry("s", offset=1),), (NiceRepEntry("s", offset=2),), c_conormal=0
    )
    with pytest.raises(MismatchedTrivializations):
        q_from_nice_rep(data)
    with pytest.raises(MismatchedTrivializations):
        check_abs_vs_rel(OrbitSet.empty("plus"), OrbitSet.empty("minus"), data, 0)


def test_check_abs_vs_rel_examples():
    a = OrbitSet.of((E, 1), side="plus")
    b = OrbitSet.empty("minus")
    zero = NiceRepData((), (), c_ref=0, c_conormal=0)
    assert check_abs_vs_rel(a, b, zero, 0)
    good = NiceRepData((NiceRepEntry("e", eta=1),), (), c_ref=3, c_conormal=4)
    assert check_abs_vs_rel(a, b, good, 3)
    bad = NiceRepData((NiceRepEntry("e", eta=2),), (), c_ref=3, c_conormal=4)
    assert not check_abs_vs_rel(a, b, bad, 3)


def test_check_abs_vs_rel_perturbations():
    rng = random.Random(41)
    a = OrbitSet.of((E, 1), side="plus")
    b = OrbitSet.empty("minus")
    for _ in range(50):
        data, c_ref = consistent_nice_rep(rng)
        assert check_abs_vs_rel(a, b, data, c_ref)
        assert not check_abs_vs_rel(a, b, data, c_ref + 1)
        bumped = NiceRepData(data.plus, data.minus, data.c_ref, data.c_conormal - 1)
        assert not check_abs_vs_rel(a, b, bumped, c_ref)
        for side_name in ("plus", "minus"):
            side = getattr(data, side_name)
            for k in range(len(side)):
                entries = list(side)
                e = entries[k]
                entries[k] = NiceRepEntry(e.orbit_id, e.w, e.eta + 1, e.gcf_mult, e.offset)
                kwargs = {side_name: tuple(entries)}
                other = "minus" if side_name == "plus" else "plus"
                kwargs[other] = getattr(data, other)
                perturbed = NiceRepData(
                    kwargs["plus"], kwargs["minus"], data.c_ref, data.c_conormal
                )
                assert not check_abs_vs_rel(a, b, perturbed, c_ref)


def test_abs_grading_examples():
    empty = OrbitSet.empty("plus")
    cls = abs_grading(empty, IndexValue(0, 0), {})
    assert cls.offset == IndexValue(0, 0)
    a = OrbitSet.of((E, 2), side="plus")
    flat = abs_grading(a, IndexValue(0, 0), {"e": 0})
    assert flat.offset.value == 2  # mu above the reference class
    fused = abs_grading(a, IndexValue(1, 0), {"e": 1})
    assert fused.offset == flat.offset


def test_abs_grading_modulus():
    a = OrbitSet.of((E, 2), side="plus")
    h = HomologyModel((0,))
    # c1 + 2*gamma = (4), divisibility 4
    cls = abs_grading(
        a, IndexValue(0, 4), {"e": 0}, gamma=(1,), h=h, c1=(2,)
    )
    assert cls.offset.modulus == 4
    assert cls.gamma == (1,)
    with pytest.raises(ModulusMismatch):
        abs_grading(a, IndexValue(0, 3), {"e": 0}, gamma=(1,), h=h, c1=(2,))


def test_abs_grading_j_variant():
    a = OrbitSet.of((E, 2), side="plus")
    cls = abs_grading(a, IndexValue(0, 0), {"e": 0}, variant="J")
    assert cls.offset.value == 1  # mu' of the set


def _single_component_word(rng, m):
    word = random_braid_word(rng, m, 24)
    return BraidWord(word.m, word.letters, {"c": frozenset(range(1, m + 1))})


def test_grading_identity_reproduces_relative_index():
    """Randomized nice-representative data: the absolute classes built from
    the conormal chain differ by exactly the relative index."""
    rng = random.Random(53)
    for _ in range(60):
        # alpha-hat orbit with a shared (common-factor) part, a beta-hat
        # orbit, and a fully common orbit
        a_only = random_orbit_pool(rng, 1, prefix="a")[0]
        b_only = random_orbit_pool(rng, 1, prefix="b")[0]
        common = random_orbit_pool(rng, 1, prefix="g")[0]

        m_hat = rng.randint(1, 3)
        n_hat = rng.randint(1, 3)
        g_shared = rng.randint(0, 2)
        g_common = rng.randint(1, 2)

        za = _single_component_word(rng, m_hat)
        zb = _single_component_word(rng, n_hat)
        ia = braid_invariants(za)
        ib = braid_invariants(zb)
        w_a, eta_a = ia.w["c"], ia.eta["c"]
        w_b, eta_b = ib.w["c"], ib.eta["c"]
        w_shared_braid = rng.randint(-4, 4)
        w_common_braid = rng.randint(-4, 4)

        entries_alpha = [(a_only, m_hat)]
        entries_beta = []
        if g_shared:
            entries_alpha[0] = (a_only, m_hat + g_shared)
            entries_beta.append((a_only, g_shared))
        entries_beta.append((b_only, n_hat))
        entries_alpha.append((common, g_common))
        entries_beta.append((common, g_common))
        alpha = OrbitSet(tuple(entries_alpha), "plus")
        beta = OrbitSet(tuple(entries_beta), "minus")

        data = NiceRepData(
            (NiceRepEntry(a_only.id, w=w_a, eta=eta_a, gcf_mult=g_shared),),
            (NiceRepEntry(b_only.id, w=w_b, eta=eta_b, gcf_mult=0),),
            c_ref=rng.randint(-6, 6),
        )
        q_val = q_from_nice_rep(data)
        c_ref = data.c_ref
        eta_total = eta_a - eta_b

        # full-braid writhes: reduced braid plus the shared sub-braid plus
        # twice the winding interaction
        w_alpha = {
            a_only.id: w_a + (w_shared_braid + 2 * g_shared * eta_a if g_shared else 0),
            common.id: w_common_braid,
        }
        w_beta = {
            b_only.id: w_b,
            common.id: w_common_braid,
        }
        if g_shared:
            w_beta[a_only.id] = w_shared_braid

        p_minus = rng.randint(-10, 10)
        p_plus = p_minus + c_ref - eta_total
        i_alpha = abs_grading(alpha, IndexValue(p_plus, 0), w_alpha).offset.value
        i_beta = abs_grading(
            beta.with_side("plus"), IndexValue(p_minus, 0), w_beta
        ).offset.value
        z = RelClass(alpha, beta, c_ref=c_ref, q_ref=q_val)
        assert i_alpha - i_beta == ech_index(z)
