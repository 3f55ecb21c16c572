import pytest
from hypothesis import given, strategies as st

from echidx.core import (
    HomologyModel,
    OrbitClass,
    OrbitSet,
    Trivialization,
    divide_common_factor,
    validate_angle,
)
from echidx.errors import HorizonExceeded, IntegerMultiple, MissingOffset, NonCoprime


def test_validate_angle_examples():
    a = validate_angle(3, 10, 9)
    assert (a.p, a.q, a.k_max) == (3, 10, 9)
    with pytest.raises(IntegerMultiple) as exc:
        validate_angle(1, 2, 3)
    assert exc.value.k == 2
    # horizon 50 scan for 7/97: no multiple of 97 below 51
    a2 = validate_angle(7, 97, 50)
    assert all(k * 7 % 97 != 0 for k in range(1, 51))
    assert a2.floor_mult(50) == (50 * 7) // 97


def test_validate_angle_noncoprime():
    with pytest.raises(NonCoprime):
        validate_angle(2, 4, 3)
    with pytest.raises(NonCoprime):
        validate_angle(0, 5, 3)


@given(st.integers(-30, 30), st.integers(1, 30), st.integers(1, 20))
def test_validate_angle_iff_direct_scan(p, q, k_max):
    """Succeeds exactly when no k <= k_max makes k*p a multiple of q."""
    import math

    should_fail = math.gcd(abs(p), q) != 1 or any(
        (k * p) % q == 0 for k in range(1, k_max + 1)
    )
    if should_fail:
        with pytest.raises((NonCoprime, IntegerMultiple)):
            validate_angle(p, q, k_max)
    else:
        validate_angle(p, q, k_max)


def test_floor_ceil_and_horizon():
    a = validate_angle(3, 10, 9)
    assert a.floor_mult(4) == 1
    assert a.ceil_mult(4) == 2
    with pytest.raises(HorizonExceeded):
        a.floor_mult(10)
    assert a.shifted(1).p == -7
    assert a.negated().floor_mult(3) == -1


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_trivialization_offsets_compose_additively(d1, d2):
    tau = Trivialization({"a": 2}, default=0)
    combined = tau.shifted(d1).shifted(d2)
    direct = tau.shifted(d1 + d2)
    assert combined.offset_of("a") == direct.offset_of("a")
    assert combined.offset_of("other") == direct.offset_of("other")


def test_trivialization_missing_offset():
    tau = Trivialization({"a": 1})
    assert tau.offset_of("a") == 1
    with pytest.raises(MissingOffset):
        tau.offset_of("b")
    assert Trivialization.reference().offset_of("anything") == 0


def test_orbit_class_parity_validation():
    with pytest.raises(ValueError):
        OrbitClass.positive_hyperbolic(3)
    with pytest.raises(ValueError):
        OrbitClass.negative_hyperbolic(2)
    OrbitClass.positive_hyperbolic(0)
    OrbitClass.negative_hyperbolic(-1)


def test_orbit_json_round_trip():
    orbits = [
        OrbitClass.elliptic(3, 10, 9, id="e"),
        OrbitClass.positive_hyperbolic(2, id="p"),
        OrbitClass.negative_hyperbolic(1, id="n"),
    ]
    for o in orbits:
        assert OrbitClass.from_json(o.to_json(), id=o.id) == o
    assert OrbitClass.from_json({"kind": "elliptic", "p": 3, "q": 10, "k_max": 9}).id == "a"


def test_orbit_set_validation_and_json():
    e = OrbitClass.elliptic(3, 10, 9, id="a")
    s = OrbitSet.of((e, 2), side="plus")
    assert s.to_json() == {"side": "plus", "entries": [{"orbit": "a", "mult": 2}]}
    assert OrbitSet.from_json(s.to_json(), {"a": e}) == s
    with pytest.raises(ValueError):
        OrbitSet.of((e, 0))
    with pytest.raises(ValueError):
        OrbitSet.of((e, 1), (e, 2))


def test_orbit_set_product_adds_multiplicities():
    e = OrbitClass.elliptic(3, 10, 9, id="a")
    h = OrbitClass.positive_hyperbolic(2, id="b")
    s1 = OrbitSet.of((e, 2), side="plus")
    s2 = OrbitSet.of((e, 1), (h, 3), side="plus")
    prod = s1.product(s2)
    assert prod.multiplicity_of("a") == 3
    assert prod.multiplicity_of("b") == 3


def test_divide_common_factor():
    e = OrbitClass.elliptic(3, 10, 9, id="a")
    h = OrbitClass.positive_hyperbolic(2, id="b")
    alpha = OrbitSet.of((e, 3), (h, 1), side="plus")
    beta = OrbitSet.of((e, 2), side="minus")
    a_hat, b_hat, gcf = divide_common_factor(alpha, beta)
    assert a_hat.multiplicity_of("a") == 1 and a_hat.multiplicity_of("b") == 1
    assert b_hat.multiplicity_of("a") == 0 and len(b_hat) == 0
    assert gcf.multiplicity_of("a") == 2


def test_homology_model_reduce():
    h = HomologyModel((0, 4, 1))
    assert h.reduce((5, 6, 7)) == (5, 2, 0)
    assert h.add((1, 3, 0), (2, 3, 0)) == (3, 2, 0)
    with pytest.raises(ValueError):
        h.reduce((1, 2))
