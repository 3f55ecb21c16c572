import random

from echidx import _kernels_py, kernels
from echidx.partitions import partitions_of

try:
    from echidx import _kernels

    HAVE_COMPILED = True
except ImportError:
    HAVE_COMPILED = False


def test_backend_reported():
    assert kernels.backend() in ("compiled", "pure")


def test_tables():
    floors = kernels.floor_table(3, 10, 5)
    assert list(floors) == [0, 0, 0, 0, 1, 1]
    prefix = kernels.prefix_sums(floors)
    assert list(prefix) == [0, 0, 0, 0, 1, 2]
    czp = kernels.cz_prefix_elliptic(3, 10, 4)
    assert list(czp) == [0, 1, 2, 3, 6]
    czh = kernels.cz_prefix_hyperbolic(2, 3)
    assert list(czh) == [0, 2, 6, 12]


def _random_case(rng):
    m_max = rng.randint(2, 9)
    parts = []
    for m in range(0, m_max + 1):
        parts.extend(partitions_of(m))
    p = rng.randrange(1, 11)
    q = rng.choice((11, 13))
    floors = kernels.floor_table(p, q, 2 * m_max)
    prefix = kernels.prefix_sums(floors)
    rho = [v // 2 for v in range(0, m_max + 1)]
    czp = kernels.cz_prefix_elliptic(p, q, 2 * m_max)
    return parts, m_max, floors, prefix, rho, czp


def test_pure_backend_self_consistency():
    rng = random.Random(4)
    parts, m_max, floors, prefix, rho, czp = _random_case(rng)
    flat, offs, ms = kernels.pack_partitions(parts)
    viol, eq = _kernels_py.ce1_sweep(flat, offs, floors, prefix)
    assert not viol
    for idx, qs in enumerate(parts):
        if not qs:
            continue
        lhs, rhs = _kernels_py.ce1_eval(qs, floors, prefix)
        assert (lhs == rhs) == (idx in eq)


def test_backends_agree():
    if not HAVE_COMPILED:
        import pytest

        pytest.skip("compiled kernel not built")
    rng = random.Random(12)
    for _ in range(10):
        parts, m_max, floors, prefix, rho, czp = _random_case(rng)
        flat, offs, ms = kernels.pack_partitions(parts)
        assert _kernels.ce1_sweep(flat, offs, floors, prefix) == _kernels_py.ce1_sweep(
            flat, offs, floors, prefix
        )
        assert _kernels.cli_sweep(
            flat, offs, ms, rho, czp, m_max, 0
        ) == _kernels_py.cli_sweep(flat, offs, ms, rho, czp, m_max, 0)
        for qs in parts[: 20]:
            if not qs:
                continue
            assert _kernels.ce1_eval(qs, floors, prefix) == _kernels_py.ce1_eval(
                qs, floors, prefix
            )
            assert _kernels.pair_max_sum(qs, qs, rho) == _kernels_py.pair_max_sum(
                qs, qs, rho
            )


def test_pack_partitions_layout():
    flat, offs, ms = kernels.pack_partitions([(2, 1), (), (3,)])
    assert list(flat) == [2, 1, 3]
    assert list(offs) == [0, 2, 2, 3]
    assert list(ms) == [3, 0, 3]
