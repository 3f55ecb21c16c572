# cython: language_level=3
"""Compiled sweep kernels; same API as echidx._kernels_py."""

from array import array as _array

BACKEND = "compiled"


def ce1_eval(qs, floors, prefix):
    """LHS and RHS of the staircase inequality for one partition."""
    cdef Py_ssize_t n = len(qs)
    cdef Py_ssize_t i, j
    cdef long long qi, qj, fi, a, b
    cdef long long m = 0, fsum = 0, lhs = 0
    for i in range(n):
        qi = qs[i]
        fi = floors[qi]
        m += qi
        fsum += fi
        lhs += qi * fi
        for j in range(i + 1, n):
            qj = qs[j]
            a = qi * floors[qj]
            b = qj * fi
            lhs += 2 * (a if a > b else b)
    cdef long long rhs = 2 * prefix[m] - fsum + m - n
    return lhs, rhs


def pair_max_sum(qs1, qs2, rho):
    """sum_{i,j} max(q1_i * rho[q2_j], q2_j * rho[q1_i])."""
    cdef Py_ssize_t n1 = len(qs1), n2 = len(qs2)
    cdef Py_ssize_t i, j
    cdef long long qi, qj, ri, a, b, total = 0
    for i in range(n1):
        qi = qs1[i]
        ri = rho[qi]
        for j in range(n2):
            qj = qs2[j]
            a = qi * rho[qj]
            b = qj * ri
            total += a if a > b else b
    return total


def ce1_sweep(long long[:] flat, long long[:] offs, long long[:] floors, long long[:] prefix):
    """Check every flattened partition; return (violation, equality) indices."""
    cdef Py_ssize_t nparts = offs.shape[0] - 1
    cdef Py_ssize_t idx, i, j, a0, a1
    cdef long long qi, qj, fi, x, y, m, fsum, lhs, rhs
    violations = []
    equalities = []
    for idx in range(nparts):
        a0 = <Py_ssize_t> offs[idx]
        a1 = <Py_ssize_t> offs[idx + 1]
        m = 0
        fsum = 0
        lhs = 0
        for i in range(a0, a1):
            qi = flat[i]
            fi = floors[<Py_ssize_t> qi]
            m += qi
            fsum += fi
            lhs += qi * fi
            for j in range(i + 1, a1):
                qj = flat[j]
                x = qi * floors[<Py_ssize_t> qj]
                y = qj * fi
                lhs += 2 * (x if x > y else y)
        rhs = 2 * prefix[<Py_ssize_t> m] - fsum + m - (a1 - a0)
        if lhs > rhs:
            violations.append(idx)
        elif lhs == rhs:
            equalities.append(idx)
    return violations, equalities


def cli_sweep(long long[:] flat, long long[:] offs, long long[:] ms,
              rho_seq, czp_seq, long long m_total_max, int kind_code):
    """Pair inequality and strict variant over all partition pairs."""
    cdef Py_ssize_t nparts = offs.shape[0] - 1
    cdef Py_ssize_t i, j, a, b
    cdef long long mi, mj, qa, qb, ra, x, y, lhs, rhs, rhsp, s
    cdef long long pairs = 0, viol_cli = 0, viol_clip = 0, viol_strict = 0
    cdef bint strict
    cdef long long[::1] rho
    cdef long long[::1] czp
    rho_arr = _array("q", rho_seq)
    czp_arr = _array("q", czp_seq)
    rho = rho_arr
    czp = czp_arr
    bad = []
    for i in range(nparts):
        mi = ms[i]
        for j in range(i, nparts):
            mj = ms[j]
            if mi + mj > m_total_max:
                continue
            pairs += 1
            lhs = 0
            for a in range(<Py_ssize_t> offs[i], <Py_ssize_t> offs[i + 1]):
                qa = flat[a]
                ra = rho[<Py_ssize_t> qa]
                for b in range(<Py_ssize_t> offs[j], <Py_ssize_t> offs[j + 1]):
                    qb = flat[b]
                    x = qa * rho[<Py_ssize_t> qb]
                    y = qb * ra
                    lhs += x if x > y else y
            lhs *= 2
            rhs = czp[<Py_ssize_t> (mi + mj)] - czp[<Py_ssize_t> mi] - czp[<Py_ssize_t> mj]
            s = mi + mj - 1
            rhsp = czp[<Py_ssize_t> (s if s > 0 else 0)]
            if mi > 0:
                rhsp -= czp[<Py_ssize_t> (mi - 1)]
            if mj > 0:
                rhsp -= czp[<Py_ssize_t> (mj - 1)]
            if lhs > rhs:
                viol_cli += 1
                if len(bad) < 10:
                    bad.append((i, j, 0))
            if lhs > rhsp:
                viol_clip += 1
                if len(bad) < 10:
                    bad.append((i, j, 1))
            elif lhs == rhsp:
                if kind_code == 0:
                    strict = mi > 0 and mj > 0
                elif kind_code == 2:
                    strict = mi % 2 == 1 and mj % 2 == 1
                else:
                    strict = False
                if strict:
                    viol_strict += 1
                    if len(bad) < 10:
                        bad.append((i, j, 2))
    return pairs, viol_cli, viol_clip, viol_strict, bad
