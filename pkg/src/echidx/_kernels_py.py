"""Pure-Python fallback for the sweep kernels.

Same API as the compiled extension `echidx._kernels`; see `echidx.kernels`
for the dispatch.  Partition lists arrive flattened: `flat` holds the parts
of all partitions back to back and `offs[i]:offs[i+1]` delimits partition i.
"""

BACKEND = "pure"


def ce1_eval(qs, floors, prefix):
    """LHS and RHS of the staircase inequality for one partition.

    LHS = sum_{i,j} max(q_i*floor(q_j*theta), q_j*floor(q_i*theta));
    RHS = 2*sum_{k<=m} floor(k*theta) - sum_i floor(q_i*theta) + m - n.
    """
    n = len(qs)
    m = 0
    fsum = 0
    lhs = 0
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
    rhs = 2 * prefix[m] - fsum + m - n
    return lhs, rhs


def pair_max_sum(qs1, qs2, rho):
    """sum_{i,j} max(q1_i * rho[q2_j], q2_j * rho[q1_i])."""
    total = 0
    for qi in qs1:
        ri = rho[qi]
        for qj in qs2:
            a = qi * rho[qj]
            b = qj * ri
            total += a if a > b else b
    return total


def ce1_sweep(flat, offs, floors, prefix):
    """Check every flattened partition; return (violation, equality) indices."""
    violations = []
    equalities = []
    nparts = len(offs) - 1
    for idx in range(nparts):
        qs = flat[offs[idx] : offs[idx + 1]]
        lhs, rhs = ce1_eval(qs, floors, prefix)
        if lhs > rhs:
            violations.append(idx)
        elif lhs == rhs:
            equalities.append(idx)
    return violations, equalities


def cli_sweep(flat, offs, ms, rho, czp, m_total_max, kind_code):
    """Check the pair inequality and its strict variant over all pairs.

    Returns (pairs_checked, cli_violations, strict_form_violations,
    strictness_violations, bad_pairs) where bad_pairs lists up to 10
    offending (i, j, code) triples; code 0 = plain form fails, 1 = strict
    form fails as an inequality, 2 = equality where strictness is required.
    """
    nparts = len(offs) - 1
    pairs = 0
    viol_cli = 0
    viol_clip = 0
    viol_strict = 0
    bad = []
    for i in range(nparts):
        mi = ms[i]
        qi0, qi1 = offs[i], offs[i + 1]
        for j in range(i, nparts):
            mj = ms[j]
            if mi + mj > m_total_max:
                continue
            pairs += 1
            lhs = 0
            for a in range(qi0, qi1):
                qa = flat[a]
                ra = rho[qa]
                for b in range(offs[j], offs[j + 1]):
                    qb = flat[b]
                    x = qa * rho[qb]
                    y = qb * ra
                    lhs += x if x > y else y
            lhs *= 2
            rhs = czp[mi + mj] - czp[mi] - czp[mj]
            s = mi + mj - 1
            rhsp = czp[s if s > 0 else 0]
            if mi > 0:
                rhsp -= czp[mi - 1]
            if mj > 0:
                rhsp -= czp[mj - 1]
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
