"""Command-line frontend with JSON input/output.

Exit codes: 0 on success, 1 on input or validation errors, 2 when a
verification subcommand finds a violation or an identity check fails.
Rationals on the command line use the literal form p/q; angles are
normalized mod 1 where only the class matters.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Optional

from . import verify
from .braid import BraidWord, braid_invariants, insert_full_twist, merge_components, union_writhe
from .core import MonodromyAngle, OrbitClass, OrbitSet, RelClass, Trivialization
from .curves import (
    CurveComponent,
    CurveData,
    dot,
    index_inequality_report,
    j_union_slack,
    union_index_slack,
)
from .errors import EchidxError
from .kernels import backend
from .partitions import p_in, p_out
from .relindex import IndexValue, abs_grading, ech_index, j_indices, transform_relclass
from .cz import cz as cz_index
from .sampling import random_braid_word, random_orbit_pool, random_relclass, random_trivialization

SCHEMA_VERSION = 1


def _payload(text: str) -> str:
    """Payload arguments hold inline JSON or a file path ('@path' always
    reads a file; a bare path is read when it names an existing file)."""
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return fh.read()
    stripped = text.lstrip()
    if not stripped.startswith(("{", "[")) and os.path.exists(text):
        with open(text) as fh:
            return fh.read()
    return text


def _parse_rational(text: str):
    if "/" not in text:
        raise ValueError(f"expected p/q rational, got {text!r}")
    p_str, q_str = text.split("/", 1)
    return int(p_str), int(q_str)


def _parse_theta(text: str, k_max: int) -> MonodromyAngle:
    p, q = _parse_rational(text)
    return MonodromyAngle(p, q, k_max).normalized()


def _orbit_from_arg(text: str) -> OrbitClass:
    return OrbitClass.from_json(json.loads(_payload(text)))


def _orbit_table(doc: dict) -> dict:
    return {
        oid: OrbitClass.from_json(entry, id=oid)
        for oid, entry in doc.get("orbits", {}).items()
    }


def _orbit_set_from_doc(doc: dict, orbits: dict) -> OrbitSet:
    return OrbitSet.from_json(doc, orbits)


def _relclass_from_arg(text: str) -> RelClass:
    doc = json.loads(_payload(text))
    orbits = _orbit_table(doc)
    alpha = _orbit_set_from_doc(dict(doc["alpha"], side="plus"), orbits)
    beta = _orbit_set_from_doc(dict(doc["beta"], side="minus"), orbits)
    return RelClass(alpha, beta, int(doc.get("c_ref", 0)), int(doc.get("q_ref", 0)))


def _curve_from_doc(doc: dict) -> CurveData:
    orbits = _orbit_table(doc)
    comps = []
    for item in doc["components"]:
        ends = tuple(
            (int(e["sign"]), orbits[e["orbit"]], int(e["mult"])) for e in item["ends"]
        )
        comp = CurveComponent(
            item["key"],
            int(item.get("genus", 0)),
            int(item.get("delta", 0)),
            ends,
            c_ref=int(item.get("c_ref", 0)),
            w_ref=int(item.get("w_ref", 0)),
        )
        comps.append((comp, int(item.get("degree", 1))))
    q = {(k1, k2): int(v) for k1, k2, v in doc.get("q", [])}
    dots = {(k1, k2): int(v) for k1, k2, v in doc.get("dot", [])}
    return CurveData(tuple(comps), q, dots)


def _emit(payload: dict, args, text_lines=None) -> None:
    payload = dict(payload, schema_version=SCHEMA_VERSION)
    if args.format == "json":
        rendered = json.dumps(payload, sort_keys=True)
    else:
        rendered = "\n".join(text_lines if text_lines is not None else [str(payload)])
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rendered + "\n")
    else:
        print(rendered)


def _cmd_cz(args) -> int:
    orbit = _orbit_from_arg(args.orbit)
    tau = Trivialization.constant(args.offset)
    value = cz_index(orbit, tau, args.k)
    _emit({"command": "cz", "value": value}, args, [str(value)])
    return 0


def _cmd_partitions(args) -> int:
    orbit = _orbit_from_arg(args.orbit)
    fn = p_out if args.dir == "out" else p_in
    part, path = fn(orbit, args.m)
    payload = {"command": "partitions", "dir": args.dir, "m": args.m, "partition": list(part.parts)}
    lines = [str(part)]
    if args.emit_path and path is not None:
        payload["path"] = [list(v) for v in path.vertices]
        lines.append(" ".join(f"({x},{y})" for x, y in path.vertices))
    _emit(payload, args, lines)
    return 0


def _cmd_braid(args) -> int:
    letters = tuple((int(i), int(s)) for i, s in json.loads(_payload(args.word)))
    components = {
        name: frozenset(int(x) for x in strands)
        for name, strands in json.loads(_payload(args.components)).items()
    }
    word = BraidWord(args.m, letters, components)
    invs = braid_invariants(word)
    payload = {
        "command": "braid",
        "w": dict(sorted(invs.w.items())),
        "link": {",".join(sorted(key)): v for key, v in invs.link.items()},
        "eta": dict(sorted(invs.eta.items())),
    }
    lines = [
        "w: " + " ".join(f"{k}={v}" for k, v in sorted(invs.w.items())),
        "link: " + " ".join(f"{','.join(sorted(k))}={v}" for k, v in invs.link.items()),
        "eta: " + " ".join(f"{k}={v}" for k, v in sorted(invs.eta.items())),
    ]
    _emit(payload, args, lines)
    return 0


def _cmd_index(args) -> int:
    z = _relclass_from_arg(args.relclass)
    tau = Trivialization.constant(args.offset)
    c_val, q_val = transform_relclass(z, tau)
    if args.j:
        j = j_indices(z)
        payload = {
            "command": "index",
            "c_tau": c_val,
            "q_tau": q_val,
            "j0": j.j0,
            "j_plus": j.j_plus,
            "j_minus": j.j_minus,
        }
        lines = [f"J0 = {j.j0}", f"J+ = {j.j_plus}", f"J- = {j.j_minus}"]
    else:
        value = ech_index(z, tau)
        payload = {"command": "index", "c_tau": c_val, "q_tau": q_val, "I": value}
        lines = [f"I = {value}"]
    _emit(payload, args, lines)
    return 0


def _cmd_grade(args) -> int:
    doc = json.loads(_payload(args.orbitset))
    orbits = _orbit_table(doc)
    oset = _orbit_set_from_doc(doc, orbits)
    braid_w = {o.id: 0 for o, _ in oset}
    cls = abs_grading(
        oset,
        IndexValue(args.p_offset, args.modulus),
        braid_w,
        Trivialization.constant(args.offset),
    )
    payload = {
        "command": "grade",
        "offset": cls.offset.value,
        "modulus": cls.offset.modulus,
    }
    _emit(payload, args, [f"{cls.offset.value} (mod {cls.offset.modulus or 'Z'})"])
    return 0


def _cmd_curve(args) -> int:
    if args.curve_cmd == "report":
        data = _curve_from_doc(json.loads(_payload(args.data)))
        report = index_inequality_report(data)
        payload = {
            "command": "curve-report",
            "ind": report.ind,
            "I": report.ech,
            "delta": report.delta,
            "writhe_slack": report.writhe_slack,
            "index_slack": report.index_slack,
            "adjunction_residuals": list(report.adjunction_residuals),
            "equality_admissible": report.equality_admissible,
            "verdicts": [
                {
                    "orbit": v.orbit_id,
                    "side": v.side,
                    "ends": list(v.ends),
                    "extremal": list(v.extremal),
                    "matches": v.matches,
                }
                for v in report.verdicts
            ],
        }
        lines = [
            f"ind = {report.ind}, I = {report.ech}, delta = {report.delta}",
            f"index slack = {report.index_slack}, writhe slack = {report.writhe_slack}",
            f"equality admissible: {report.equality_admissible}",
        ]
        _emit(payload, args, lines)
        return 0
    a = _curve_from_doc(json.loads(_payload(args.a)))
    b = _curve_from_doc(json.loads(_payload(args.b)))
    slack = union_index_slack(a, b)
    j_slack = j_union_slack(a, b)
    payload = {
        "command": "curve-union",
        "dot": str(dot(a, b)),
        "index_slack": slack,
        "j0_slack": j_slack.slack,
        "E": j_slack.e_count,
        "N": j_slack.n_count,
    }
    lines = [
        f"C.C' = {dot(a, b)}",
        f"I slack = {slack}",
        f"J0 slack = {j_slack.slack} (E={j_slack.e_count}, N={j_slack.n_count})",
    ]
    _emit(payload, args, lines)
    return 0


def _thetas_arg(text: Optional[str], m_max: int, default_denoms) -> list:
    if text:
        return [_parse_theta(t, m_max) for t in text.split(",")]
    return verify.theta_grid(default_denoms, m_max)


def _cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    if args.check == "ce1":
        thetas = _thetas_arg(args.thetas, args.m_max, [11])
        report = verify.sweep_ce1(args.m_max, thetas)
    elif args.check == "cli":
        thetas = _thetas_arg(args.thetas, args.m_max, [13])
        report = verify.sweep_cli(args.m_max, verify.default_kind_grid(thetas))
    elif args.check == "cli-strict":
        thetas = _thetas_arg(args.thetas, args.m_max, [13])
        report = verify.sweep_cli_strict(args.m_max, verify.default_kind_grid(thetas))
    elif args.check == "neg-hyp":
        report = verify.sweep_neg_hyp(args.m_max)
    elif args.check == "jbound":
        thetas = _thetas_arg(args.thetas, args.m_max, [11])
        report = verify.sweep_jbound_cases(args.m_max, thetas)
    elif args.check == "huge":
        thetas = _thetas_arg(args.thetas, args.m_max, [11])
        report = verify.sweep_huge(
            args.m_max, verify.default_kind_grid(thetas), check_j_union=args.j_union
        )
    elif args.check == "tau":
        report = verify.SweepReport("tau", {"count": args.count, "seed": args.seed})
        for _ in range(args.count):
            pool = random_orbit_pool(rng, 3)
            z = random_relclass(rng, pool)
            tau = random_trivialization(rng, [o.id for o in pool])
            base_i = ech_index(z)
            base_j = j_indices(z)
            report.instances_checked += 1
            if ech_index(z, tau) != base_i or j_indices(z, tau) != base_j:
                report.violations.append(("tau", z))
    elif args.check == "braid":
        report = verify.SweepReport("braid", {"count": args.count, "seed": args.seed})
        for _ in range(args.count):
            word = random_braid_word(rng, rng.randint(1, 6))
            invs = braid_invariants(word)
            report.instances_checked += 1
            names = sorted(word.components)
            if len(names) >= 2:
                c1, c2 = names[0], names[1]
                merged = merge_components(word, c1, c2, "u")
                direct = braid_invariants(merged).w["u"]
                if direct != union_writhe(invs, c1, c2):
                    report.violations.append(("union", word))
            twisted = braid_invariants(insert_full_twist(word, True))
            before = sum(invs.w.values()) + 2 * sum(invs.link.values())
            after = sum(twisted.w.values()) + 2 * sum(twisted.link.values())
            if after - before != word.m * (word.m - 1):
                report.violations.append(("twist", word))
    else:
        raise ValueError(f"unknown verify target {args.check!r}")
    payload = report.to_json()
    lines = [
        f"{report.name}: {report.instances_checked} instances, "
        f"{len(report.violations)} violations"
    ]
    _emit(payload, args, lines)
    return 0 if report.ok else 2


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted both before and after the subcommand;
    # SUPPRESS keeps a subcommand from clobbering values parsed earlier
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the output to this file")
    common.add_argument(
        "--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized demos"
    )

    parser = argparse.ArgumentParser(
        prog="echidx",
        parents=[common],
        description="Exact index arithmetic for embedded contact homology "
        f"(kernel backend: {backend()}).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cz = sub.add_parser("cz", parents=[common], help="Conley-Zehnder index of an iterate")
    p_cz.add_argument("--orbit", required=True)
    p_cz.add_argument("--k", type=int, required=True)
    p_cz.add_argument("--offset", type=int, default=0)
    p_cz.set_defaults(func=_cmd_cz)

    p_part = sub.add_parser("partitions", parents=[common], help="incoming/outgoing partitions")
    p_part.add_argument("--orbit", required=True)
    p_part.add_argument("--m", type=int, required=True)
    p_part.add_argument("--dir", choices=("out", "in"), default="out")
    p_part.add_argument("--emit-path", action="store_true")
    p_part.set_defaults(func=_cmd_partitions)

    p_braid = sub.add_parser("braid", parents=[common], help="braid word invariants")
    p_braid.add_argument("--word", required=True)
    p_braid.add_argument("--m", type=int, required=True)
    p_braid.add_argument("--components", required=True)
    p_braid.set_defaults(func=_cmd_braid)

    p_index = sub.add_parser("index", parents=[common], help="relative index of a class")
    p_index.add_argument("--relclass", required=True)
    p_index.add_argument("--j", action="store_true")
    p_index.add_argument("--offset", type=int, default=0)
    p_index.set_defaults(func=_cmd_index)

    p_grade = sub.add_parser("grade", parents=[common], help="absolute grading torsor element")
    p_grade.add_argument("--orbitset", required=True)
    p_grade.add_argument("--modulus", type=int, default=0)
    p_grade.add_argument("--p-offset", type=int, default=0)
    p_grade.add_argument("--offset", type=int, default=0)
    p_grade.set_defaults(func=_cmd_grade)

    p_curve = sub.add_parser("curve", help="curve-level reports")
    curve_sub = p_curve.add_subparsers(dest="curve_cmd", required=True)
    p_report = curve_sub.add_parser("report", parents=[common])
    p_report.add_argument("--data", required=True)
    p_report.set_defaults(func=_cmd_curve)
    p_union = curve_sub.add_parser("union", parents=[common])
    p_union.add_argument("--a", required=True)
    p_union.add_argument("--b", required=True)
    p_union.set_defaults(func=_cmd_curve)

    p_verify = sub.add_parser("verify", parents=[common], help="exhaustive lemma sweeps")
    p_verify.add_argument(
        "check",
        choices=("ce1", "cli", "cli-strict", "neg-hyp", "jbound", "huge", "tau", "braid"),
    )
    p_verify.add_argument("--m-max", type=int, default=None)
    p_verify.add_argument("--thetas", help="comma-separated p/q list")
    p_verify.add_argument("--count", type=int, default=200)
    p_verify.add_argument(
        "--j-union",
        action="store_true",
        help="also check the J0 union inequality on the huge family "
        "(documented to fail on negative hyperbolic shared components)",
    )
    p_verify.set_defaults(func=_cmd_verify)

    return parser


_DEFAULT_M_MAX = {
    "ce1": verify.DEFAULT_CE1_M_MAX,
    "cli": verify.DEFAULT_CLI_M_MAX,
    "cli-strict": verify.DEFAULT_CLI_M_MAX,
    "neg-hyp": 10,
    "jbound": 10,
    "huge": 8,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, fallback in (("format", "text"), ("out", None), ("seed", 0)):
        if not hasattr(args, name):
            setattr(args, name, fallback)
    if getattr(args, "m_max", None) is None and getattr(args, "check", None):
        args.m_max = _DEFAULT_M_MAX.get(args.check, 10)
    try:
        return args.func(args)
    except (EchidxError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
