"""Command line front end.

Every subcommand reads exact JSON files, computes exactly, and writes
deterministic output: identical inputs give byte-identical output. Domain
errors exit with status 1, usage errors with status 2.
"""

import argparse
import json
import sys

from . import boolrel, omega, polytope, qflag, reference
from .exactmat import MatrixError, RMatrix, parse_rational


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MatrixError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixError(f"{path} is not valid JSON: {exc}") from exc


def _read_matrix(path):
    return RMatrix.from_json_dict(_load_json(path))


def _read_frame(path):
    return qflag.FlagFrame.from_json_dict(_load_json(path))


def _read_pattern(path):
    return boolrel.BoolMatrix.from_json_dict(_load_json(path))


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _print_matrix(m, out):
    out.write(_dump(m.to_json_dict()))


# -- subcommand handlers -------------------------------------------------------


def _cmd_nilcheck(args, out):
    a = _read_matrix(args.matrix)
    if args.ambient == "omega":
        cls = omega.nilpotency_class(a)
    else:
        if args.ambient == "d" and not qflag.is_doubly_stochastic(a):
            raise MatrixError("matrix is not doubly stochastic")
        cls = qflag.nilpotency_class(a)
    out.write(f"{cls}\n" if cls is not None else "not nilpotent\n")
    return 0


def _cmd_omega_count(args, out):
    out.write(f"{omega.count_max_nilpotent(args.n, args.k)}\n")
    return 0


def _cmd_omega_enumerate(args, out):
    partitions = omega.enumerate_partitions(args.n, args.k)
    if args.json:
        payload = {
            "n": args.n,
            "k": args.k,
            "count": len(partitions),
            "partitions": [[list(b) for b in p.blocks] for p in partitions],
        }
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(_dump(payload))
        out.write(f"wrote {len(partitions)} partitions to {args.json}\n")
    else:
        for p in partitions:
            out.write(f"{p}\n")
    return 0


def _cmd_omega_pattern(args, out):
    if (args.order is None) == (args.partition is None):
        raise MatrixError("give exactly one of --order or --partition")
    if args.order is not None:
        pattern = omega.pattern_from_order(omega.LinearOrder.parse(args.order))
    else:
        pattern = omega.pattern_from_partition(omega.OrderedPartition.parse(args.partition))
    out.write(_dump(pattern.to_json_dict()))
    return 0


def _cmd_omega_member(args, out):
    a = _read_matrix(args.matrix)
    pattern = _read_pattern(args.pattern)
    out.write("true\n" if omega.membership(a, pattern, args.kind) else "false\n")
    return 0


def _cmd_q_iso(args, out):
    frame = _read_frame(args.frame)
    a = _read_matrix(args.matrix)
    if args.inverse:
        _print_matrix(qflag.iso_backward(a, frame), out)
    else:
        _print_matrix(qflag.iso_forward(a, frame), out)
    return 0


def _cmd_q_member(args, out):
    frame = _read_frame(args.frame)
    a = _read_matrix(args.matrix)
    result = qflag.flag_membership(a, frame)
    if args.doubly_stochastic:
        result = result and qflag.is_doubly_stochastic(a)
    out.write("true\n" if result else "false\n")
    return 0


def _cmd_q_nilclass(args, out):
    a = _read_matrix(args.matrix)
    cls = qflag.nilpotency_class(a)
    out.write(f"{cls}\n" if cls is not None else "not nilpotent\n")
    return 0


def _cmd_q_make_nilpotent(args, out):
    frame = _read_frame(args.frame)
    b = _read_matrix(args.b)
    alpha = parse_rational(args.alpha) if args.alpha is not None else None
    _print_matrix(qflag.make_stochastic_nilpotent(frame, b, alpha), out)
    return 0


def _cmd_polytope_build(args, out):
    frame = _read_frame(args.frame)
    h = polytope.build_h_polytope(frame)
    v = polytope.enumerate_vertices(h)
    out.write(f"d = {h.d}\n")
    out.write(f"inequalities = {len(h.inequalities)}\n")
    out.write(f"vertices = {len(v.vertices)}\n")
    out.write(f"bounded = {'true' if polytope.is_bounded(h) else 'false'}\n")
    if args.census:
        census = polytope.facet_census(h, v)
        body = ", ".join(f"{size}: {count}" for size, count in sorted(census.items()))
        out.write(f"facet census = {{{body}}}\n")
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(polytope.export_polytope(v, h, "json"))
        out.write(f"wrote {args.out}\n")
    if args.off:
        with open(args.off, "wb") as fh:
            fh.write(polytope.export_polytope(v, h, "off"))
        out.write(f"wrote {args.off}\n")
    return 0


def _cmd_verify(args, out):
    try:
        ok, checks = reference.verify(args.dataset)
    except KeyError as exc:
        raise MatrixError(str(exc)) from exc
    if args.json:
        payload = {
            "dataset": args.dataset,
            "ok": ok,
            "checks": [
                {
                    "name": c["name"],
                    "ok": c["ok"],
                    "detail": c["detail"],
                    "diff": c["diff"],
                }
                for c in checks
            ],
        }
        out.write(_dump(payload))
    else:
        for c in checks:
            status = "PASS" if c["ok"] else "FAIL"
            out.write(f"{status} {c['name']}: {c['detail']}\n")
            if not c["ok"] and c["diff"]:
                out.write(f"     {c['diff']}\n")
        out.write("all checks passed\n" if ok else "verification FAILED\n")
    return 0 if ok else 1


# -- parser --------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="nilmat",
        description=(
            "Exact tools for nilpotent subsemigroups of nonnegative and "
            "doubly stochastic matrix semigroups."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nilcheck", help="nilpotency class of a matrix in a chosen ambient")
    p.add_argument("--matrix", required=True)
    p.add_argument(
        "--ambient",
        required=True,
        choices=["omega", "q", "d"],
        help="which zero element applies: the zero matrix (omega) or the flat matrix (q, d)",
    )
    p.set_defaults(func=_cmd_nilcheck)

    og = sub.add_parser("omega", help="patterns and counts in the nonnegative ambient")
    osub = og.add_subparsers(dest="subcommand", required=True)

    p = osub.add_parser("count", help="number of maximal nilpotent subsemigroups of class k")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_omega_count)

    p = osub.add_parser("enumerate", help="ordered partitions of {1..n} into k blocks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--json", help="write a JSON file instead of text lines")
    p.set_defaults(func=_cmd_omega_enumerate)

    p = osub.add_parser("pattern", help="support pattern of an order or ordered partition")
    p.add_argument("--order", help='linear order like "2,3,1"')
    p.add_argument("--partition", help='ordered partition like "1,3|2"')
    p.set_defaults(func=_cmd_omega_pattern)

    p = osub.add_parser("member", help="membership of a matrix in a pattern subsemigroup")
    p.add_argument("--pattern", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--kind", required=True, choices=list(omega.KINDS))
    p.set_defaults(func=_cmd_omega_member)

    qg = sub.add_parser("q", help="the unit row/column sum ambient")
    qsub = qg.add_subparsers(dest="subcommand", required=True)

    p = qsub.add_parser("iso", help="reduce by a frame, or embed with --inverse")
    p.add_argument("--frame", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=_cmd_q_iso)

    p = qsub.add_parser("member", help="membership in a flag's nilpotent subsemigroup")
    p.add_argument("--frame", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--doubly-stochastic", action="store_true")
    p.set_defaults(func=_cmd_q_member)

    p = qsub.add_parser("nilclass", help="nilpotency class relative to the flat matrix")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=_cmd_q_nilclass)

    p = qsub.add_parser("make-nilpotent", help="doubly stochastic nilpotent from a reduced matrix")
    p.add_argument("--frame", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--alpha", help='exact rational like "1/16"')
    p.set_defaults(func=_cmd_q_make_nilpotent)

    pg = sub.add_parser("polytope", help="doubly stochastic polytopes of complete flags")
    psub = pg.add_subparsers(dest="subcommand", required=True)

    p = psub.add_parser("build", help="inequalities, vertices, census, exports")
    p.add_argument("--frame", required=True)
    p.add_argument("--out", help="write exact JSON here")
    p.add_argument("--off", help="write an approximate OFF mesh here")
    p.add_argument("--census", action="store_true")
    p.set_defaults(func=_cmd_polytope_build)

    p = sub.add_parser("verify", help="recompute a bundled dataset and diff")
    p.add_argument("dataset", choices=sorted(reference.DATASETS))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except (MatrixError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
