"""Command-line front end.

Exit codes: 0 ok, 1 ``--assert`` headline false, 2 usage or parse error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import conditions, core, exact_lp, generators, polytope, solution
from .errors import CapExceeded, ClutterError

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_count(text: str) -> int:
    """Accept ``1000000``, ``10^6`` or ``1e6``."""
    text = text.strip()
    m = re.fullmatch(r"(\d+)\^(\d+)", text)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    try:
        v = float(text) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a count: {text!r}") from None
    if v < 0 or v != int(v):
        raise argparse.ArgumentTypeError(f"not a count: {text!r}")
    return int(v)


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _load(path: str, max_elements: int | None) -> core.Clutter:
    C = core.loads(_read(path))
    if max_elements is not None and C.n > max_elements:
        raise CapExceeded(f"{C.n} elements exceeds --max-elements {max_elements}")
    return C


def _fmt(C: core.Clutter, masks) -> str:
    return "{" + ", ".join(core.fmt_set(C.labels(m)) for m in masks) + "}"


def _num(v):
    return "inf" if v == core.INF else str(v)


# --- commands ------------------------------------------------------------------------


def cmd_generate(args):
    kind = args.kind
    params = args.params
    if kind in ("q6", "fano") and params:
        raise UsageError(f"{kind} takes no parameters")
    if kind == "q6":
        C = generators.q6()
    elif kind == "fano":
        C = generators.fano()
    elif kind in ("pg", "ag"):
        if len(params) != 1 or not params[0].isdigit():
            raise UsageError(f"{kind} needs one integer parameter q")
        q = int(params[0])
        C = generators.projective_plane(q) if kind == "pg" else generators.affine_plane(q)
    elif kind == "vertex-cut":
        if len(params) != 1:
            raise UsageError("vertex-cut needs a graph file")
        C = generators.vertex_cut_clutter(generators.parse_graph(_read(params[0])))
    else:
        raise UsageError(f"unknown kind {kind}")
    text = core.dump_clt(C)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return None


def cmd_analyze(args):
    C = _load(args.file, args.max_elements)
    core._require_nondegenerate(C)
    minb = core.min_transversals(C)
    ideal, frac = polytope.is_ideal(C)
    data = {
        "bn": int(core.blocking_number(C)),
        "pn": int(core.packing_number(C)),
        "fpn": str(exact_lp.fpn(C)),
        "packs": core.packs(C),
        "ideal": ideal,
        "fractional_vertex": None if ideal else [str(v) for v in frac],
        "mtc": core.is_minimum_transversal_covered(C),
        "tilde": [list(s) for s in core.tilde(C).edge_sets()],
        "minb": [list(C.labels(m)) for m in minb],
        "blocker_size": len(core.blocker_masks(C.edges)),
        "unique_max_packing": exact_lp.is_unique_max_packing(C),
    }
    text = [
        f"bn={data['bn']} pn={data['pn']} fpn={data['fpn']}",
        f"packs={_b(data['packs'])} ideal={_b(ideal)} mtc={_b(data['mtc'])}",
        f"tilde={core.tilde(C)}",
        f"minb={_fmt(C, minb)}",
        f"blocker_size={data['blocker_size']}",
        f"unique_max_packing={_b(data['unique_max_packing'])}",
    ]
    if not ideal:
        text.append("fractional_vertex=(" + ", ".join(data["fractional_vertex"]) + ")")
    return data, text, None


def _b(v) -> str:
    return "true" if v else "false"


def cmd_check_precore(args):
    C = _load(args.file, args.max_elements)
    r = conditions.is_precore(C)
    d = r.to_dict()
    text = [f"{k}={_b(v) if isinstance(v, bool) else v}" for k, v in d.items() if k != "notes"]
    text += [f"note: {n}" for n in r.notes]
    return d, text, r.is_precore


def cmd_check_solution(args):
    C = _load(args.cfile, args.max_elements)
    D = _load(args.dfile, args.max_elements)
    r = solution.check_solution(C, D)
    d = r.to_dict()
    text = [f"{k}={_b(d[k])}" for k in ("tilde_matches", "ideal", "mnp", "im", "if", "h", "b")]
    text += [f"witness {k}: {json.dumps(v, sort_keys=True)}" for k, v in sorted(r.witnesses.items())]
    return d, text, r.all_pass()


def cmd_search(args):
    C = _load(args.file, args.max_elements)
    limits = solution.SearchLimits(
        max_extra_edges=args.max_extra_edges,
        max_edge_size=args.max_edge_size,
        node_cap=args.node_cap,
        time_cap=args.time_cap_secs,
        require_mnp=args.require_mnp,
    )
    out = solution.search_solutions(C, limits)
    d = out.to_dict()
    d["limits"] = {
        "max_extra_edges": limits.max_extra_edges, "max_edge_size": limits.max_edge_size,
        "node_cap": limits.node_cap, "time_cap": limits.time_cap,
        "require_mnp": limits.require_mnp,
    }
    text = [f"status={out.status.value}", f"nodes_explored={out.nodes_explored}",
            f"pool_size={out.pool_size}"]
    text += [f"pruned[{k}]={v}" for k, v in sorted(out.prune_stats.items())]
    if out.found is not None:
        text.append(f"found={out.found}")
    return d, text, out.status is solution.Status.FOUND


def cmd_obstruction(args):
    C = _load(args.file, args.max_elements)
    res = solution.affine_obstruction(C, all_triples=args.all_triples)
    reports = res if isinstance(res, list) else [res]
    ok = all(r.obstruction_verified for r in reports)
    if isinstance(res, list):
        d = {"obstruction_verified": ok, "reports": [r.to_dict() for r in reports]}
    else:
        d = res.to_dict()
    text = [f"triples_checked={len(reports)}"]
    r = reports[0]
    text += [
        f"triple={[core.fmt_set(t) for t in r.triple]}",
        f"x={r.x} y={r.y} z={r.z}",
        f"bn(C[X])={r.bn_restriction}",
        f"components={len(r.components)}",
        f"candidates={len(r.candidates)}",
        f"xyz_meets_each_minb_at_most_once={_b(r.xyz_meets_each_minb_at_most_once)}",
        f"xyz_meets_each_minb_exactly_once={_b(r.xyz_meets_each_minb_exactly_once)}",
        f"obstruction_verified={_b(ok)}",
    ]
    for rep in reports:
        text += [f"failure: {f}" for f in rep.failures]
    return d, text, ok


# --- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--assert", dest="assert_", action="store_true",
                        help="exit 1 when the headline result is false")
    common.add_argument("--max-elements", type=int, default=None,
                        help="refuse inputs with more elements than this")

    p = argparse.ArgumentParser(prog="clutterkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write an example clutter in .clt format")
    g.add_argument("kind", choices=["q6", "fano", "pg", "ag", "vertex-cut"])
    g.add_argument("params", nargs="*")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", parents=[common])
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check-precore", parents=[common])
    c.add_argument("file")
    c.set_defaults(func=cmd_check_precore)

    s = sub.add_parser("check-solution", parents=[common])
    s.add_argument("cfile")
    s.add_argument("dfile")
    s.set_defaults(func=cmd_check_solution)

    r = sub.add_parser("search", parents=[common])
    r.add_argument("file")
    mnp = r.add_mutually_exclusive_group()
    mnp.add_argument("--require-mnp", dest="require_mnp", action="store_true", default=True)
    mnp.add_argument("--no-require-mnp", dest="require_mnp", action="store_false")
    r.add_argument("--max-extra-edges", type=int, default=2)
    r.add_argument("--max-edge-size", type=int, default=None)
    r.add_argument("--node-cap", type=parse_count, default=10**6)
    r.add_argument("--time-cap-secs", type=float, default=None)
    r.set_defaults(func=cmd_search)

    o = sub.add_parser("obstruction", parents=[common])
    o.add_argument("file")
    o.add_argument("--all-triples", action="store_true")
    o.set_defaults(func=cmd_obstruction)
    return p


def _emit(args, command, data, text):
    if getattr(args, "json", False):
        payload = {"schema_version": SCHEMA_VERSION, "command": command, "result": data}
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n")
    else:
        for line in text:
            print(line)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        res = args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ClutterError, UsageError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "generate":
        return EXIT_OK
    data, text, headline = res
    _emit(args, args.command, data, text)
    if getattr(args, "assert_", False) and headline is False:
        return EXIT_FALSE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
