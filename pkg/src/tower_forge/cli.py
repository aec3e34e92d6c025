"""Command-line front end.

Exit codes: 0 success, 1 usage or validation error, 2 failed mathematical
cross-check.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import legendre as lg
from . import reports as rp
from .monodromy import write_orbits_csv
from .proj_space import ProjPoint, write_space_csv
from .residue_ring import Modulus


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def _fmt_summary(s: dict) -> str:
    return "{" + ", ".join(f"{k}:{v}" for k, v in s.items()) + "}"


# -- subcommands: each returns (text, exit_code) -----------------------------


def cmd_projspace(args):
    payload = rp.projspace_payload(args.ell, args.level, args.rank, with_points=args.list)
    if args.format == "json":
        return _dump_json(payload), 0
    if args.format == "csv":
        if "points" not in payload:
            payload = rp.projspace_payload(args.ell, args.level, args.rank, with_points=True)
        import io

        buf = io.StringIO()
        m = Modulus(args.ell, args.level)
        write_space_csv([ProjPoint(tuple(c), m) for c in payload["points"]], buf)
        return buf.getvalue(), 0
    lines = [str(payload["cardinality"])]
    for c in payload.get("points", []):
        lines.append(" ".join(map(str, c)))
    return "\n".join(lines) + "\n", 0


def cmd_orbits(args):
    dec, payload = rp.orbits_payload(args.ell, args.level, args.matrix)
    code = 2 if payload["matches_lemma"] is False else 0
    if args.format == "json":
        return _dump_json(payload), code
    if args.format == "csv":
        import io

        buf = io.StringIO()
        write_orbits_csv(dec, buf)
        return buf.getvalue(), code
    summary = {int(k): v for k, v in payload["summary"].items()}
    lines = [
        f"ell={args.ell} level={args.level} matrix={args.matrix} points={sum(k * v for k, v in summary.items())}",
        rp.table(["length", "multiplicity"], summary.items()),
        f"summary: {_fmt_summary(summary)}",
    ]
    if payload["closed_form"] is not None:
        lines.append(f"closed form: {_fmt_summary(payload['closed_form'])}")
        lines.append(f"matches Lemma: {'yes' if payload['matches_lemma'] else 'NO'}")
    elif args.level % 2:
        lines.append("closed form: n odd, not covered")
    else:
        lines.append("closed form: only for the legendre matrix")
    return "\n".join(lines) + "\n", code


def cmd_tower(args):
    rep, payload = rp.tower_payload(args.p, args.ell, args.max_level)
    if args.format == "json":
        return _dump_json(payload), 0
    headers = ["n", "degree", "genus", "points_lower_bound", "ratio", "cross_checked"]
    rows = [
        [lv.n, lv.degree, lv.genus, lv.points_lower_bound, rp.frac(lv.ratio), "yes" if lv.cross_checked else "no"]
        for lv in rep.levels
    ]
    if args.format == "csv":
        return rp.to_csv(headers, rows), 0
    lines = [
        f"Legendre tower over F_{args.p}^2, ell={args.ell}",
        rp.table(headers, rows),
        f"limit of ratio: {rep.limit}",
        f"Drinfeld-Vladut bound sqrt(q)-1: {payload['dv_bound']}",
        f"optimal: {'true' if rep.optimal else 'false'}",
    ]
    return "\n".join(lines) + "\n", 0


def _cache(args):
    return lg.PointCountCache.from_env()


def cmd_curve(args):
    payload = rp.curve_payload(args.p, args.a, cache=_cache(args), verify=args.verify)
    if args.format == "json":
        return _dump_json(payload), 0
    rows = [[k, "null" if v is None else (str(v).lower() if isinstance(v, bool) else
             (f"({v[0]},{v[1]})" if isinstance(v, list) else v))] for k, v in payload.items()]
    if args.format == "csv":
        return rp.to_csv(["field", "value"], rows), 0
    return "\n".join(f"{k}: {v}" for k, v in rows) + "\n", 0


def cmd_census(args):
    max_p = args.max_p_override or lg.CENSUS_MAX_P
    cache = _cache(args)
    if cache is not None and args.verify:
        F = lg.make_quad_ext(args.p)
        for a in F.elements():
            if not (a == 0 or a == 1):
                lg.count_points(lg.LegendreCurve(args.p, a), cache, verify=True)
    payload = rp.census_payload(args.p, max_p=max_p, threads=args.threads, cache=cache)
    if args.format == "json":
        return _dump_json(payload), 0
    headers = ["a", "N", "a_q", "strong", "c", "prop31", "group"]
    rows = [
        [r["a"], r["point_count"], r["trace"], str(r["strongly_supersingular"]).lower(),
         "" if r["scalar"] is None else r["scalar"], r["prop31"],
         "" if r["group"] is None else f"({r['group'][0]},{r['group'][1]})"]
        for r in payload["rows"]
    ]
    if args.format == "csv":
        return rp.to_csv(headers, rows), 0
    lines = [
        f"supersingular Legendre parameters over F_{args.p}^2",
        rp.table(headers, rows),
        f"strongly supersingular: {len(payload['strongly_supersingular'])} of {payload['parameters']} parameters",
        f"Hasse roots: {len(payload['hasse_roots'])}",
        f"sets agree: {'yes' if payload['sets_agree'] else 'NO'}",
    ]
    return "\n".join(lines) + "\n", 0


def cmd_hasse(args):
    payload = rp.hasse_payload(args.p)
    if args.format == "json":
        return _dump_json(payload), 0
    if args.format == "csv":
        return rp.to_csv(["root"], [[r] for r in payload["roots"]]), 0
    lines = [
        f"H(t) coefficients (low to high): {','.join(map(str, payload['coefficients']))}",
        f"roots in F_{args.p}^2: {' '.join(payload['roots'])}",
        f"root count: {payload['root_count']} (expected {payload['expected']})",
        f"separable: {str(payload['separable']).lower()}",
    ]
    return "\n".join(lines) + "\n", 0


def cmd_replay(args):
    payload = rp.replay_payload(args.p, args.ell)
    code = 0 if payload["all_match"] else 2
    if args.format == "json":
        return _dump_json(payload), code
    headers = ["quantity", "formula", "computed", "match"]
    rows = [[r["quantity"], r["formula"], r["computed"], "yes" if r["match"] else "NO"] for r in payload["rows"]]
    if args.format == "csv":
        return rp.to_csv(headers, rows), code
    text = f"Legendre tower replay, p={args.p}, ell={args.ell}\n" + rp.table(headers, rows) + "\n"
    return text, code


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--threads", type=int, default=1)

    parser = _Parser(prog="tower-forge", description="Towers of curves from projectivised torsion.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("projspace", parents=[common], help="cardinality and points of P_n")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--rank", type=int, default=2)
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_projspace)

    s = sub.add_parser("orbits", parents=[common], help="orbit decomposition of a monodromy matrix")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--matrix", default="legendre", help='"legendre" or row-major entries "a,b,c,d"')
    s.set_defaults(func=cmd_orbits)

    s = sub.add_parser("tower", parents=[common], help="level reports and optimality verdict")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--max-level", type=int, required=True)
    s.set_defaults(func=cmd_tower)

    s = sub.add_parser("curve", parents=[common], help="Weil data of one Legendre curve")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--a", required=True, help='parameter as "c0+c1*w"')
    s.add_argument("--verify", action="store_true", help="recount cached point counts")
    s.set_defaults(func=cmd_curve)

    s = sub.add_parser("census", parents=[common], help="supersingular census over F_{p^2}")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--max-p-override", type=int, default=None)
    s.add_argument("--verify", action="store_true", help="recount cached point counts")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("hasse", parents=[common], help="Hasse polynomial roots and separability")
    s.add_argument("--p", type=int, required=True)
    s.set_defaults(func=cmd_hasse)

    s = sub.add_parser("replay-paper", parents=[common], help="closed forms vs brute force, p=7, ell=5")
    s.add_argument("--p", type=int, default=7)
    s.add_argument("--ell", type=int, default=5)
    s.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        text, code = args.func(args)
    except UsageError as e:
        print(f"tower-forge: error: {e}", file=sys.stderr)
        return 1
    except AssertionError as e:
        print(f"tower-forge: cross-check failed: {e}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as e:
        print(f"tower-forge: error: {e}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
