"""Command-line entry point: ``btgrowth <command> ...``.

Exit codes: 0 success, 1 usage or input error, 2 certification failure,
3 no witness found.
"""
from __future__ import annotations

import argparse
import sys

from . import bt_tree, growth, jsonio, pingpong, witness
from .matgroup import evaluate_word
from .valued_field import FieldMismatch

EXIT_OK, EXIT_INPUT, EXIT_COLLISION, EXIT_NO_WITNESS = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_common(p, generators=True):
    if generators:
        p.add_argument("--generators", required=True, metavar="FILE",
                       help="generator file (JSON, schema 1)")
    p.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="btgrowth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("growth", help="exact Cayley ball sizes")
    _add_common(p)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--projective", action="store_true", help="count in PGL_2")
    p.add_argument("--max-radius", type=int, default=growth.DEFAULT_MAX_RADIUS)

    p = sub.add_parser("witness", help="search a free-semigroup pair of length <= 6")
    _add_common(p)
    p.add_argument("--valuation", help='JSON, e.g. \'{"kind":"p-adic","p":2}\' or a prime')
    p.add_argument("--depth", type=int, default=pingpong.DEFAULT_DEPTH)

    p = sub.add_parser("classify", help="per-valuation classification")
    _add_common(p)
    p.add_argument("--depth", type=int, default=pingpong.DEFAULT_DEPTH)
    p.add_argument("--traces", type=int, metavar="R", help="add trace diagnostics up to radius R")

    p = sub.add_parser("certify-free", help="brute-force free semigroup check")
    _add_common(p)
    p.add_argument("--word-a", required=True)
    p.add_argument("--word-b", required=True)
    p.add_argument("--depth", type=int, default=pingpong.DEFAULT_DEPTH)
    p.add_argument("--gl", action="store_true", help="compare in GL_2 instead of PGL_2")

    p = sub.add_parser("tree", help="Bruhat-Tits tree queries")
    _add_common(p, generators=False)
    p.add_argument("query", choices=("distance", "geodesic", "translation-length", "axis",
                                     "bridge"))
    p.add_argument("--valuation", required=True)
    p.add_argument("--a", required=True, metavar="MATRIX", help="JSON matrix")
    p.add_argument("--b", metavar="MATRIX", help="second JSON matrix")

    p = sub.add_parser("subgroup-gens", help="generators of a finite-index subgroup")
    _add_common(p)
    p.add_argument("--mod", type=int, required=True, dest="modulus")
    p.add_argument("--subgroup", default="kernel",
                   help='"kernel" or a JSON list of matrices mod q')
    p.add_argument("--method", choices=("auto", "enumerate", "schreier"), default="auto")
    return parser


def _valuation(text):
    return jsonio.parse_valuation(jsonio.loads_located(text, "--valuation"))


def _text(obj, indent="") -> str:
    lines = []
    for k in sorted(obj):
        v = obj[k]
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_text(v, indent + "  "))
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def cmd_growth(args, S):
    stats = growth.ball_sizes(S, args.radius, "PGL" if args.projective else "GL",
                              max_radius=args.max_radius)
    out = jsonio.ball_stats_to_json(stats)
    if args.format == "text":
        rates = ("-",) + stats.rate_estimates
        rows = [f"{'n':>3}  {'beta_n':>12}  {'beta_n^(1/n)':>12}"]
        rows += [f"{n:>3}  {s:>12}  {r:>12}" for n, s, r in zip(stats.radii, stats.sizes, rates)]
        return EXIT_OK, "\n".join(rows)
    return EXIT_OK, out


def cmd_witness(args, S):
    v = _valuation(args.valuation) if args.valuation else None
    w = witness.find_witness(S, v, args.depth)
    if w is None:
        if v is None:
            result = witness.classify_all(S, args.depth)
            reports, diagnostics = result.reports, result.diagnostics
        else:
            reports, diagnostics = [witness.classify(S, v, args.depth)], []
        out = {"schema": jsonio.SCHEMA, "witness": None, "diagnostics": diagnostics,
               "outcomes": [{"valuation": jsonio.valuation_to_json(r.valuation),
                             "outcome": r.outcome} for r in reports]}
        return EXIT_NO_WITNESS, out
    out = {"schema": jsonio.SCHEMA, "witness": jsonio.witness_to_json(S, w),
           "growth_lower_bound": f"{growth.growth_lower_bound_from_witness(w):.6f}"}
    return EXIT_OK, out


def cmd_classify(args, S):
    result = witness.classify_all(S, args.depth)
    out = {"schema": jsonio.SCHEMA,
           "reports": [jsonio.classification_to_json(S, r) for r in result.reports],
           "diagnostics": result.diagnostics}
    if args.traces is not None:
        diag = witness.trace_diagnostics(S, args.traces)
        out["trace_diagnostics"] = jsonio.trace_diagnostics_to_json(diag)
    code = EXIT_OK if result.witness is not None else EXIT_NO_WITNESS
    return code, out


def cmd_certify(args, S):
    try:
        wa, wb = S.parse_word(args.word_a), S.parse_word(args.word_b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    a, b = evaluate_word(S, wa), evaluate_word(S, wb)
    hit = pingpong.oracle_free_semigroup(a, b, args.depth, projective=not args.gl)
    out = {"schema": jsonio.SCHEMA, "depth": args.depth,
           "words_checked": pingpong.words_checked(args.depth),
           "a": S.render(wa), "b": S.render(wb), "mode": "GL" if args.gl else "PGL",
           "result": "ok" if hit is None else "collision",
           "collision": None if hit is None else list(hit)}
    return (EXIT_OK if hit is None else EXIT_COLLISION), out


def cmd_tree(args):
    v = _valuation(args.valuation)
    raw_a = jsonio.loads_located(args.a, "--a")
    A = jsonio.parse_matrix(raw_a, v.field)
    B = jsonio.parse_matrix(jsonio.loads_located(args.b, "--b"), v.field) if args.b else None
    out = {"schema": jsonio.SCHEMA, "valuation": jsonio.valuation_to_json(v), "query": args.query}
    need_b = args.query in ("distance", "geodesic", "bridge")
    if need_b and B is None:
        raise UsageError(f"tree {args.query} needs --b")
    if args.query in ("distance", "geodesic"):
        x, y = bt_tree.vertex_from_matrix(A, v), bt_tree.vertex_from_matrix(B, v)
        out["from"], out["to"] = jsonio.vertex_to_json(x), jsonio.vertex_to_json(y)
        out["distance"] = bt_tree.distance(x, y)
        if args.query == "geodesic":
            out["geodesic"] = [jsonio.vertex_to_json(z) for z in bt_tree.geodesic(x, y)]
    elif args.query == "translation-length":
        out["translation_length"] = bt_tree.translation_length(A, v)
        out["kind"] = bt_tree.classify_isometry(A, v)
    elif args.query == "axis":
        out["translation_length"] = bt_tree.translation_length(A, v)
        out["point_on_axis"] = jsonio.vertex_to_json(bt_tree.point_on_axis(A, v))
        if B is not None:
            out["axis_equal"] = bt_tree.axis_equal(A, B, v)
    else:
        br = bt_tree.bridge(A, B, v)
        out["bridge"] = {"on_a": jsonio.vertex_to_json(br.on_g),
                         "on_b": jsonio.vertex_to_json(br.on_h), "separation": br.separation}
    return EXIT_OK, out


def cmd_subgroup(args, S):
    if args.subgroup == "kernel":
        target = "kernel"
    else:
        raw = jsonio.loads_located(args.subgroup, "--subgroup")
        if not isinstance(raw, list):
            raise UsageError("--subgroup must be 'kernel' or a JSON list of matrices")
        target = [tuple(int(x) for row in m for x in row) for m in raw]
    spec = growth.FiniteImageSpec(args.modulus, target)
    res = growth.subgroup_generators(S, spec, args.method)
    out = {"schema": jsonio.SCHEMA, "modulus": args.modulus, "index": res.index,
           "image_order": res.image_order, "method": res.method,
           "max_word_length": res.max_word_length, "exponent": str(res.exponent),
           "generators": [jsonio.word_to_json(S, w) for w in res.words]}
    return EXIT_OK, out


COMMANDS = {"growth": cmd_growth, "witness": cmd_witness, "classify": cmd_classify,
            "certify-free": cmd_certify, "subgroup-gens": cmd_subgroup}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "tree":
            code, out = cmd_tree(args)
        else:
            S = jsonio.load_generator_file(args.generators)
            code, out = COMMANDS[args.command](args, S)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (jsonio.InputError, FieldMismatch, bt_tree.NotHyperbolic) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except growth.BallTooLarge as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except pingpong.LemmaViolation as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return EXIT_COLLISION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(out, str):
        print(out)
    elif args.format == "text":
        print(_text(out))
    else:
        print(jsonio.dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
