"""Command-line front-end with JSON output.

Subcommands::

    braid analyze    strictness, inhomogeneity, MN upper bound
    braid minimize   bounded search for a lower-inhomogeneity word
    seifert matrix   Seifert matrix of a strict braidword
    alexander        Alexander polynomial (seifert / burau / both routes)
    deplumb          strip untwisted-annulus plumbings off a braid surface
    expr eval        evaluate a Murasugi-sum expression (JSON)
    argmap rational  critical points of arg of a rational map
    argmap milnor    critical points of a Milnor map at a radius
    argmap radius    transversality check of D(F) against a sphere

Exit codes: 0 ok, 2 usage, 3 bad input, 4 internal inconsistency (the two
Alexander routes disagreeing, or an exactness failure).  Output is a single
JSON object on stdout; ``--pretty`` indents it.  MORSENOV_THREADS caps the
solver's internal parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import braid as braid_mod
from . import murasugi as mur
from .argmap import (
    ArgMapInputError,
    BivariateMero,
    DomainError,
    SolverConfig,
    check_link_radius,
    crit_point_to_json_obj,
    crit_points_arg_rational,
    crit_points_milnor,
    morse_pairing_flags,
    rational_map,
)
from .braid import BraidInputError, Braidword, NonStrictWordError
from .surface import (
    OracleMismatchError,
    alexander_from_seifert,
    alexander_via_burau,
    boundary_components,
    seifert_from_braid,
    seifert_matrix_from_braid,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_INCONSISTENT = 4


class CliError(Exception):
    def __init__(self, code: str, message: str, exit_code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code


def _emit(payload: dict, pretty: bool) -> None:
    print(json.dumps(payload, indent=2 if pretty else None, sort_keys=False))


def _read_braid(args: argparse.Namespace) -> Braidword:
    if getattr(args, "json", None):
        return Braidword.from_json(_read_maybe_file(args.json))
    word = getattr(args, "word", None) or getattr(args, "braid", None)
    if word is None or args.strands is None:
        raise CliError("input", "need --word together with --strands, or --json")
    return braid_mod.parse_braidword(word, args.strands)


def _read_maybe_file(arg: str) -> str:
    if arg.strip().startswith(("{", "[")):
        return arg
    try:
        with open(arg, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError("input", f"cannot read {arg!r}: {exc}")


def _poly_terms(items: list) -> dict[tuple[int, int], complex]:
    terms: dict[tuple[int, int], complex] = {}
    for item in items:
        terms[(int(item["zexp"]), int(item["wexp"]))] = complex(
            float(item.get("re", 0.0)), float(item.get("im", 0.0))
        )
    return terms


def _read_bivariate(args: argparse.Namespace) -> BivariateMero:
    data = json.loads(_read_maybe_file(args.poly_json))
    p = _poly_terms(data["P"])
    q = _poly_terms(data["Q"]) if data.get("Q") else None
    return BivariateMero.from_dicts(p, q, note=str(data.get("note", "")))


def _coeffs(text: str) -> list[complex]:
    return [complex(float(tok), 0.0) for tok in text.replace(",", " ").split()]


def _solver_config(args: argparse.Namespace) -> SolverConfig:
    threads = int(os.environ.get("MORSENOV_THREADS", "1") or "1")
    return SolverConfig(
        seed_count=args.seeds,
        newton_max_iters=args.max_iters,
        tol_residual=args.tol_residual,
        tol_dedupe=args.tol_dedupe,
        tol_hessian=args.tol_hessian,
        rng_seed=args.rng_seed,
        max_threads=max(1, threads),
    )


def _cmd_braid_analyze(args) -> dict:
    word = _read_braid(args)
    strict = braid_mod.is_strict(word)
    payload: dict = {
        "strands": word.strands,
        "word": word.to_ints(),
        "strict": strict,
    }
    if strict:
        inhom = braid_mod.inhomogeneity(word)
        payload["inhomogeneity"] = inhom
        payload["mn_upper"] = 2 * inhom
        payload["homogeneous"] = inhom == 0
        payload["provenance"] = [mur.TAG_INHOMOGENEITY]
    else:
        payload["note"] = "non-strict word: the closure is a split link"
    return payload


def _cmd_braid_minimize(args) -> dict:
    word = _read_braid(args)
    best, value = braid_mod.minimize_inhomogeneity(word, args.budget)
    return {
        "input_inhomogeneity": braid_mod.inhomogeneity(word),
        "word": best.to_ints(),
        "strands": best.strands,
        "inhomogeneity": value,
        "mn_upper": 2 * value,
        "budget": args.budget,
        "provenance": [mur.TAG_INHOMOGENEITY],
    }


def _cmd_seifert_matrix(args) -> dict:
    word = _read_braid(args)
    v = seifert_matrix_from_braid(word)
    return {
        "matrix": [list(row) for row in v.entries],
        "chi": v.chi,
        "h1": v.h1,
        "boundary_components": v.boundary_components,
        "connected": v.connected,
    }


def _cmd_alexander(args) -> dict:
    word = _read_braid(args)
    payload: dict = {"method": args.method}
    if args.method in ("seifert", "both"):
        poly_s = alexander_from_seifert(seifert_matrix_from_braid(word))
        payload["alexander_seifert"] = json.loads(poly_s.to_json())["poly"]
        payload["alexander_text"] = poly_s.to_text()
    if args.method in ("burau", "both"):
        poly_b = alexander_via_burau(word)
        payload["alexander_burau"] = json.loads(poly_b.to_json())["poly"]
        payload["alexander_text"] = poly_b.to_text()
    if args.method == "both":
        agree = payload["alexander_seifert"] == payload["alexander_burau"]
        payload["methods_agree"] = agree
        if not agree:
            raise CliError(
                "oracle-mismatch",
                "Seifert-matrix and Burau routes disagree",
                EXIT_INCONSISTENT,
            )
    return payload


def _cmd_deplumb(args) -> dict:
    word = _read_braid(args)
    residual, removed = mur.deplumb_braid_surface(word)
    return {
        "removed": removed,
        "residual_columns": {str(col): list(signs) for col, signs in residual.items()},
        "inhomogeneity": braid_mod.inhomogeneity(word),
        "mn_upper": 2 * removed,
        "provenance": [mur.TAG_SUBADDITIVE, mur.TAG_UNLINK],
    }


def _cmd_expr_eval(args) -> dict:
    obj = json.loads(_read_maybe_file(args.expr))
    expr = mur.expr_from_json_obj(obj)
    bundle = mur.eval_expr(expr)
    return bundle_payload(bundle)


def bundle_payload(bundle: mur.SeifertMatrixBundle) -> dict:
    payload = mur.bundle_to_json_obj(bundle)
    payload["provenance"] = list(bundle.provenance)
    return payload


def _cmd_argmap_rational(args) -> dict:
    rmap = rational_map(_coeffs(args.num), _coeffs(args.den))
    points = crit_points_arg_rational(rmap)
    return {
        "num": [c.real for c in rmap.num],
        "den": [c.real for c in rmap.den],
        "critical_points": [crit_point_to_json_obj(p) for p in points],
    }


def _cmd_argmap_milnor(args) -> dict:
    fmap = _read_bivariate(args)
    cfg = _solver_config(args)
    points, report = crit_points_milnor(fmap, args.radius, cfg)
    flags = morse_pairing_flags(points)
    return {
        "radius": args.radius,
        "rng_seed": cfg.rng_seed,
        "points": [crit_point_to_json_obj(p) for p in points],
        "degeneracy_report": {
            "entries": [
                {
                    "kind": e.kind,
                    "size": e.size,
                    "diameter": e.diameter,
                    "representatives": [
                        [[p[0].real, p[0].imag], [p[1].real, p[1].imag]]
                        for p in e.representatives
                    ],
                    "min_residual": e.min_residual,
                    "note": e.note,
                }
                for e in report.entries
            ],
            "notes": list(report.notes),
        },
        "min_residual_observed": report.min_residual_observed,
        "pairing_flags": flags,
    }


def _cmd_argmap_radius(args) -> dict:
    fmap = _read_bivariate(args)
    verdict = check_link_radius(fmap, args.radius, samples=args.samples)
    return {
        "radius": args.radius,
        "verdict": verdict.verdict,
        "components": verdict.components,
        "min_singular_ratio": verdict.min_singular_ratio,
        "samples_checked": verdict.samples_checked,
    }


def _add_braid_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--word", help='braidword text, e.g. "s1 s1 -s1 s1"')
    parser.add_argument("--braid", help="alias for --word")
    parser.add_argument("--strands", type=int, help="strand count n")
    parser.add_argument("--json", help='braidword JSON {"strands": n, "word": [...]}')


def _leaf(subparsers, name: str, **kwargs) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(name, **kwargs)
    # --pretty is accepted both before and after the subcommand; SUPPRESS
    # keeps the subparser from clobbering a top-level --pretty.
    parser.add_argument(
        "--pretty", action="store_true", default=argparse.SUPPRESS,
        help="indent JSON output",
    )
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morsenov",
        description="Morse-Novikov bounds from braidwords and Murasugi sums; "
        "critical points of argument maps",
    )
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    braid_p = sub.add_parser("braid", help="braidword analysis")
    braid_sub = braid_p.add_subparsers(dest="subcommand", required=True)
    analyze = _leaf(braid_sub, "analyze", help="strictness, inhomogeneity, MN bound")
    _add_braid_input(analyze)
    analyze.set_defaults(func=_cmd_braid_analyze)
    minimize = _leaf(braid_sub, "minimize", help="search rewriting moves")
    _add_braid_input(minimize)
    minimize.add_argument("--budget", type=int, default=10000)
    minimize.set_defaults(func=_cmd_braid_minimize)

    seifert_p = sub.add_parser("seifert", help="Seifert surface data")
    seifert_sub = seifert_p.add_subparsers(dest="subcommand", required=True)
    matrix = _leaf(seifert_sub, "matrix", help="Seifert matrix of a strict word")
    _add_braid_input(matrix)
    matrix.set_defaults(func=_cmd_seifert_matrix)

    alexander = _leaf(sub, "alexander", help="Alexander polynomial of a closure")
    _add_braid_input(alexander)
    alexander.add_argument(
        "--method", choices=("seifert", "burau", "both"), default="both"
    )
    alexander.set_defaults(func=_cmd_alexander)

    deplumb = _leaf(sub, "deplumb", help="strip A(O,0) plumbings off a braid surface")
    _add_braid_input(deplumb)
    deplumb.set_defaults(func=_cmd_deplumb)

    expr_p = sub.add_parser("expr", help="Murasugi-sum expressions")
    expr_sub = expr_p.add_subparsers(dest="subcommand", required=True)
    expr_eval = _leaf(expr_sub, "eval", help="evaluate an expression JSON")
    expr_eval.add_argument("--expr", required=True, help="expression JSON or file path")
    expr_eval.set_defaults(func=_cmd_expr_eval)

    argmap_p = sub.add_parser("argmap", help="critical points of argument maps")
    argmap_sub = argmap_p.add_subparsers(dest="subcommand", required=True)
    rational = _leaf(argmap_sub, "rational", help="rational map on the sphere")
    rational.add_argument("--num", required=True, help="ascending coefficients, comma separated")
    rational.add_argument("--den", required=True)
    rational.set_defaults(func=_cmd_argmap_rational)

    milnor = _leaf(argmap_sub, "milnor", help="Milnor map critical points")
    milnor.add_argument("--poly-json", required=True, help='{"P": [...], "Q": [...]} or file')
    milnor.add_argument("--radius", type=float, default=1.0)
    milnor.add_argument("--seeds", type=int, default=4096)
    milnor.add_argument("--max-iters", type=int, default=50)
    milnor.add_argument("--tol-residual", type=float, default=1e-10)
    milnor.add_argument("--tol-dedupe", type=float, default=1e-6)
    milnor.add_argument("--tol-hessian", type=float, default=1e-6)
    milnor.add_argument("--rng-seed", type=int, default=0)
    milnor.set_defaults(func=_cmd_argmap_milnor)

    radius = _leaf(argmap_sub, "radius", help="link-radius transversality check")
    radius.add_argument("--poly-json", required=True)
    radius.add_argument("--radius", type=float, default=1.0)
    radius.add_argument("--samples", type=int, default=64)
    radius.set_defaults(func=_cmd_argmap_radius)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    pretty = args.pretty
    try:
        payload = args.func(args)
    except CliError as exc:
        _emit({"status": "error", "code": exc.code, "message": str(exc)}, pretty)
        return exc.exit_code
    except (BraidInputError, NonStrictWordError, ArgMapInputError, DomainError,
            mur.ExpressionError, mur.UnsupportedTwistError) as exc:
        _emit({"status": "error", "code": "input", "message": str(exc)}, pretty)
        return EXIT_INPUT
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        _emit({"status": "error", "code": "input", "message": f"malformed input: {exc}"}, pretty)
        return EXIT_INPUT
    except OracleMismatchError as exc:
        _emit({"status": "error", "code": "oracle-mismatch", "message": str(exc)}, pretty)
        return EXIT_INCONSISTENT
    payload = {"status": "ok", **payload}
    _emit(payload, pretty)
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
