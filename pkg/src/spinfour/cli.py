"""Command-line interface.

Subcommands: degree, lift, classify, check, catalog, verify-paper.
Exit codes: 0 success, 1 usage or parse error, 2 numerical-method failure,
3 verification failure.  With --json, the only thing on stdout is one JSON
document; human-readable notes go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bundles import classify_numeric, classify_word
from .degree import (
    DEFAULT_SEED_COUNT,
    DegreeMethod,
    PowerMap,
    degree_exact,
    degree_integral,
    degree_preimage,
)
from .errors import (
    ManifoldInputError,
    NumericalFailure,
    ObstructionError,
    WordParseError,
)
from .manifolds import (
    ManifoldData,
    catalog,
    catalog_entry,
    is_parallelizable,
    load_manifolds,
    obstruction_degrees,
)
from .maps import WordMap, lift_numeric, lift_word
from .quaternions import random_unit
from .verify import DEFAULT_SEED, run_verification
from .words import parse_word


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the contract reserves 2 for
    # numerical failures and uses 1 for usage problems
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(args, doc: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for line in text_lines:
            print(line)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _add_resolution(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--resolution", nargs=3, type=int, metavar=("N1", "N2", "NETA"),
        default=None, help="Hopf grid shape (default 48 48 24)",
    )


def _resolution(args):
    return tuple(args.resolution) if args.resolution else None


def _sphere_map_from_spec(spec: str, component: int):
    if spec.startswith("pow:"):
        try:
            return PowerMap(int(spec[4:])), f"q^{int(spec[4:])}"
        except ValueError:
            raise WordParseError(f"bad power spec {spec!r}: expected pow:<integer>")
    word = parse_word(spec)
    pair = lift_word(word)
    f = pair.f1 if component == 1 else pair.f2
    return f, f"lift component {component} of {word}"


def _cmd_degree(args) -> int:
    f, label = _sphere_map_from_spec(args.map, args.component)
    method = DegreeMethod(args.method)
    if method is DegreeMethod.EXACT:
        result = degree_exact(f)
    elif method is DegreeMethod.INTEGRAL:
        result = degree_integral(f, resolution=_resolution(args))
    else:
        result = degree_preimage(f, seed_count=args.seeds)
    doc = {
        "map": label,
        "degree": result.degree,
        "method": result.method.value,
        "residual": result.residual,
        "warnings": list(result.warnings),
    }
    lines = [f"degree({label}) = {result.degree}   "
             f"[method {result.method.value}, residual {result.residual:.2e}]"]
    lines += [f"warning: {w}" for w in result.warnings]
    _emit(args, doc, lines)
    return 0


def _cmd_lift(args) -> int:
    word = parse_word(args.word)
    pair = lift_word(word)
    d1 = degree_exact(pair.f1).degree
    d2 = degree_exact(pair.f2).degree
    doc = {
        "word": str(word),
        "f1": str(pair.f1),
        "f2": str(pair.f2),
        "degrees": [d1, d2],
    }
    lines = [
        f"word {word} lifts to the pair of sphere maps:",
        f"  f1(q) = {pair.f1}   (degree {d1})",
        f"  f2(q) = {pair.f2}   (degree {d2})",
    ]
    if args.numeric:
        numeric = lift_numeric(WordMap(word), grid=_resolution(args))
        sample = random_unit(np.random.default_rng(DEFAULT_SEED), (256,))
        deviation = numeric.cover_deviation(sample)
        sym = pair.pair_values(sample)
        num = numeric.pair_values(sample)
        mismatch = min(
            float(np.max(np.abs(num - sym))), float(np.max(np.abs(num + sym)))
        )
        doc["numeric"] = {
            "cover_deviation": deviation,
            "symbolic_mismatch_up_to_sign": mismatch,
        }
        lines += [
            f"numeric lift: max cover deviation {deviation:.2e} on 256 sample points,",
            f"  matches the symbolic lift up to a global sign within {mismatch:.2e}",
        ]
    _emit(args, doc, lines)
    return 0


def _classify_doc(cls) -> dict:
    return {"euler": cls.euler, "pontryagin": cls.pontryagin, "phi": list(cls.phi)}


def _cmd_classify(args) -> int:
    word = parse_word(args.word)
    if args.numeric:
        cls = classify_numeric(
            WordMap(word), resolution=_resolution(args),
            cross_check=args.cross_check, seed_count=args.seeds,
        )
        how = "numeric lift + degree quadrature"
    else:
        cls = classify_word(word)
        how = "exact word arithmetic"
    doc = {"word": str(word), "method": how, **_classify_doc(cls)}
    _emit(args, doc, [
        f"clutching word {word}  ({how})",
        f"  chi = {cls.euler}   p1 = {cls.pontryagin}   phi = {cls.phi}",
    ])
    return 0


def _check_one(m: ManifoldData) -> tuple[dict, list[str]]:
    decision = is_parallelizable(m)
    doc = {
        "name": m.name,
        "w2_zero": m.w2_zero,
        "p1": m.p1,
        "euler": m.euler,
        "provenance": m.provenance.value,
        "parallelizable": decision.parallelizable,
        "failing": list(decision.failing),
    }
    verdict = "PARALLELIZABLE" if decision.parallelizable else "NOT parallelizable"
    line = (f"{m.name}: {verdict}  "
            f"(w2=0: {str(m.w2_zero).lower()}, p1={m.p1}, chi={m.euler})")
    lines = [line]
    if not decision.parallelizable and decision.failing:
        lines.append(f"  failing: {', '.join(decision.failing)}")
    try:
        d1, d2 = obstruction_degrees(m)
        doc["obstruction_degrees"] = [d1, d2]
        lines.append(f"  obstruction degrees (d1, d2) = ({d1}, {d2})")
    except ObstructionError as exc:
        doc["obstruction_degrees"] = None
        doc["obstruction_error"] = str(exc)
        lines.append(f"  obstruction degrees unavailable: {exc}")
    return doc, lines


def _cmd_check(args) -> int:
    if args.catalog:
        manifolds = [catalog_entry(args.catalog)]
    elif args.file:
        manifolds = load_manifolds(args.file)
    else:
        manifolds = catalog()
    docs, lines = [], []
    for m in manifolds:
        doc, entry_lines = _check_one(m)
        docs.append(doc)
        lines += entry_lines
    _emit(args, {"manifolds": docs}, lines)
    return 0


def _cmd_catalog(args) -> int:
    docs, lines = [], []
    for m in catalog():
        doc, entry_lines = _check_one(m)
        docs.append(doc)
        lines += entry_lines
    _emit(args, {"manifolds": docs}, lines)
    return 0


def _cmd_verify(args) -> int:
    report = run_verification(seed=args.seed, resolution=_resolution(args))
    lines = [line.render() for line in report.lines]
    lines.append(
        f"{'ALL CHECKS PASSED' if report.passed else 'CHECKS FAILED'} "
        f"({report.duration:.1f}s, seed {report.seed})"
    )
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
        for line in lines:
            print(line, file=sys.stderr)
    else:
        for line in lines:
            print(line)
    return 0 if report.passed else 3


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="spinfour",
        description=(
            "Clutching words, mapping degrees, bundle classes over the 4-sphere, "
            "and parallelizability of closed orientable 4-manifolds."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degree", help="degree of a sphere self-map")
    p.add_argument("--map", required=True,
                   help="'pow:<n>' for q -> q^n, or a clutching word")
    p.add_argument("--method", choices=[m.value for m in DegreeMethod],
                   default="exact")
    p.add_argument("--component", type=int, choices=(1, 2), default=1,
                   help="lift component used when --map is a word")
    p.add_argument("--seeds", type=int, default=DEFAULT_SEED_COUNT,
                   help="Newton seed count for --method preimage")
    _add_resolution(p)
    _add_common(p)
    p.set_defaults(func=_cmd_degree)

    p = sub.add_parser("lift", help="lift of a clutching word to a sphere-map pair")
    p.add_argument("word")
    p.add_argument("--numeric", action="store_true",
                   help="also build the numeric lift and compare")
    _add_resolution(p)
    _add_common(p)
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("classify", help="bundle class of a clutching word")
    p.add_argument("word")
    p.add_argument("--numeric", action="store_true",
                   help="classify through the numeric lift instead of exactly")
    p.add_argument("--cross-check", action="store_true",
                   help="with --numeric: recompute degrees by preimage counting")
    p.add_argument("--seeds", type=int, default=DEFAULT_SEED_COUNT)
    _add_resolution(p)
    _add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("check", help="parallelizability of 4-manifolds")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--catalog", metavar="NAME",
                       help="built-in manifold (see the catalog command)")
    group.add_argument("--file", metavar="PATH",
                       help="JSON file with manifold records")
    _add_common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("catalog", help="list built-in manifolds and verdicts")
    _add_common(p)
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("verify-paper",
                       help="replay every pinned identity and report pass/fail")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_resolution(p)
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (WordParseError, ManifoldInputError, KeyError, OSError, ValueError) as exc:
        detail = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"spinfour: error: {detail}", file=sys.stderr)
        return 1
    except NumericalFailure as exc:
        print(f"spinfour: numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
