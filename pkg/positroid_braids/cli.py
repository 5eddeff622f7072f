"""Command line interface: ``positroid-braids <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

import voluptuous as vol

from .braid_core import BraidWord, Permutation, w0
from .braid_matrix import VarietyPresentation, variety_braid_pair, variety_upper_triangular
from .checks import BRICK_SCHEMA, PAIR_OR_SIZE_SCHEMA, PAIR_SCHEMA, pair_from_instance
from .config import Config
from .const import (
    BRAID_KINDS,
    DATUM_KINDS,
    EXIT_BAD_INPUT,
    EXIT_CHECK_FAILED,
    EXIT_OK,
    SET_T_MODES,
    T_MODES,
    THEOREM_CHECKS,
)
from .constructions import braid_of_kind
from .dg_algebra import build_dga, slice_eliminate
from .exceptions import BraidParseError, InvalidDatumError, PositroidBraidsError
from .positroid_data import convert, datum_to_json, parse_datum, require_valid, validate
from .rewriting import FRAMING_DELTA, FRAMINGS, find_equivalence, free_reduce, markov_reduce
from .runner import CheckRunner, all_passed
from .varieties import brick_stratify, count_points, richardson_variety

_LOGGER = logging.getLogger(__name__)

PRIMES_SCHEMA = vol.Schema(vol.All(vol.Length(min=1), [vol.All(vol.Coerce(int), vol.Range(min=2))]))


def _primes(text: str) -> List[int]:
    try:
        return PRIMES_SCHEMA([p for p in text.split(",") if p.strip()])
    except vol.Invalid as err:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}: {err}")


def _load_json(args: argparse.Namespace) -> Dict[str, Any]:
    """Datum from --data (inline JSON) or --input (a JSON file)."""
    if getattr(args, "data", None):
        return json.loads(args.data)
    if getattr(args, "input", None):
        with open(args.input, "r") as f:
            return json.load(f)
    raise InvalidDatumError(["no input given; use --data or --input"])


def _emit(args: argparse.Namespace, payload: Any, text: Optional[str] = None) -> None:
    if args.json or text is None:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def _settings(args: argparse.Namespace) -> Config:
    config = Config.from_env(args.config)
    return config.with_overrides(
        threads=args.threads,
        max_assignments=args.max_assignments,
        max_states=args.max_states,
        log_level=args.log_level,
    )


# Commands


def cmd_convert(args: argparse.Namespace, settings: Config) -> int:
    datum = parse_datum(args.source, _load_json(args))
    report = validate(datum, args.k)
    if not report.ok:
        _emit(args, report.to_json())
        return EXIT_BAD_INPUT
    result = convert(datum, args.target, args.k)
    payload = datum_to_json(result, args.k)
    text = result.to_ascii() if args.target == "le" else None
    _emit(args, payload, text)
    return EXIT_OK


def cmd_braid(args: argparse.Namespace, settings: Config) -> int:
    datum = parse_datum(args.source, _load_json(args))
    pair = convert(require_valid(datum, args.k), "pair", args.k)
    word = braid_of_kind(args.kind, pair)
    _emit(args, {"kind": args.kind, "braid": str(word), "length": len(word)}, str(word))
    return EXIT_OK


def cmd_simplify(args: argparse.Namespace, settings: Config) -> int:
    if args.pair:
        pair = pair_from_instance(json.loads(args.pair))
        word, trace = markov_reduce(pair)
    elif args.target:
        trace = find_equivalence(BraidWord.parse(args.word), BraidWord.parse(args.target), settings.search, args.framing)
        if trace is None:
            _emit(args, {"found": False, "word": args.word, "target": args.target}, "no certificate found")
            return EXIT_CHECK_FAILED
        word = trace.end
    else:
        trace = free_reduce(BraidWord.parse(args.word))
        word = trace.end
    _emit(args, {"word": str(word), "trace": trace.to_json()}, str(word))
    return EXIT_OK


def cmd_dga(args: argparse.Namespace, settings: Config) -> int:
    eta = BraidWord.parse(args.word)
    if args.slice:
        presentation = slice_eliminate(eta)
        _emit(args, presentation.to_json())
        return EXIT_OK
    set_t = args.set_t or settings.dga.set_t
    dga = build_dga(eta, set_t=set_t)
    payload = dga.to_json()
    failing: List[str] = []
    if args.verify or settings.dga.verify_d_squared:
        failing = dga.d_squared()
        payload["d_squared_failures"] = failing
    _emit(args, payload)
    return EXIT_CHECK_FAILED if failing else EXIT_OK


def _variety(args: argparse.Namespace) -> VarietyPresentation:
    if args.pair:
        pair = pair_from_instance(json.loads(args.pair))
        return richardson_variety(pair.u, pair.w)
    word = BraidWord.parse(args.word)
    if args.slice:
        return slice_eliminate(word)
    if args.braid_pair or not word.is_positive():
        return variety_braid_pair(word)
    pi = Permutation.parse(args.pi) if args.pi else w0(word.strands)
    return variety_upper_triangular(word, pi)


def cmd_variety(args: argparse.Namespace, settings: Config) -> int:
    presentation = _variety(args)
    payload: Dict[str, Any] = {"presentation": presentation.to_json()}
    if args.count:
        primes = args.q or settings.count.primes
        t_mode = args.t_mode or settings.count.t_mode
        payload["counts"] = [
            count_points(presentation, q, settings.count.max_assignments, t_mode).to_json() for q in primes
        ]
    _emit(args, payload)
    return EXIT_OK


def cmd_brick(args: argparse.Namespace, settings: Config) -> int:
    word = BraidWord.parse(BRICK_SCHEMA({"word": args.word})["word"])
    stratification = brick_stratify(word)
    if not args.count:
        _emit(args, stratification.to_json())
        return EXIT_OK
    primes = args.q or settings.count.primes
    reports = [stratification.count(q, settings.count.max_assignments).to_json() for q in primes]
    _emit(args, reports[0] if len(reports) == 1 else reports)
    return EXIT_OK


def _run_checks(args: argparse.Namespace, settings: Config, enabled: Dict[str, Dict[str, Any]]) -> int:
    data = settings.model_dump()
    for name in data["checks"]:
        data["checks"][name]["enabled"] = False
    for name, overrides in enabled.items():
        data["checks"][name].update({"enabled": True, **overrides})
    results = CheckRunner(Config(**data)).run()
    results = {name: r for name, r in results.items() if r.get("status") != "disabled"}
    ok = all_passed(results)
    lines = []
    for name, report in results.items():
        lines.append(f"{name}: {report.get('status')}")
        for check, passed in (report.get("checks") or {}).items():
            lines.append(f"  {'ok  ' if passed else 'FAIL'} {check}")
        if report.get("error"):
            lines.append(f"  error: {report['error']}")
    _emit(args, results, "\n".join(lines))
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_reproduce_intro(args: argparse.Namespace, settings: Config) -> int:
    overrides: Dict[str, Any] = {}
    if args.f:
        overrides["f"] = json.loads(args.f)
    return _run_checks(args, settings, {"intro": overrides})


def cmd_verify(args: argparse.Namespace, settings: Config) -> int:
    if args.trace:
        return _run_checks(args, settings, {"trace": {"instance": {"path": args.trace}}})
    if not args.theorem or not args.instance:
        raise InvalidDatumError(["verify needs --theorem with --instance, or --trace"])
    instance = json.loads(args.instance)
    if args.theorem in ("main1-i", "main1-ii"):
        PAIR_SCHEMA(instance)
    elif args.theorem == "rich-vs-juggling":
        PAIR_OR_SIZE_SCHEMA(instance)
    else:
        BRICK_SCHEMA(instance)
    overrides: Dict[str, Any] = {"instance": instance}
    if args.q:
        overrides["q"] = args.q
    return _run_checks(args, settings, {args.theorem.replace("-", "_"): overrides})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="positroid-braids",
        description="Positroid braids, braid varieties and their DG-algebras",
    )
    parser.add_argument("--json", action="store_true", help="Machine-readable output")
    parser.add_argument("--threads", type=int, help="Worker threads for the check runner")
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument("--log-level", help="Logging level (DEBUG, INFO, WARNING, ...)")
    parser.add_argument("--max-assignments", type=int, help="Cap on F_q assignments per count")
    parser.add_argument("--max-states", type=int, help="Cap on states visited by equivalence searches")
    sub = parser.add_subparsers(dest="command", required=True)

    def datum_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("--from", dest="source", required=True, choices=list(DATUM_KINDS))
        p.add_argument("--data", help="Inline JSON datum")
        p.add_argument("--input", help="JSON file holding the datum")
        p.add_argument("--k", type=int, help="k for affine permutations")

    p = sub.add_parser("convert", help="Convert between KLS data")
    datum_input(p)
    p.add_argument("--to", dest="target", required=True, choices=list(DATUM_KINDS))
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("braid", help="Build a positroid braid")
    datum_input(p)
    p.add_argument("--kind", required=True, choices=list(BRAID_KINDS))
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("simplify", help="Reduce a word or certify an equivalence")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--word", help="Braid word, e.g. 'n=3: s1 s2^-1'")
    group.add_argument("--pair", help="Positroid pair JSON for the Markov reduction")
    p.add_argument("--target", help="Search for a certificate from --word to this word")
    p.add_argument("--framing", choices=list(FRAMINGS), default=FRAMING_DELTA)
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("dga", help="DG-algebra of eta * Delta")
    p.add_argument("--word", required=True)
    p.add_argument("--set-t", choices=SET_T_MODES)
    p.add_argument("--verify", action="store_true", help="Check d^2 = 0 on every generator")
    p.add_argument("--slice", action="store_true", help="Print the slice-eliminated variety instead")
    p.set_defaults(func=cmd_dga)

    p = sub.add_parser("variety", help="Variety presentations and point counts")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--word")
    group.add_argument("--pair", help="Positroid pair JSON; gives the Richardson variety")
    p.add_argument("--pi", help="Permutation for X(word; pi), default w0")
    p.add_argument("--braid-pair", action="store_true", help="Use the braid pair X(eta)")
    p.add_argument("--slice", action="store_true", help="Quotient by the derivations first")
    p.add_argument("--count", action="store_true")
    p.add_argument("-q", type=_primes, help="Comma separated primes")
    p.add_argument("--t-mode", choices=T_MODES)
    p.set_defaults(func=cmd_variety)

    p = sub.add_parser("brick", help="Brick stratification")
    p.add_argument("--word", required=True)
    p.add_argument("--stratify", action="store_true", help="List the strata (default)")
    p.add_argument("--count", action="store_true")
    p.add_argument("-q", type=_primes)
    p.set_defaults(func=cmd_brick)

    p = sub.add_parser("reproduce-intro", help="Replay the Gr(3,7) worked example")
    p.add_argument("--f", help="Replace the affine permutation, e.g. '[3,5,8,6,7,11,9]'")
    p.set_defaults(func=cmd_reproduce_intro)

    p = sub.add_parser("verify", help="Check a theorem instance or replay a trace")
    p.add_argument("--theorem", choices=THEOREM_CHECKS)
    p.add_argument("--instance", help="Instance JSON")
    p.add_argument("--trace", help="Move trace JSON file to replay")
    p.add_argument("-q", type=_primes)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = _settings(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BAD_INPUT
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args, settings)
    except (vol.Invalid, InvalidDatumError, BraidParseError, json.JSONDecodeError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except PositroidBraidsError as err:
        _LOGGER.error(f"{args.command} failed: {err}")
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
