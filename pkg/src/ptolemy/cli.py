"""Command-line front end: JSON in, one JSON document out.

Exit codes: 0 success, 1 a check or suite found a violation, 2 bad flags or input.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from typing import Optional, Sequence

from .algebra import Field
from .campaign import SUITES, CampaignConfig, verify_campaign
from .crossratio import Quadruple, cross_record, distance_table
from .errors import ConfigError, DomainError
from .inequality import RCircle, parse_parameter, ptolemy_check, separation
from .isometry import Motion

log = logging.getLogger("ptolemy")

_LOG_LEVELS = {"error": logging.ERROR, "warn": logging.WARNING, "warning": logging.WARNING,
               "info": logging.INFO, "debug": logging.DEBUG}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _configure_logging():
    raw = os.environ.get("PTOLEMY_LOG", "warn").strip().lower()
    level = _LOG_LEVELS.get(raw)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("ptolemy: %(levelname)s: %(message)s"))
    log.handlers[:] = [handler]
    log.propagate = False
    log.setLevel(level if level is not None else logging.WARNING)
    if level is None:
        log.warning("ignoring unknown PTOLEMY_LOG=%r", raw)


def _clean(obj):
    """Make a payload strict JSON: infinities become "inf", NaN becomes null."""
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(_clean(doc), allow_nan=False) + "\n")
    sys.stdout.flush()


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {s!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _seed(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {s!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative")
    return v


def _tol(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {s!r}")
    if not (math.isfinite(v) and v >= 0):
        raise argparse.ArgumentTypeError("tolerance must be finite and non-negative")
    return v


def _field(s: str) -> Field:
    try:
        return Field.parse(s)
    except (ValueError, DomainError):
        raise argparse.ArgumentTypeError(f"unknown field {s!r}; choose from R, C, H, O")


def _field_list(s: str) -> tuple:
    return tuple(_field(p) for p in s.split(",") if p.strip())


def _suite_list(s: str) -> tuple:
    names = tuple(p.strip() for p in s.split(",") if p.strip())
    for name in names:
        if name not in SUITES:
            raise argparse.ArgumentTypeError(
                f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return names


def _params(s: str) -> list:
    parts = [p for p in s.split(",") if p.strip()]
    try:
        return [parse_parameter(p) for p in parts]
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ptolemy", description="Cross-ratios and Ptolemaean checks "
                     "on the boundaries of K-hyperbolic spaces, K in {R, C, H, O}.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    cr = sub.add_parser("cross-ratio", help="cross-ratios of a quadruple read as JSON")
    cr.add_argument("--input", default="-", metavar="PATH|-")

    ck = sub.add_parser("check", help="Ptolemaean inequality check of a quadruple")
    ck.add_argument("--input", default="-", metavar="PATH|-")
    ck.add_argument("--tol", type=_tol, default=1e-9)

    ve = sub.add_parser("verify", help="run seeded verification campaigns")
    ve.add_argument("--suite", type=_suite_list, default=SUITES, metavar="NAME[,NAME...]")
    ve.add_argument("--field", type=_field_list, default=(Field.R, Field.C, Field.H, Field.O),
                    metavar="{R,C,H,O}[,...]")
    ve.add_argument("--n", type=_positive_int, default=2)
    ve.add_argument("--samples", type=_positive_int, default=1000)
    ve.add_argument("--seed", type=_seed, default=0)
    ve.add_argument("--tol", type=_tol, default=None,
                    help="override every tolerance of the selected suites")
    ve.add_argument("--threads", type=_positive_int, default=1)

    rc = sub.add_parser("rcircle", help="points of an R-circle and their Ptolemy check")
    rc.add_argument("--field", type=_field, required=True, metavar="{R,C,H,O}")
    rc.add_argument("--n", type=_positive_int, default=2)
    rc.add_argument("--params", type=_params, default=[0.0, 1.0, 2.0, 3.0],
                    metavar="T1,T2,T3,T4", help="curve parameters; 'inf' allowed")
    rc.add_argument("--seed", type=_seed, default=None,
                    help="map the standard circle by a random motion drawn from this seed")
    rc.add_argument("--tol", type=_tol, default=1e-7)
    return parser


def _cmd_cross_ratio(args) -> int:
    q = Quadruple.from_json(_read_json(args.input))
    _emit(cross_record(q))
    return 0


def _cmd_check(args) -> int:
    q = Quadruple.from_json(_read_json(args.input))
    report = ptolemy_check(q, args.tol)
    _emit(report.to_json())
    return 1 if report.verdict == "violation" else 0


def _cmd_verify(args) -> int:
    config = CampaignConfig(suites=args.suite, fields=args.field, n=args.n,
                            samples=args.samples, seed=args.seed, tol=args.tol,
                            threads=args.threads)
    log.info("running %s on %s", ",".join(config.suites),
             ",".join(f.name for f in config.fields))
    summary = verify_campaign(config)
    for r in summary.reports:
        log.info("%s %s n=%s: %d violations", r.suite, r.field, r.n, r.violations)
    _emit(summary.to_json())
    return 0 if summary.passed else 1


def _cmd_rcircle(args) -> int:
    field = args.field
    n = 2 if field is Field.O else args.n
    ts = args.params
    if len(ts) != 4:
        raise UsageError(f"--params needs four values, got {len(ts)}")
    if args.seed is None:
        circle = RCircle(field, n, Motion.identity(field, n))
    else:
        circle = RCircle.random(field, n, args.seed)
    expected = separation(*ts)
    q = Quadruple(*(circle.point(t) for t in ts))
    report = ptolemy_check(q, args.tol)
    matched = report.pairing == expected and not report.flagged
    _emit({
        "field": field.name,
        "n": n,
        "params": ts,
        "motion": circle.motion.to_json(),
        "points": [p.to_json() for p in q.points],
        "distances": distance_table(q).tolist(),
        "separation": expected,
        "expected_verdict": "equality_case_" + expected[5:],
        "check": report.to_json(),
    })
    return 0 if matched else 1


_COMMANDS = {"cross-ratio": _cmd_cross_ratio, "check": _cmd_check,
             "verify": _cmd_verify, "rcircle": _cmd_rcircle}


def run(argv: Optional[Sequence[str]] = None) -> int:
    _configure_logging()
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except (UsageError, ConfigError, DomainError) as exc:
        log.error("%s", exc)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
