"""Command-line front end; all input is exact rationals, all output JSON.

Commands: ``generator`` (time-t generator entries), ``mpolys``
(martingale polynomials), ``transition`` (two-time transition entries),
``free-phi`` (moment series coefficients of the free family plus a
residual status), ``moments`` (moments and Hankel determinants of the
time-t law and the underlying time-zero law), ``special poisson`` /
``special bessel`` (closed forms), and ``verify`` (the full check
suite).

Exit codes: 0 on success or an all-pass report, 1 when ``verify``
reports any failing check, 2 on input or solver errors, which are
rendered as a structured JSON document on standard error.  ``verify``
is the only command whose exit code reflects mathematics; the others
fail only on bad input.

The depth ceiling defaults to 512 and can be overridden through the
HARNESS_DEPTH_LIMIT environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import AlgebraError, InputError
from .exact import format_rational, parse_rational
from .free import (
    FreeParams,
    cauchy_transforms,
    hankel_determinants,
    measure_moments,
    mgf_by_recursion,
    mgf_equation_residual,
)
from .harness import (
    HarnessParams,
    generator_from_commutator,
    martingale_polys,
    solve_commutator,
    transition,
    verify,
)
from .special import poisson, quantum_bessel

_DEFAULT_DEPTH_CEILING = 512

# widen argparse's idea of a negative number so that bare option values
# like "-1/20" are not mistaken for option flags
_NEGATIVE_RATIONAL = re.compile(r"^-\d+(/\d+)?$")


class _Parser(argparse.ArgumentParser):
    """Parser that raises InputError instead of calling sys.exit."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = _NEGATIVE_RATIONAL

    def error(self, message):
        raise InputError(message)


def _depth_ceiling() -> int:
    raw = os.environ.get("HARNESS_DEPTH_LIMIT")
    if raw is None:
        return _DEFAULT_DEPTH_CEILING
    try:
        value = int(raw)
    except ValueError:
        raise InputError(
            "HARNESS_DEPTH_LIMIT must be an integer", value=raw
        ) from None
    if value < 2:
        raise InputError("HARNESS_DEPTH_LIMIT must be at least 2", value=raw)
    return value


@dataclass(frozen=True)
class JobSpec:
    """One parsed invocation: a command, its rational parameters, the
    times it acts at, the working depth, and where the JSON goes."""

    command: str
    params: Mapping[str, Fraction]
    times: tuple
    depth: int
    output: Optional[str] = None
    variant: Optional[str] = None

    def __post_init__(self):
        ceiling = _depth_ceiling()
        if not 2 <= self.depth <= ceiling:
            raise InputError(
                f"depth must lie in [2, {ceiling}]", depth=self.depth
            )


_HARNESS_NAMES = ("eta", "theta", "sigma", "tau", "gamma")
_FREE_NAMES = ("eta", "theta", "sigma", "tau")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="qharness",
        description="Exact computations for quadratic harnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def rational_flags(p, names):
        for name in names:
            p.add_argument(f"--{name}", default="0", metavar="P/Q")

    def tail_flags(p, time=False, times=False):
        if time:
            p.add_argument("--t", required=True, metavar="P/Q")
        if times:
            p.add_argument(
                "--times", required=True, metavar="P/Q,P/Q,...",
                help="comma-separated list of positive times",
            )
        p.add_argument("--depth", type=int, required=True)
        p.add_argument("--output", "-o", default=None, metavar="PATH")

    p = sub.add_parser("generator", help="generator entries at one time")
    rational_flags(p, _HARNESS_NAMES)
    tail_flags(p, time=True)

    p = sub.add_parser("mpolys", help="martingale polynomials at one time")
    rational_flags(p, _HARNESS_NAMES)
    tail_flags(p, time=True)

    p = sub.add_parser("transition", help="transition entries between two times")
    rational_flags(p, _HARNESS_NAMES)
    p.add_argument("--s", default="0", metavar="P/Q")
    tail_flags(p, time=True)

    p = sub.add_parser(
        "free-phi", help="free-family moment series and equation residual"
    )
    rational_flags(p, _FREE_NAMES)
    tail_flags(p, time=True)

    p = sub.add_parser(
        "moments", help="moments, Hankel determinants, and transform agreement"
    )
    rational_flags(p, _FREE_NAMES)
    tail_flags(p, time=True)

    p = sub.add_parser("special", help="closed-form families")
    fam = p.add_subparsers(dest="variant", required=True, metavar="family")
    q = fam.add_parser("poisson", help="kernel and generator, shift scale theta")
    q.add_argument("--theta", default="0", metavar="P/Q")
    tail_flags(q)
    q = fam.add_parser("bessel", help="kernel and generator with x-linear weight")
    q.add_argument("--eta", default="0", metavar="P/Q")
    q.add_argument("--theta", default="0", metavar="P/Q")
    tail_flags(q, time=True)

    p = sub.add_parser("verify", help="run every check and report")
    rational_flags(p, _HARNESS_NAMES)
    tail_flags(p, times=True)

    return parser


def _split_times(raw: str) -> tuple:
    parts = [piece.strip() for piece in raw.split(",")]
    if not parts or any(not piece for piece in parts):
        raise InputError("times must be a comma-separated list of rationals", value=raw)
    return tuple(parse_rational(piece) for piece in parts)


def parse_args(argv: Optional[Sequence[str]] = None) -> JobSpec:
    ns = build_parser().parse_args(argv)
    command = ns.command
    variant = getattr(ns, "variant", None)

    if command in ("generator", "mpolys", "transition", "verify"):
        params = {k: parse_rational(getattr(ns, k)) for k in _HARNESS_NAMES}
    elif command in ("free-phi", "moments"):
        params = {k: parse_rational(getattr(ns, k)) for k in _FREE_NAMES}
    elif variant == "poisson":
        params = {"theta": parse_rational(ns.theta)}
    else:
        params = {
            "eta": parse_rational(ns.eta),
            "theta": parse_rational(ns.theta),
        }

    if command == "transition":
        times = (parse_rational(ns.s), parse_rational(ns.t))
    elif command == "verify":
        times = _split_times(ns.times)
    elif command == "special" and variant == "poisson":
        times = ()
    else:
        times = (parse_rational(ns.t),)

    return JobSpec(
        command=command,
        params=params,
        times=times,
        depth=ns.depth,
        output=ns.output,
        variant=variant,
    )


def run(spec: JobSpec) -> tuple[int, dict]:
    """Execute one job; returns (exit code, JSON document)."""
    if spec.command == "generator":
        h = solve_commutator(HarnessParams(**spec.params), spec.times[0], spec.depth)
        return 0, generator_from_commutator(h).to_json_dict()

    if spec.command == "mpolys":
        t = spec.times[0]
        h = solve_commutator(HarnessParams(**spec.params), t, spec.depth)
        return 0, martingale_polys(h, t, spec.depth).to_json_dict()

    if spec.command == "transition":
        s, t = spec.times
        seq = transition(HarnessParams(**spec.params), s, t, spec.depth)
        return 0, seq.to_json_dict()

    if spec.command == "free-phi":
        fp = FreeParams(**spec.params)
        t = spec.times[0]
        series = mgf_by_recursion(fp, t, spec.depth)
        residual = mgf_equation_residual(fp, t, series)
        return 0, {
            "coefficients": [format_rational(c) for c in series.coeffs],
            "residual_zero": all(c == 0 for c in residual.coeffs),
        }

    if spec.command == "moments":
        fp = FreeParams(**spec.params)
        t = spec.times[0]
        nu = measure_moments(fp, t, spec.depth)
        transforms = cauchy_transforms(fp, t, spec.depth + 1)
        return 0, {
            "nu": nu.to_json_dict(),
            "pi": transforms.pi_moments.to_json_dict(),
            "nu_hankel": [format_rational(d) for d in hankel_determinants(nu)],
            "pi_hankel": [
                format_rational(d)
                for d in hankel_determinants(transforms.pi_moments)
            ],
            "routes_agree": transforms.routes_agree,
        }

    if spec.command == "special":
        if spec.variant == "poisson":
            pair = poisson(spec.params["theta"], spec.depth)
        else:
            pair = quantum_bessel(
                spec.params["eta"], spec.params["theta"], spec.times[0], spec.depth
            )
        return 0, pair.to_json_dict()

    if spec.command == "verify":
        report = verify(HarnessParams(**spec.params), spec.times, spec.depth)
        return (0 if report.passed else 1), report.to_json_dict()

    raise InputError(f"unknown command {spec.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        spec = parse_args(argv)
        code, doc = run(spec)
    except AlgebraError as exc:
        json.dump(exc.payload(), sys.stderr, indent=2)
        sys.stderr.write("\n")
        return 2
    text = json.dumps(doc, indent=2) + "\n"
    if spec.output is None:
        sys.stdout.write(text)
    else:
        with open(spec.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code
