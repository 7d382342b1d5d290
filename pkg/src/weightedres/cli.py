"""Command-line interface.

One verb per pipeline; every verb emits JSON by default (rationals as
strings), `--format text` gives a short human rendering, and `staircase`
additionally supports `--format svg`.  Exit codes: 0 success, 1 domain
errors (inadmissible input, non-integral center, irrational point, ...),
2 parse or resource errors.  `batch FILE` runs one command per line,
ignoring blank lines and `#` comments.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys

from . import blowup, errors, invariant, textio, tschirnhaus
from .centers import rounding
from .staircase import staircase as render_staircase
from .errors import DomainError, ParseError, ResourceLimitError, WeightedResError
from .tubes import constant_tube, tube_center_correspondence


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weightedres",
        description="Exact multiorder invariants, weighted centers and blowups.",
    )
    parser.add_argument(
        "--degree-cap",
        type=int,
        default=None,
        help="total-degree guard for polynomial expansions",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(verb, *, help):
        p = sub.add_parser(verb, help=help)
        p.add_argument("--format", choices=("json", "text", "svg"), default="json")
        p.add_argument("--output", default=None, help="write the result to a file")
        return p

    p = add("mord", help="multiorder invariant of an ideal at the origin")
    p.add_argument("ideal")

    p = add("center", help="invariant, canonical center and contact chain")
    p.add_argument("ideal")

    p = add("round", help="monomial rounding of a center")
    p.add_argument("center")

    p = add("tschirnhaus", help="verify or construct a certificate for a center")
    p.add_argument("ideal")
    p.add_argument("center")
    p.add_argument("--make", action="store_true", help="run the constructive path")

    p = add("principalize", help="iterated weighted blowups until the ideal is trivial")
    p.add_argument("ideal")
    p.add_argument("--max-steps", type=int, default=10)

    p = add("embed-resolve", help="strict-transform resolution of a subscheme")
    p.add_argument("ideal")
    p.add_argument("--codim", type=int, required=True)
    p.add_argument("--max-steps", type=int, default=10)

    p = add("tube", help="tube algebra of a center or a bare width")
    p.add_argument("input", help="a center like [x^2,y^3] or a width like (5,7)")

    p = add("rees", help="graded generators of the root Rees algebra")
    p.add_argument("center")
    p.add_argument("--root", type=int, required=True, help="the root order N")
    p.add_argument("--degree", type=int, default=None)

    p = add("staircase", help="staircase diagram of a two-entry width")
    p.add_argument("width")
    p.add_argument("--overlay", default=None)

    p = sub.add_parser("batch", help="run one command per line from a file")
    p.add_argument("file")
    return parser


def _emit(payload, args) -> str:
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=False)
    else:
        text = payload if isinstance(payload, str) else json.dumps(payload, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        return ""
    return text


def _run_verb(args) -> str:
    if args.verb == "mord":
        result = invariant.multiorder(textio.parse_ideal(args.ideal))
        if args.format == "text":
            return _emit(str(result.mord), args)
        return _emit({"mord": textio.multiorder_json(result.mord)}, args)

    if args.verb == "center":
        result = invariant.multiorder(textio.parse_ideal(args.ideal))
        if args.format == "text":
            body = str(result.center) if result.center else "(unit ideal)"
            return _emit(f"mord {result.mord}  center {body}", args)
        return _emit(textio.invariant_json(result), args)

    if args.verb == "round":
        center = textio.parse_center(args.center)
        ideal = rounding(center)
        if args.format == "text":
            return _emit(str(ideal), args)
        return _emit({"generators": textio.ideal_json(ideal)}, args)

    if args.verb == "tschirnhaus":
        center = textio.parse_center(args.center)
        ideal = textio.parse_ideal(args.ideal, center.ambient)
        if args.make:
            cert = tschirnhaus.make_tschirnhaus(ideal, center)
        else:
            cert = tschirnhaus.verify_tschirnhaus(ideal, center)
        if args.format == "text":
            return _emit("certificate found" if cert else "no certificate", args)
        return _emit({"certificate": textio.certificate_json(cert)}, args)

    if args.verb == "principalize":
        trace = blowup.principalize(
            textio.parse_ideal(args.ideal), max_steps=args.max_steps
        )
        if args.format == "text":
            return _emit(
                f"status {trace.status} after {trace.step_count()} steps", args
            )
        return _emit(textio.trace_json(trace), args)

    if args.verb == "embed-resolve":
        trace = blowup.embedded_resolve(
            textio.parse_ideal(args.ideal), args.codim, max_steps=args.max_steps
        )
        if args.format == "text":
            return _emit(
                f"status {trace.status} after {trace.step_count()} steps", args
            )
        return _emit(textio.trace_json(trace), args)

    if args.verb == "tube":
        text = args.input.strip()
        if text.startswith("["):
            tube = tube_center_correspondence(textio.parse_center(text))
        else:
            tube = constant_tube(textio.parse_multiorder(text))
        return _emit(textio.tube_json(tube), args)

    if args.verb == "rees":
        center = textio.parse_center(args.center)
        grading = blowup.rees_generators(center, args.root, args.degree)
        payload = {
            str(n): [
                "*".join(
                    f"{v}^{e}" if e > 1 else v
                    for v, e in zip(center.coords, a)
                    if e
                )
                or "1"
                for a in gens
            ]
            for n, gens in grading.items()
        }
        return _emit(payload, args)

    if args.verb == "staircase":
        d = textio.parse_multiorder(args.width)
        overlay = textio.parse_multiorder(args.overlay) if args.overlay else None
        fmt = "text" if args.format == "json" else args.format
        return _emit(render_staircase(d, overlay, fmt), args)

    raise ParseError(f"unknown verb {args.verb!r}")


def _error_payload(err: WeightedResError) -> str:
    return json.dumps({"error": {"code": err.code, "message": str(err)}})


def main(argv: list[str] | None = None) -> int:
    errors.set_degree_cap(errors.degree_cap_from_env())
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.degree_cap is not None:
        errors.set_degree_cap(args.degree_cap)

    if args.verb == "batch":
        status = 0
        try:
            with open(args.file, encoding="utf-8") as fh:
                lines = fh.readlines()
        except OSError as err:
            print(json.dumps({"error": {"code": "parse-error", "message": str(err)}}))
            return 2
        for line in lines:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            code = main(shlex.split(line))
            status = max(status, code)
        return status

    try:
        out = _run_verb(args)
        if out:
            print(out)
        return 0
    except (ParseError, ResourceLimitError) as err:
        print(_error_payload(err))
        return 2
    except DomainError as err:
        print(_error_payload(err))
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
