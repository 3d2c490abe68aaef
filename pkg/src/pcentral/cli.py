"""Command-line front end.

Exit codes: 0 success, 1 mathematical validation failure, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .arith import EisensteinInt, ValidationError
from .clifford import PCentralPresentation, UnsupportedError, decompose
from .cubic import CubicSolution, enumerate_solutions, verify_core_identity, verify_solution
from .tournament import Tournament, build_tournament, diminish, validate_propositions

FORMAT_VERSION = 1
EXIT_OK, EXIT_INVALID, EXIT_MALFORMED = 0, 1, 2


class MalformedInput(Exception):
    pass


def dumps(doc: dict, compact: bool = False) -> str:
    doc = {"format_version": FORMAT_VERSION, **doc}
    if compact:
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc})") from None


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _parse_presentation(data) -> PCentralPresentation:
    try:
        return PCentralPresentation.from_json(data)
    except ValidationError:
        raise
    except (ValueError, TypeError) as exc:
        raise MalformedInput(f"bad presentation: {exc}") from None


def cmd_decompose(args: argparse.Namespace) -> int:
    pres = _parse_presentation(_load_json(args.input))
    dec = decompose(pres)
    _write(args.output, dumps(dec.to_json()))
    print(f"m={dec.m} degree={dec.degree} relations_checked={dec.certificate.relations_checked}", file=sys.stderr)
    return EXIT_OK


def _load_tournament(path: str) -> Tournament:
    data = _load_json(path)
    if isinstance(data, dict) and "edges" in data:
        try:
            return Tournament.from_json(data)
        except ValidationError:
            raise
        except (ValueError, TypeError) as exc:
            raise MalformedInput(f"bad tournament: {exc}") from None
    if isinstance(data, dict) and "c" in data:
        return build_tournament(_parse_presentation(data))
    raise MalformedInput(f"{path}: expected a tournament ('edges') or a presentation ('c')")


def cmd_graph(args: argparse.Namespace) -> int:
    t = _load_tournament(args.input)
    report = validate_propositions(t)
    if args.action == "analyze":
        _write(args.output, dumps(report.to_json()))
        if not report.admissible:
            for name in ("prop1", "prop2", "prop3"):
                res = getattr(report, name)
                if not res.ok:
                    print(f"{name} violated: {json.dumps(res.witness, sort_keys=True)}", file=sys.stderr)
            return EXIT_INVALID
        return EXIT_OK
    out = diminish(t)
    _write(args.output, dumps(out.to_json()))
    return EXIT_OK


def _eis_arg(text: str) -> EisensteinInt:
    try:
        return EisensteinInt.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("bound must be non-negative")
    return v


def cmd_cubic(args: argparse.Namespace) -> int:
    if args.action == "solve":
        count = 0
        with open(args.out, "w", encoding="utf-8") as fh:
            for sol in enumerate_solutions(args.gamma, args.beta, args.bound):
                fh.write(dumps(sol.to_json(), compact=True) + "\n")
                count += 1
        print(f"wrote {count} verified solutions to {args.out}", file=sys.stderr)
        return EXIT_OK

    if args.action == "verify":
        try:
            lines = Path(args.infile).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise MalformedInput(f"cannot read {args.infile}: {exc}") from None
        checked = 0
        for lineno, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
                sol = CubicSolution.from_json(data)
            except (ValueError, TypeError) as exc:
                raise MalformedInput(f"line {lineno}: {exc}") from None
            if not verify_solution(sol) or data.get("verified") is not True:
                print(f"line {lineno}: equation does not hold", file=sys.stderr)
                return EXIT_INVALID
            checked += 1
        print(f"{checked} solutions verified", file=sys.stderr)
        return EXIT_OK

    report = verify_core_identity(x_power=args.x_power, seed=args.seed)
    _write(None, dumps(report.to_json()))
    return EXIT_OK if report.agrees and report.numeric_agrees else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcentral", description="Clifford algebras of p-central sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="tensor decomposition of a presentation")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_decompose)

    g = sub.add_parser("graph", help="tournament analysis of a 3-central set")
    g.add_argument("action", choices=["analyze", "diminish"])
    g.add_argument("--input", required=True, help="tournament or p=3 presentation JSON")
    g.add_argument("--output")
    g.set_defaults(func=cmd_graph)

    c = sub.add_parser("cubic", help="cubic Diophantine solutions over Z[rho]")
    csub = c.add_subparsers(dest="action", required=True)
    s = csub.add_parser("solve")
    s.add_argument("--gamma", type=_eis_arg, required=True, help='Eisenstein literal such as "2-1*r"')
    s.add_argument("--beta", type=_eis_arg, required=True)
    s.add_argument("--bound", type=_nonneg, required=True)
    s.add_argument("--out", required=True)
    v = csub.add_parser("verify")
    v.add_argument("--in", dest="infile", required=True)
    i = csub.add_parser("identity")
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("--x-power", type=int, choices=[2, 3], default=3)
    c.set_defaults(func=cmd_cubic)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (ValidationError, UnsupportedError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
