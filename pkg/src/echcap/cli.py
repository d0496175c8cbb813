"""Command line interface.

Usage:
    echcap capacities "polydisk(1,1)" --kmax 11
    echcap capacities "toric(euclidean)" --kmax 3
    echcap embed "ellipsoid(2,1)" "ball(3/2)" --kmax 20
    echcap fbound 5 --dmax 10
    echcap gbound 7/2 --dmax 6
    echcap pack "1/2,1/2" --dmax 6
    echcap biran "1/2,1/2" --dmax 10
    echcap asym "ball(1)" --kmax 10000 --stride 100 --format csv
    echcap qw "ellipsoid(1,2)" --kmax 1000

Domain specs:  ball(a) | ellipsoid(a,b) | polydisk(a,b) | toric(euclidean)
| toric(l1:a,b) | toric(poly:[[x,y],...]) | union(spec;spec;...)
with sizes written as integers or p/q.

Exit codes: 0 success / no obstruction, 1 obstruction or violation found,
2 usage or parse error, 3 enumeration budget exceeded.  All payloads are
deterministic; timestamps only ever go to the optional --meta sidecar.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from fractions import Fraction
from typing import List, Optional, Tuple

from . import asymptotics, obstructions
from .capacities import (INTERIOR_STRICT, WEAK, capacities,
                         ellipsoid_full_capacities)
from .domains import Ball, DisjointUnion, Domain, Ellipsoid, Polydisk, ToricNorm
from .errors import (ApproxTie, SpecParseError, ToricEnumerationBudgetExceeded)
from .lattice import EUCLIDEAN, Polygonal, WeightedL1
from .values import CapacitySequence, CapacityValue

EXIT_OK = 0
EXIT_OBSTRUCTED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


# ---------------------------------------------------------------------------
# domain spec parsing
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> SpecParseError:
        return SpecParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.skip_ws()
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalnum():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a name")
        return self.text[start:self.pos]

    def rational(self) -> Fraction:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isdigit()
                                             or self.text[self.pos] == "/"):
            self.pos += 1
        token = self.text[start:self.pos]
        if not token:
            raise self.error("expected a rational number (p/q or integer)")
        try:
            value = Fraction(token)
        except (ValueError, ZeroDivisionError):
            self.pos = start
            raise self.error(f"bad rational {token!r}")
        return value

    def bracketed(self) -> str:
        """The balanced [...] block starting at the cursor, as raw text."""
        self.skip_ws()
        if self.peek() != "[":
            raise self.error("expected '['")
        depth = 0
        start = self.pos
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
                if depth == 0:
                    self.pos += 1
                    return self.text[start:self.pos]
            self.pos += 1
        raise self.error("unbalanced '['")

    def domain(self) -> Domain:
        name = self.word().lower()
        self.expect("(")
        if name == "ball":
            a = self.rational()
            self.expect(")")
            return Ball(a)
        if name == "ellipsoid":
            a = self.rational()
            self.expect(",")
            b = self.rational()
            self.expect(")")
            return Ellipsoid(a, b)
        if name == "polydisk":
            a = self.rational()
            self.expect(",")
            b = self.rational()
            self.expect(")")
            return Polydisk(a, b)
        if name == "toric":
            return self._toric()
        if name == "union":
            parts = [self.domain()]
            self.skip_ws()
            while self.peek() == ";":
                self.pos += 1
                parts.append(self.domain())
                self.skip_ws()
            self.expect(")")
            return DisjointUnion(parts)
        raise self.error(f"unknown domain {name!r}")

    def _toric(self) -> Domain:
        kind = self.word().lower()
        if kind == "euclidean":
            self.expect(")")
            return ToricNorm(EUCLIDEAN)
        if kind == "l1":
            self.expect(":")
            a = self.rational()
            self.expect(",")
            b = self.rational()
            self.expect(")")
            return ToricNorm(WeightedL1(a, b))
        if kind == "poly":
            self.expect(":")
            raw = self.bracketed()
            try:
                data = json.loads(raw)
                verts = [(int(x), int(y)) for x, y in data]
            except (ValueError, TypeError):
                raise self.error("polygon literal must be a JSON array of "
                                 "[x,y] integer pairs")
            try:
                norm = Polygonal(tuple(verts))
            except ValueError as exc:
                raise self.error(str(exc))
            self.expect(")")
            return ToricNorm(norm)
        raise self.error(f"unknown toric norm {kind!r}")


def parse_domain_spec(text: str) -> Domain:
    parser = _Parser(text)
    domain = parser.domain()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing input after domain spec")
    return domain


def _parse_size_list(text: str) -> List[Fraction]:
    out = []
    offset = 0
    for token in text.split(","):
        stripped = token.strip()
        try:
            out.append(Fraction(stripped))
        except (ValueError, ZeroDivisionError):
            raise SpecParseError(f"bad rational {stripped!r}", offset)
        offset += len(token) + 1
    return out


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def format_value(value: CapacityValue) -> str:
    """Rationals as p/q (integers bare), approximations ~ with 12 decimals."""
    if value.is_infinite:
        return "inf"
    if value.is_exact:
        f = value.frac
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    return f"~{value.value:.12f}"


def _format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _write_meta(path: Optional[str], command: str, argv: List[str]) -> None:
    if not path:
        return
    meta = {
        "command": command,
        "argv": argv,
        "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(meta, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_capacities(args, argv) -> int:
    domain = parse_domain_spec(args.spec)
    if args.full:
        if isinstance(domain, Ball):
            seq = ellipsoid_full_capacities(domain.a, domain.a, args.kmax)
        elif isinstance(domain, Ellipsoid):
            seq = ellipsoid_full_capacities(domain.a, domain.b, args.kmax)
        else:
            raise SpecParseError("--full is defined for balls and ellipsoids only", 0)
    else:
        seq = capacities(domain, args.kmax, node_limit=args.node_limit)
    rendered = [format_value(v) for v in seq.entries]
    if args.format == "json":
        _emit({
            "spec": args.spec,
            "kmax": args.kmax,
            "index_origin": seq.index_origin,
            "entries": rendered,
        })
    else:
        sys.stdout.write(",".join(rendered) + "\n")
    _write_meta(args.meta, "capacities", argv)
    return EXIT_OK


def _cmd_embed(args, argv) -> int:
    inner = parse_domain_spec(args.inner)
    outer = parse_domain_spec(args.outer)
    mode = INTERIOR_STRICT if args.mode == "strict" else WEAK
    verdict = obstructions.embedding_obstruction(
        inner, outer, args.kmax, mode, node_limit=args.node_limit)
    payload = {
        "inner": args.inner,
        "outer": args.outer,
        "kmax": args.kmax,
        "mode": args.mode,
        "status": "obstructed" if verdict.obstructed else "no_obstruction",
    }
    if verdict.obstructed:
        payload["witness_k"] = verdict.witness_k
        payload["lower"] = format_value(verdict.lower)
        payload["upper"] = format_value(verdict.upper)
    _emit(payload)
    _write_meta(args.meta, "embed", argv)
    return EXIT_OBSTRUCTED if verdict.obstructed else EXIT_OK


def _cmd_fbound(args, argv) -> int:
    try:
        a = Fraction(args.a)
    except (ValueError, ZeroDivisionError):
        raise SpecParseError(f"bad rational {args.a!r}", 0)
    bound = obstructions.f_lower_bound(a, args.dmax)
    if args.format == "json":
        _emit({"a": args.a, "dmax": args.dmax, "bound": _format_fraction(bound)})
    else:
        sys.stdout.write(_format_fraction(bound) + "\n")
    _write_meta(args.meta, "fbound", argv)
    return EXIT_OK


def _cmd_gbound(args, argv) -> int:
    try:
        a = Fraction(args.a)
    except (ValueError, ZeroDivisionError):
        raise SpecParseError(f"bad rational {args.a!r}", 0)
    bound = obstructions.g_lower_bound(a, args.dmax)
    if args.format == "json":
        _emit({"a": args.a, "dmax": args.dmax, "bound": _format_fraction(bound)})
    else:
        sys.stdout.write(_format_fraction(bound) + "\n")
    _write_meta(args.meta, "gbound", argv)
    return EXIT_OK


def _cmd_pack(args, argv) -> int:
    sizes = _parse_size_list(args.sizes)
    report = obstructions.packing_obstructions(sizes, args.dmax)
    payload = {
        "a_list": [_format_fraction(a) for a in sizes],
        "dmax": args.dmax,
        "all_hold": report.all_hold,
        "status": "no_obstruction" if report.all_hold else "obstructed",
        "inequalities": [
            {
                "multipliers": list(ineq.multipliers),
                "bound": ineq.bound,
                "lhs": _format_fraction(ineq.lhs),
                "satisfied": ineq.satisfied,
            }
            for ineq in report.inequalities
        ],
    }
    _emit(payload)
    _write_meta(args.meta, "pack", argv)
    return EXIT_OK if report.all_hold else EXIT_OBSTRUCTED


def _cmd_biran(args, argv) -> int:
    sizes = _parse_size_list(args.sizes)
    verdict = obstructions.biran_sufficiency(sizes, args.dmax)
    payload = {
        "a_list": [_format_fraction(a) for a in sizes],
        "dmax": args.dmax,
        "status": verdict.status,
    }
    if verdict.multipliers is not None:
        payload["multipliers"] = list(verdict.multipliers)
        payload["bound"] = verdict.bound
    _emit(payload)
    _write_meta(args.meta, "biran", argv)
    return EXIT_OK if verdict.sufficient else EXIT_OBSTRUCTED


def _cmd_asym(args, argv) -> int:
    domain = parse_domain_spec(args.spec)
    report = asymptotics.volume_ratio_trace(
        domain, args.kmax, args.stride, node_limit=args.node_limit)
    if report.truncated:
        sys.stderr.write(
            f"note: trace truncated at k={report.trace[-1].k}; "
            "far from the asymptotic regime\n"
        )
    if args.format == "json":
        _emit({
            "spec": args.spec,
            "kmax": args.kmax,
            "stride": args.stride,
            "vol": format_value(report.vol_x),
            "vol_boundary": format_value(report.vol_y),
            "final_ratio": report.final_ratio,
            "max_deviation_last_decade": report.max_deviation_last_decade,
            "truncated": report.truncated,
            "trace": [
                {"k": p.k, "c_k": format_value(p.c_k), "ratio": p.ratio}
                for p in report.trace
            ],
        })
    else:
        sys.stdout.write("k,c_k,ratio\n")
        for p in report.trace:
            sys.stdout.write(f"{p.k},{format_value(p.c_k)},{p.ratio:.9f}\n")
    _write_meta(args.meta, "asym", argv)
    return EXIT_OK


def _cmd_qw(args, argv) -> int:
    domain = parse_domain_spec(args.spec)
    verdict = asymptotics.qw_check(domain, args.kmax, node_limit=args.node_limit)
    payload = {
        "spec": args.spec,
        "kmax": verdict.kmax,
        "status": "holds_up_to" if verdict.holds else "violated_at",
        "exploratory": verdict.exploratory,
    }
    if not verdict.holds:
        payload["k"] = verdict.k
    _emit(payload)
    _write_meta(args.meta, "qw", argv)
    return EXIT_OK if verdict.holds else EXIT_OBSTRUCTED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="echcap",
        description="Exact capacities of four-dimensional model domains and "
                    "the embedding obstructions they induce.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--node-limit", type=int, default=None,
                       help="cap on polygon-search nodes "
                            "(default 10^7, env ECHCAP_NODE_LIMIT)")
        p.add_argument("--meta", default=None,
                       help="write a JSON sidecar with argv and a timestamp")

    p = sub.add_parser("capacities", help="capacity sequence of a domain")
    p.add_argument("spec")
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--full", action="store_true",
                   help="full spectrum (k >= 1) for balls and ellipsoids")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)
    p.set_defaults(run=_cmd_capacities)

    p = sub.add_parser("embed", help="embedding obstruction between domains")
    p.add_argument("inner")
    p.add_argument("outer")
    p.add_argument("--kmax", type=int, default=50)
    p.add_argument("--mode", choices=("weak", "strict"), default="weak")
    common(p)
    p.set_defaults(run=_cmd_embed)

    p = sub.add_parser("fbound", help="ellipsoid-into-ball lower bound")
    p.add_argument("a")
    p.add_argument("--dmax", type=int, default=10)
    p.add_argument("--format", choices=("text", "json"), default="text")
    common(p)
    p.set_defaults(run=_cmd_fbound)

    p = sub.add_parser("gbound", help="polydisk-into-ball lower bound")
    p.add_argument("a")
    p.add_argument("--dmax", type=int, default=6)
    p.add_argument("--format", choices=("text", "json"), default="text")
    common(p)
    p.set_defaults(run=_cmd_gbound)

    p = sub.add_parser("pack", help="ball packing inequalities")
    p.add_argument("sizes", help="comma-separated sizes, e.g. 1/2,1/3")
    p.add_argument("--dmax", type=int, default=6)
    common(p)
    p.set_defaults(run=_cmd_pack)

    p = sub.add_parser("biran", help="packing sufficiency conditions")
    p.add_argument("sizes", help="comma-separated sizes, e.g. 1/2,1/3")
    p.add_argument("--dmax", type=int, default=10)
    common(p)
    p.set_defaults(run=_cmd_biran)

    p = sub.add_parser("asym", help="volume-ratio convergence trace")
    p.add_argument("spec")
    p.add_argument("--kmax", type=int, default=1000)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p)
    p.set_defaults(run=_cmd_asym)

    p = sub.add_parser("qw", help="action bound check c_k < sqrt(2k vol_Y)")
    p.add_argument("spec")
    p.add_argument("--kmax", type=int, default=1000)
    common(p)
    p.set_defaults(run=_cmd_qw)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    from .lattice import clear_search_cache

    argv = list(sys.argv[1:] if argv is None else argv)
    # each invocation accounts its own search nodes, as a fresh process would
    clear_search_cache()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.run(args, argv)
    except SpecParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ToricEnumerationBudgetExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except ApproxTie as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, TypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
