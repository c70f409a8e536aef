"""Command-line front end.

Every subcommand prints one JSON document (sorted keys, integers as decimal
strings) and exits 0; domain errors print ``{"error": code, "detail": ...}``
and exit 1; malformed invocations exit 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import MutableMapping
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterator, Sequence

from .curves import (
    CurveDescriptor,
    EllipticCurveData,
    classify,
    curve_validate,
    descriptor,
    point_count,
    projective_line,
)
from .errors import BadSpec, CMKitError, NoMatch, NotOrdinary
from .motive import assemble_zeta, cm_tensor_decompose, decomposition_report, match_decompositions
from .quadfield import QuadElement, QuadField, WeilNumber, ordinary_weil_integer, padic_valuations, verify_lemma62
from .ranks import tate_report, bb_rank, l_cohomological, l_euler_check, picard_decomposition, picard_number

CACHE_ENV = "CMKIT_CACHE"


class UsageError(Exception):
    pass


class PointCountCache(MutableMapping):
    """Append-only line-delimited JSON store of ``|E(F_{q^n})|``.

    Records are ``{"curve_id": ..., "n": ..., "count": ...}``. Unreadable
    lines are skipped with a warning; a later record for the same key is
    ignored, so the first write wins.
    """

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self._data: dict[tuple[str, int], int] = {}
        if self.path.exists():
            with self.path.open(encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, start=1):
                    if not line.strip():
                        continue
                    try:
                        rec = json.loads(line)
                        key = (str(rec["curve_id"]), int(rec["n"]))
                        count = int(rec["count"])
                    except (ValueError, KeyError, TypeError):
                        print(f"cmkit: skipping corrupt cache line {lineno} in {self.path}", file=sys.stderr)
                        continue
                    self._data.setdefault(key, count)

    def __getitem__(self, key: tuple[str, int]) -> int:
        return self._data[key]

    def __setitem__(self, key: tuple[str, int], count: int) -> None:
        if key in self._data:
            return
        self._data[key] = count
        rec = {"count": str(count), "curve_id": key[0], "n": str(key[1])}
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")

    def __delitem__(self, key) -> None:
        raise TypeError("the point-count cache is append-only")

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)


def to_jsonable(obj: Any) -> Any:
    """Integers and fractions become decimal strings; bools stay bools."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(obj)
    if isinstance(obj, WeilNumber):
        return to_jsonable(obj.value)
    if isinstance(obj, QuadElement):
        return {"x": str(obj.x), "y": str(obj.y)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2) + "\n"


# Argument loading


def _load_json_arg(value: str) -> Any:
    """Inline JSON, or ``@path`` to read it from a file."""
    try:
        if value.startswith("@"):
            return json.loads(Path(value[1:]).read_text(encoding="utf-8"))
        return json.loads(value)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON argument {value!r}: {exc}") from exc


def _load_curve(path: str | None, flag: str) -> EllipticCurveData | CurveDescriptor:
    if path is None:
        raise UsageError(f"{flag} is required")
    try:
        spec = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read curve file {path}: {exc}") from exc
    return curve_validate(spec)


def _fiber(args) -> EllipticCurveData:
    E = _load_curve(args.curve, "--curve/--fiber")
    if not isinstance(E, EllipticCurveData):
        raise BadSpec("the fiber must be a short Weierstrass elliptic curve")
    return E


def _base(args, E: EllipticCurveData, required: bool = False) -> CurveDescriptor | None:
    if args.base is None:
        if required:
            raise UsageError("--base is required")
        return None
    if args.base in ("P1", "p1"):
        return projective_line(E.q)
    C = _load_curve(args.base, "--base")
    C = descriptor(C) if isinstance(C, EllipticCurveData) else C
    if C.q != E.q:
        raise BadSpec(f"base curve is over F_{C.q}, fiber over F_{E.q}")
    return C


def _cache(args) -> MutableMapping | None:
    path = args.cache or os.environ.get(CACHE_ENV)
    return PointCountCache(path) if path else None


# Subcommands


def cmd_classify(args) -> dict:
    E = _fiber(args)
    info = classify(E)
    out = {
        "ordinary": info["ordinary"],
        "trace": info["trace"],
        "q": info["q"],
        "cm_disc": info["cm_disc"],
        "curve_id": E.curve_id,
    }
    if E.ordinary:
        out.update(
            cm_m=info["m"],
            field_disc=info["field_disc"],
            conductor=info["conductor"],
            alpha=info["alpha"],
        )
    return out


def cmd_zeta(args) -> dict:
    E = _fiber(args)
    base = _base(args, E)
    Z = assemble_zeta(E, args.power, base)
    out = Z.to_json()
    if args.order:
        out["point_counts"] = Z.point_counts(args.order)
        if base is None:
            cache = _cache(args)
            direct = [point_count(E, n, cache=cache) ** args.power for n in range(1, args.order + 1)]
            out["fiber_power_counts_agree"] = direct == out["point_counts"]
    return out


def cmd_decompose(args) -> dict:
    if args.report:
        return decomposition_report(args.g)
    return cm_tensor_decompose(args.g, args.level).to_json()


def cmd_tate_rank(args) -> dict:
    E = _fiber(args)
    return tate_report(E, args.power, args.codim, _base(args, E)).to_json()


def cmd_picard(args) -> dict:
    E = _fiber(args)
    base = _base(args, E)
    return {
        "picard_number": picard_number(E, args.power, base),
        "decomposition": picard_decomposition(E, args.power, base),
    }


def cmd_bb_rank(args) -> dict:
    E = _fiber(args)
    C = _base(args, E, required=True)
    out = bb_rank(E, args.power, args.codim, C).to_json()
    out["l_function"] = l_cohomological(E, args.power, args.codim, C).to_json()
    return out


def cmd_lcheck(args) -> dict:
    E = _fiber(args)
    C = _base(args, E, required=True)
    counts = None
    if C.elliptic is not None:
        cache = _cache(args)
        counts = [point_count(C.elliptic, n, cache=cache) for n in range(1, args.order + 1)]
    return l_euler_check(E, args.power, args.codim, C, args.order, counts).to_json()


def cmd_weil_verify(args) -> dict:
    E = _fiber(args)
    if not E.ordinary:
        raise NotOrdinary(f"trace {E.trace} is divisible by {E.p}")
    return {
        "valuations": list(padic_valuations(E.alpha, E.p)),
        "report": verify_lemma62(E.alpha, args.max_r, args.max_s).to_json(),
    }


def _entries(value: str, flag: str) -> list[tuple[int, int, int]]:
    data = _load_json_arg(value)
    try:
        return [tuple(int(x) for x in item) for item in data]
    except (TypeError, ValueError) as exc:
        raise UsageError(f"{flag} must be a list of [m, r, s] triples") from exc


def cmd_match(args) -> dict:
    left = _entries(args.left, "--left")
    right = _entries(args.right, "--right")
    alphas = {}
    for m, r, _ in left + right:
        if r >= 1 and m not in alphas:
            alphas[m] = ordinary_weil_integer(QuadField(m), args.q)
    sigma = match_decompositions(left, right, args.q, alphas)
    return {"sigma": sigma, "alphas": {str(m): a for m, a in sorted(alphas.items())}}


# Parser


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text!r} is negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--cache", help=f"point-count cache file (default: ${CACHE_ENV})")

    def fiber(p):
        p.add_argument("--curve", "--fiber", dest="curve", help="curve JSON file")

    def base(p):
        p.add_argument("--base", help="base curve JSON file, or P1")

    parser = _Parser(prog="cmkit", description="Frobenius invariants of powers of CM elliptic curves.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common])
    fiber(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("zeta", parents=[common])
    fiber(p)
    base(p)
    p.add_argument("--power", type=_nonnegative, default=1)
    p.add_argument("--order", type=_nonnegative, default=0, help="also list point counts up to this degree")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("decompose", parents=[common])
    p.add_argument("--g", type=_nonnegative, required=True)
    p.add_argument("--level", choices=["F", "Q"], default="F")
    p.add_argument("--report", action="store_true", help="compare with the printed recurrence")
    p.set_defaults(func=cmd_decompose)

    for name, func in (("tate-rank", cmd_tate_rank), ("bb-rank", cmd_bb_rank)):
        p = sub.add_parser(name, parents=[common])
        fiber(p)
        base(p)
        p.add_argument("--power", type=_nonnegative, default=1)
        p.add_argument("--codim", type=_nonnegative, default=1)
        p.set_defaults(func=func)

    p = sub.add_parser("picard", parents=[common])
    fiber(p)
    base(p)
    p.add_argument("--power", type=_nonnegative, default=1)
    p.set_defaults(func=cmd_picard)

    p = sub.add_parser("lcheck", parents=[common])
    fiber(p)
    base(p)
    p.add_argument("--power", type=_nonnegative, default=1)
    p.add_argument("--codim", type=_nonnegative, default=1)
    p.add_argument("--order", type=_nonnegative, choices=range(1, 13), default=6, metavar="N")
    p.set_defaults(func=cmd_lcheck)

    p = sub.add_parser("weil-verify", parents=[common])
    fiber(p)
    p.add_argument("--max-r", type=_nonnegative, default=5)
    p.add_argument("--max-s", type=_nonnegative, default=5)
    p.set_defaults(func=cmd_weil_verify)

    p = sub.add_parser("match", parents=[common])
    p.add_argument("--q", type=_nonnegative, required=True)
    p.add_argument("--left", required=True, help="JSON list of [m, r, s], or @file")
    p.add_argument("--right", required=True, help="JSON list of [m, r, s], or @file")
    p.set_defaults(func=cmd_match)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"cmkit: error: {exc}", file=sys.stderr)
        return 2
    except CMKitError as exc:
        err = {"error": exc.code, "detail": str(exc)}
        if isinstance(exc, NoMatch) and exc.polynomial is not None:
            err["polynomial"] = list(exc.polynomial)
            err["index"] = exc.index
        sys.stdout.write(dumps(err))
        return 1
    sys.stdout.write(dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
