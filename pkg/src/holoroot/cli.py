"""Command-line front end.

    holoroot expand --k 2 --order 4 --format json
    holoroot eval --k 2 --order 8 --sigma 0.01,0.02
    holoroot verify recurrences --k 2 --order 8
    holoroot newton-table --k 3 --max-m 6

Exit codes: 0 ok, 1 a verification check failed, 2 usage error, 3 I/O error,
4 Newton failure or sigma outside the documented basin.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import taylor, verify
from .oracle import BASIN_RADIUS, NewtonError, ShiftedPolynomial, in_basin, newton_root
from .polyring import format_poly, to_fraction
from .weyl import dn_polynomial, newton_polynomial

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_NEWTON = 0, 1, 2, 3, 4
FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    k: int
    Q: int = 4
    sigma: tuple[Fraction, ...] | None = None
    output_path: str | None = None
    format: str = "text"
    verify_target: str | None = None
    max_m: int = 12

    def __post_init__(self):
        if self.k < 2:
            raise UsageError(f"--k must be >= 2, got {self.k}")
        if self.Q < 0:
            raise UsageError(f"--order must be >= 0, got {self.Q}")
        if self.max_m < 0:
            raise UsageError(f"--max-m must be >= 0, got {self.max_m}")
        if self.sigma is not None and len(self.sigma) != self.k:
            raise UsageError(f"--sigma has {len(self.sigma)} entries, expected k={self.k}")
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")


def parse_sigma(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(to_fraction(v.strip()) for v in text.split(","))
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(f"bad --sigma {text!r}: {exc}") from None


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def cmd_expand(cfg: RunConfig) -> int:
    t = taylor.build_table(cfg.k, cfg.Q)
    body = {"json": taylor.to_json, "csv": taylor.to_csv, "text": taylor.to_text}[cfg.format](t)
    _emit(body, cfg.output_path)
    print(f"k={t.k} Q={t.Q} entries={len(t)}", file=sys.stderr if cfg.output_path is None else sys.stdout)
    return EXIT_OK


def _fmt(z: complex) -> str:
    return f"{z.real:.17g}" if z.imag == 0 else f"{z.real:.17g}{z.imag:+.17g}j"


def cmd_eval(cfg: RunConfig) -> int:
    if cfg.sigma is None:
        raise UsageError("eval needs --sigma")
    t = taylor.build_table(cfg.k, cfg.Q)
    approx = taylor.root_series(t).evaluate(list(cfg.sigma))
    if not in_basin(cfg.sigma):
        print(f"warning: |sigma|_inf exceeds the basin bound {BASIN_RADIUS}; "
              "the root near -1 is not guaranteed", file=sys.stderr)
        return EXIT_NEWTON
    try:
        root = newton_root(ShiftedPolynomial(cfg.k, cfg.sigma))
    except NewtonError as exc:
        print(f"warning: Newton iteration failed: {exc}", file=sys.stderr)
        return EXIT_NEWTON
    series = complex(approx)
    out = {
        "k": cfg.k,
        "Q": cfg.Q,
        "sigma": [str(s) for s in cfg.sigma],
        "series": _fmt(series),
        "series_exact": str(approx),
        "newton": _fmt(root),
        "difference": f"{abs(series - root):.6e}",
    }
    if cfg.format == "json":
        text = json.dumps(out, indent=2) + "\n"
    else:
        text = "".join(f"{key}={out[key] if key != 'sigma' else ','.join(out[key])}\n" for key in out)
    _emit(text, cfg.output_path)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    target = cfg.verify_target or "all"
    if target not in verify.TARGETS + ("all",):
        raise UsageError(f"unknown verify target {target!r}")
    reports = verify.run(target, cfg.k, cfg.Q, cfg.max_m)
    lines = [line for r in reports for line in r.lines()]
    ok = all(r.ok for r in reports)
    lines.append("OK" if ok else "FAILED")
    _emit("\n".join(lines) + "\n", cfg.output_path)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_newton_table(cfg: RunConfig) -> int:
    rows = []
    for m in range(cfg.max_m + 1):
        rows.append({"m": m, "N": format_poly(newton_polynomial(cfg.k, m)),
                     "DN": format_poly(dn_polynomial(cfg.k, m))})
    if cfg.format == "json":
        text = json.dumps({"k": cfg.k, "max_m": cfg.max_m, "rows": rows}, indent=2) + "\n"
    elif cfg.format == "csv":
        text = "m,N,DN\n" + "".join(f'{r["m"]},"{r["N"]}","{r["DN"]}"\n' for r in rows)
    else:
        text = "".join(f"N_{r['m']} = {r['N']}\nDN_{r['m']} = {r['DN']}\n" for r in rows)
    _emit(text, cfg.output_path)
    return EXIT_OK


COMMANDS = {"expand": cmd_expand, "eval": cmd_eval, "verify": cmd_verify, "newton-table": cmd_newton_table}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--k", type=int, required=True, help="degree of the universal equation")
    common.add_argument("--order", type=int, default=None, help="truncation order Q")
    common.add_argument("--sigma", type=parse_sigma, default=None, help="v1,...,vk as p/q or decimals")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--max-m", type=int, default=12, help="Newton-basis depth")
    common.add_argument("--target", default=None, help="verify suite")

    parser = _Parser(prog="holoroot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("expand", parents=[common], help="build and export the coefficient table")
    sub.add_parser("eval", parents=[common], help="compare the truncated series with Newton's root")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", nargs="?", default=None, choices=verify.TARGETS + ("all",))
    sub.add_parser("newton-table", parents=[common], help="dump N_m and DN_m for m <= max-m")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "suite", None) and args.target and args.suite != args.target:
            raise UsageError("conflicting positional suite and --target")
        default_q = 8 if args.command in ("eval", "verify") else 4
        cfg = RunConfig(
            k=args.k,
            Q=default_q if args.order is None else args.order,
            sigma=args.sigma,
            output_path=args.out,
            format=args.format,
            verify_target=getattr(args, "suite", None) or args.target,
            max_m=args.max_m,
        )
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"holoroot: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"holoroot: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
