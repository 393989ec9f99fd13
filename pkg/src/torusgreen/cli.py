"""Command-line entry point: ``torusgreen <subcommand> [options]``.

Exit status: 0 on success, 1 on usage errors, 2 on numerical or I/O failure.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import dataclass

from . import io
from .dynamics import default_viewport, render_julia
from .elliptic import build_context
from .exceptions import DegenerateLattice, PoleInput, TorusGreenError, TorusGreenWarning
from .green import coefficients, count_oracle, criterion, find_critical_points, green_value
from .ninth import solve_lambda
from .region import DEFAULT_RANGE, DEFAULT_SIZE, render_region, write_region_csv

SUBCOMMANDS = ("criterion", "count", "points", "region", "julia", "ninth", "green")
EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CliConfig:
    subcommand: str
    tau: complex | None = None
    resolution: tuple | None = None
    max_iter: int | None = None
    range: tuple | None = None
    output_path: str | None = None
    format: str = "json"
    normalize: bool = False
    z: complex | None = None
    grid: int = 128
    shade: bool = False


def _resolution(text: str) -> tuple:
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"resolution must look like 700x700, got {text!r}") from None
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError("resolution must be positive")
    return w, h


def _range(text: str) -> tuple:
    try:
        re_part, im_part = text.split(",")
        re_lo, re_hi = (float(v) for v in re_part.split(":"))
        im_lo, im_hi = (float(v) for v in im_part.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like -1:1,0.15:2.15, got {text!r}") from None
    if not (re_lo < re_hi and im_lo < im_hi):
        raise argparse.ArgumentTypeError("range bounds must be increasing")
    return (re_lo, re_hi), (im_lo, im_hi)


def _complex(text: str) -> complex:
    try:
        return io.parse_complex(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="torusgreen", description="Critical points of the Green function of a torus.")
    sub = p.add_subparsers(dest="subcommand", parser_class=_Parser)

    def common(sp, tau=True, fmt=("json",)):
        if tau:
            sp.add_argument("--tau", type=_complex, required=True, help="modulus, e.g. 0.5+0.8i")
        sp.add_argument("--out", dest="output_path", help="output file (default: stdout for text)")
        sp.add_argument("--format", choices=fmt, default=fmt[0])

    common(sub.add_parser("criterion", help="predict 3 or 5 critical points"))
    sp = sub.add_parser("count", help="brute-force count of critical points")
    common(sp)
    sp.add_argument("--grid", type=int, default=128)
    sp = sub.add_parser("points", help="locate and classify the critical points")
    common(sp)
    sp.add_argument("--grid", type=int, default=128, help="oracle grid size")
    sp = sub.add_parser("region", help="tau-plane map of the 3/5 regions")
    common(sp, tau=False, fmt=("ppm", "pgm", "csv"))
    sp.add_argument("--resolution", type=_resolution, default=DEFAULT_SIZE)
    sp.add_argument("--range", type=_range, default=DEFAULT_RANGE)
    sp = sub.add_parser("julia", help="basins of the anti-holomorphic map")
    common(sp, fmt=("ppm", "pgm"))
    sp.add_argument("--resolution", type=_resolution, default=(800, 800))
    sp.add_argument("--range", type=_range, default=None, help="viewport RE_LO:RE_HI,IM_LO:IM_HI")
    sp.add_argument("--max-iter", type=int, default=None)
    sp.add_argument("--shade", action="store_true", help="darken pixels by iteration count")
    common(sub.add_parser("ninth", help="the one-ninth constant and b0, b1"), tau=False)
    sp = sub.add_parser("green", help="evaluate the Green function")
    common(sp)
    sp.add_argument("--z", type=_complex, required=True)
    sp.add_argument("--normalize", action="store_true", help="shift so the cell mean is 0")
    return p


def _glue_values(argv):
    # "--range -1:1,..." would otherwise be read as an unknown flag
    out, it = [], iter(argv)
    for a in it:
        if a in ("--range", "--tau", "--z"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def parse_config(argv) -> CliConfig:
    ns = build_parser().parse_args(_glue_values(argv))
    if ns.subcommand is None:
        raise UsageError(f"missing subcommand; choose from {', '.join(SUBCOMMANDS)}")
    cfg = CliConfig(subcommand=ns.subcommand)
    for name in ("tau", "resolution", "max_iter", "range", "output_path", "format", "normalize",
                 "z", "grid", "shade"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if cfg.subcommand in ("region", "julia") and cfg.format in ("ppm", "pgm") and not cfg.output_path:
        raise UsageError(f"{cfg.subcommand}: --out is required for {cfg.format} output")
    return cfg


def _emit_text(text: str, cfg: CliConfig) -> None:
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def execute(cfg: CliConfig) -> None:
    cmd = cfg.subcommand
    if cmd == "criterion":
        _emit_text(io.dumps(io.criterion_report(criterion(cfg.tau))), cfg)
    elif cmd == "ninth":
        _emit_text(io.dumps(solve_lambda().as_dict()), cfg)
    elif cmd == "green":
        val = green_value(cfg.z, cfg.tau, normalize=cfg.normalize)
        _emit_text(io.dumps({"tau": io.complex_to_json(cfg.tau), "z": io.complex_to_json(cfg.z),
                             "normalized": cfg.normalize, "value": val}), cfg)
    elif cmd in ("count", "points"):
        ctx = build_context(cfg.tau)
        co = coefficients(ctx)
        rep = criterion(cfg.tau)
        n = count_oracle(ctx, co, grid_n=cfg.grid)
        if cmd == "count":
            out = {"tau": io.complex_to_json(cfg.tau), "oracle_count": n,
                   "predicted_count": rep.predicted_count}
        else:
            out = io.green_report(cfg.tau, co, rep, find_critical_points(ctx, co), n)
        _emit_text(io.dumps(out), cfg)
    elif cmd == "region":
        (re_lo, re_hi), (im_lo, im_hi) = cfg.range
        w, h = cfg.resolution
        scan = render_region((re_lo, re_hi), (im_lo, im_hi), w, h)
        if cfg.format == "csv":
            if cfg.output_path:
                write_region_csv(scan, cfg.output_path)
            else:
                write_region_csv(scan, "/dev/stdout")
        else:
            io.write_image(scan.image, cfg.format, cfg.output_path)
    elif cmd == "julia":
        ctx = build_context(cfg.tau)
        co = coefficients(ctx)
        w, h = cfg.resolution
        if cfg.range is None:
            viewport = default_viewport(ctx)
        else:
            (re_lo, re_hi), (im_lo, im_hi) = cfg.range
            viewport = (re_lo, re_hi, im_lo, im_hi)
        img = render_julia(ctx, co, viewport, w, h, max_iter=cfg.max_iter)
        io.write_image(img, cfg.format, cfg.output_path, shade=cfg.shade)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown subcommand {cmd}")


def run_cli(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
    except UsageError as e:
        print(f"torusgreen: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return EXIT_OK if not e.code else EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", TorusGreenWarning)
            execute(cfg)
    except (DegenerateLattice, PoleInput, ValueError) as e:
        # bad input values rather than a failed computation
        print(f"torusgreen: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (TorusGreenError, OSError, ArithmeticError) as e:
        print(f"torusgreen: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def main():
    sys.exit(run_cli())
