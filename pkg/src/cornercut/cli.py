"""Command-line surface: refine sequences and curves, run the experiments.

Subcommands: ``refine``, ``curve``, ``order-table``, ``smoothness``,
``symbol-check``.  Exit codes: 0 success, 2 input error, 3 numeric error,
4 configuration/domain error.  Set NUCC_LOG=debug to see Chaikin-fallback
events from the ratio kernels.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys

import numpy as np

from .analysis import (
    asymptotic_equivalence_profile,
    franke_1d,
    order_table,
    sample_initial,
    smoothness_probe,
)
from .masks import EpsilonPolicy, RatioKernelError
from .sequences import BoundaryPolicy, LevelSequence
from .subdivision import ControlPolygon, SchemeConfig, refine_curve, run, run_traced


class InputDataError(Exception):
    """Bad or missing input data (exit code 2)."""


class ConfigError(Exception):
    """Invalid flag combination or domain (exit code 4)."""


def _fmt(x):
    return "%.17g" % x


# ---------------------------------------------------------------------------
# ingestion


def _read_text(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputDataError("cannot read %s: %s" % (path, exc))


def load_sequence(path):
    """Scalar sequence from CSV (one value per line, last column wins) or JSON.

    Returns (values, k0-or-None).
    """
    text = _read_text(path)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
            values = [float(v) for v in doc["values"]]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise InputDataError("malformed sequence JSON in %s: %s" % (path, exc))
        k0 = doc.get("k0")
        return np.array(values), None if k0 is None else int(k0)
    values = []
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line.split(",")[-1]))
        except ValueError:
            raise InputDataError("%s:%d: not a number: %r" % (path, ln, line))
    if not values:
        raise InputDataError("no values in %s" % path)
    return np.array(values), None


def load_polygon(path, closed_flag):
    """2D point list from CSV 'x,y' lines or JSON {points, closed}."""
    text = _read_text(path)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
            pts = [[float(x), float(y)] for x, y in doc["points"]]
            closed = bool(doc.get("closed", closed_flag))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise InputDataError("malformed polygon JSON in %s: %s" % (path, exc))
    else:
        pts = []
        for ln, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise InputDataError("%s:%d: expected 'x,y': %r" % (path, ln, line))
            try:
                pts.append([float(parts[0]), float(parts[1])])
            except ValueError:
                raise InputDataError("%s:%d: not numbers: %r" % (path, ln, line))
        closed = closed_flag
    if len(pts) < (3 if closed else 2):
        raise InputDataError("not enough points in %s" % path)
    return np.array(pts), closed


# ---------------------------------------------------------------------------
# serialization


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def sequence_csv(seq):
    lines = [
        "# level: %d" % seq.level,
        "# k0: %d" % seq.base_density_exp,
        "# first_index: %d" % seq.first_index,
        "# columns: t,value",
    ]
    for t, v in zip(seq.grid_points(), seq.values):
        lines.append("%s,%s" % (_fmt(t), _fmt(v)))
    return "\n".join(lines) + "\n"


def sequence_json(seq):
    doc = {
        "level": seq.level,
        "k0": seq.base_density_exp,
        "first_index": seq.first_index,
        "values": list(seq.values),
        "grid": list(seq.grid_points()),
    }
    return json.dumps(doc) + "\n"


def polygon_csv(poly):
    lines = ["# closed: %s" % ("true" if poly.closed else "false")]
    for x, y in poly.points:
        lines.append("%s,%s" % (_fmt(x), _fmt(y)))
    return "\n".join(lines) + "\n"


def polygon_json(poly):
    doc = {"points": [[x, y] for x, y in poly.points], "closed": poly.closed}
    return json.dumps(doc) + "\n"


def polygon_svg(original, refined):
    """Input polygon dashed, refined curve as a single solid polyline."""
    pts = np.vstack([original.points, refined.points])
    xmin, ymin = pts.min(axis=0)
    xmax, ymax = pts.max(axis=0)
    w = max(xmax - xmin, 1e-9)
    h = max(ymax - ymin, 1e-9)
    mx, my = 0.05 * w, 0.05 * h
    stroke = 0.01 * max(w, h)

    def pt(p):
        return "%.6g,%.6g" % (p[0], -p[1])  # flip y so the curve is upright

    d = "M " + " L ".join(pt(p) for p in original.points)
    if original.closed:
        d += " Z"
    poly_pts = " ".join(pt(p) for p in refined.points)
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="%.6g %.6g %.6g %.6g">'
        % (xmin - mx, -(ymax + my), w + 2 * mx, h + 2 * my),
        '<path d="%s" fill="none" stroke="#999" stroke-width="%.6g" stroke-dasharray="%.6g %.6g"/>'
        % (d, stroke, 2 * stroke, 2 * stroke),
        '<polyline points="%s" fill="none" stroke="#000" stroke-width="%.6g"/>' % (poly_pts, stroke),
    ]
    if refined.closed and len(refined.points) >= 2:
        parts.append(
            '<line x1="%.6g" y1="%.6g" x2="%.6g" y2="%.6g" stroke="#000" stroke-width="%.6g"/>'
            % (
                refined.points[-1][0],
                -refined.points[-1][1],
                refined.points[0][0],
                -refined.points[0][1],
                stroke,
            )
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# configuration from flags


def scheme_config(args) -> SchemeConfig:
    eps = None
    if args.epsilon_mag is not None:
        if args.epsilon_mag <= 0:
            raise InputDataError("--epsilon-mag must be positive")
        eps = EpsilonPolicy(args.epsilon_mag, args.epsilon_mode)
    if args.threshold is not None and args.threshold <= 0:
        raise InputDataError("--threshold must be positive")
    return SchemeConfig(
        scheme=args.scheme,
        gamma=args.gamma,
        eps=eps,
        variant_threshold=args.threshold,
        clamp=args.clamp,
    )


def _parse_k0_range(text):
    m = re.fullmatch(r"\s*(-?\d+)\.\.(-?\d+)\s*", text or "")
    if not m:
        raise InputDataError("--k0 must be a range like 0..7 (got %r)" % text)
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo < 0 or hi < lo:
        raise InputDataError("--k0 range %r is empty or negative" % text)
    return range(lo, hi + 1)


def _parse_domain(text):
    parts = (text or "").split(":")
    if len(parts) != 2:
        raise InputDataError("--domain must be LO:HI (got %r)" % text)
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise InputDataError("--domain must be numeric LO:HI (got %r)" % text)
    if not hi > lo:
        raise ConfigError("domain too small: %r" % text)
    return lo, hi


def _check_finite(arr):
    if not np.all(np.isfinite(arr)):
        raise FloatingPointError("non-finite values in result")


# ---------------------------------------------------------------------------
# subcommands


def cmd_refine(args):
    if args.format == "svg":
        raise ConfigError("svg output is only valid for the curve command")
    values, file_k0 = load_sequence(args.input)
    k0 = args.k0 if args.k0 is not None else (file_k0 or 0)
    boundary = BoundaryPolicy.PERIODIC if args.closed else BoundaryPolicy.REPLICATE_END
    f0 = LevelSequence(values, 0, 0, k0, boundary)
    state = run(f0, scheme_config(args), args.levels)
    _check_finite(state.f.values)
    text = sequence_csv(state.f) if args.format == "csv" else sequence_json(state.f)
    _write(args.output, text)
    return 0


def cmd_curve(args):
    pts, closed = load_polygon(args.input, args.closed)
    poly = ControlPolygon(pts, closed)
    refined = refine_curve(poly, scheme_config(args), args.levels)
    _check_finite(refined.points)
    if args.format == "svg":
        text = polygon_svg(poly, refined)
    elif args.format == "json":
        text = polygon_json(refined)
    else:
        text = polygon_csv(refined)
    _write(args.output, text)
    return 0


def cmd_order_table(args):
    if args.format == "svg":
        raise ConfigError("svg output is only valid for the curve command")
    k0s = _parse_k0_range(args.k0)
    domain = _parse_domain(args.domain)
    rows = order_table(franke_1d, scheme_config(args), k0s, domain, args.levels)
    if args.format == "json":
        doc = {
            "scheme": args.scheme,
            "rows": [
                {
                    "k0": r.k0,
                    "density": 2.0 ** -r.k0,
                    "max_error": r.max_error,
                    "est_order": r.est_order,
                }
                for r in rows
            ],
        }
        text = json.dumps(doc) + "\n"
    else:
        lines = ["# scheme: %s" % args.scheme, "# columns: k0,density,max_error,est_order"]
        for r in rows:
            est = "" if r.est_order is None else _fmt(r.est_order)
            lines.append("%d,%s,%s,%s" % (r.k0, _fmt(2.0 ** -r.k0), _fmt(r.max_error), est))
        text = "\n".join(lines) + "\n"
    _write(args.output, text)
    return 0


def cmd_smoothness(args):
    if args.format == "svg":
        raise ConfigError("svg output is only valid for the curve command")
    rep = smoothness_probe(scheme_config(args), args.levels)
    if args.format == "json":
        doc = {
            "scheme": args.scheme,
            "levels": rep.levels,
            "grad_sup": rep.grad_sup,
            "increments": rep.increments,
            "limit": {"t": list(rep.limit_grid), "value": list(rep.limit_values)},
            "first_dd": {"t": list(rep.first_dd_grid), "value": list(rep.first_dd_values)},
            "second_dd": {"t": list(rep.second_dd_grid), "value": list(rep.second_dd_values)},
        }
        text = json.dumps(doc) + "\n"
    else:
        lines = ["# scheme: %s" % args.scheme, "# columns: level,grad_sup,increment"]
        for i, k in enumerate(rep.levels):
            inc = "" if i == 0 else _fmt(rep.increments[i - 1])
            lines.append("%d,%s,%s" % (k, _fmt(rep.grad_sup[i]), inc))
        for name, grid, vals in (
            ("limit", rep.limit_grid, rep.limit_values),
            ("first_dd", rep.first_dd_grid, rep.first_dd_values),
            ("second_dd", rep.second_dd_grid, rep.second_dd_values),
        ):
            lines.append("# block: %s (t,value)" % name)
            lines.extend("%s,%s" % (_fmt(t), _fmt(v)) for t, v in zip(grid, vals))
        text = "\n".join(lines) + "\n"
    _write(args.output, text)
    return 0


def cmd_symbol_check(args):
    if args.format == "svg":
        raise ConfigError("svg output is only valid for the curve command")
    if args.input:
        values, file_k0 = load_sequence(args.input)
        k0 = args.k0 if args.k0 is not None else (file_k0 or 0)
        f0 = LevelSequence(values, 0, 0, k0, BoundaryPolicy.REPLICATE_END)
    else:
        k0 = args.k0 if args.k0 is not None else 2
        f0 = sample_initial(franke_1d, k0, _parse_domain(args.domain))
    _, trace = run_traced(f0, scheme_config(args), args.levels)
    rep = asymptotic_equivalence_profile(trace)
    if args.format == "json":
        doc = {
            "scheme": args.scheme,
            "levels": rep.levels,
            "ae_deviation": rep.ae_deviation,
            "ae_partial_sum": rep.ae_partial_sum,
            "d1_sup": rep.d1_sup,
            "sym_one_dev": rep.sym_one_dev,
            "sym_minus_one_dev": rep.sym_minus_one_dev,
            "ae_decay_exponent": rep.ae_decay_exponent,
            "d1_decay_exponent": rep.d1_decay_exponent,
        }
        text = json.dumps(doc) + "\n"
    else:
        lines = [
            "# scheme: %s" % args.scheme,
            "# columns: level,ae_deviation,ae_partial_sum,d1_sup,sym_one_dev,sym_minus_one_dev",
        ]
        for i, k in enumerate(rep.levels):
            lines.append(
                "%d,%s,%s,%s,%s,%s"
                % (
                    k,
                    _fmt(rep.ae_deviation[i]),
                    _fmt(rep.ae_partial_sum[i]),
                    _fmt(rep.d1_sup[i]),
                    _fmt(rep.sym_one_dev[i]),
                    _fmt(rep.sym_minus_one_dev[i]),
                )
            )
        lines.append("# ae_decay_exponent: %s" % ("" if rep.ae_decay_exponent is None else _fmt(rep.ae_decay_exponent)))
        lines.append("# d1_decay_exponent: %s" % ("" if rep.d1_decay_exponent is None else _fmt(rep.d1_decay_exponent)))
        text = "\n".join(lines) + "\n"
    _write(args.output, text)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_scheme_flags(p):
    p.add_argument("--scheme", choices=("chaikin", "expb", "nucc"), default="nucc")
    p.add_argument("--gamma", type=float, default=0.5, help="shape parameter for --scheme expb")
    p.add_argument("--epsilon-mag", type=float, default=None,
                   help="epsilon magnitude (default: 2^-2k0)")
    p.add_argument("--epsilon-mode", choices=("match", "positive"), default="match")
    p.add_argument("--clamp", action=argparse.BooleanOptionalAction, default=True,
                   help="project coefficients into the Chaikin +-1/4 band")
    p.add_argument("--threshold", type=float, default=None,
                   help="variant-switch threshold (default: 2^-2k0)")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")


def build_parser():
    ap = argparse.ArgumentParser(prog="cornercut",
                                 description="Corner-cutting subdivision schemes and diagnostics.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("refine", help="refine a scalar sequence")
    _add_scheme_flags(p)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--k0", type=int, default=None, help="density exponent of the input samples")
    p.add_argument("--closed", action="store_true", help="treat the sequence as periodic")
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("curve", help="refine a 2D control polygon")
    _add_scheme_flags(p)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--closed", action="store_true")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("order-table", help="empirical approximation-order experiment")
    _add_scheme_flags(p)
    p.add_argument("--k0", required=True, help="density exponent range, e.g. 0..7")
    p.add_argument("--domain", default="-2:8")
    p.add_argument("--levels", type=int, default=8, help="refinement levels per row")
    p.set_defaults(func=cmd_order_table)

    p = sub.add_parser("smoothness", help="delta-sequence divided-difference probe")
    _add_scheme_flags(p)
    p.add_argument("--levels", type=int, default=12)
    p.set_defaults(func=cmd_smoothness)

    p = sub.add_parser("symbol-check", help="mask symbol diagnostics along a run")
    _add_scheme_flags(p)
    p.add_argument("-i", "--input", default=None)
    p.add_argument("--levels", type=int, default=12)
    p.add_argument("--k0", type=int, default=None)
    p.add_argument("--domain", default="-2:8")
    p.set_defaults(func=cmd_symbol_check)
    return ap


def main(argv=None):
    if os.environ.get("NUCC_LOG"):
        logging.basicConfig(level=getattr(logging, os.environ["NUCC_LOG"].upper(), logging.INFO))
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputDataError as exc:
        print("cornercut: input error: %s" % exc, file=sys.stderr)
        return 2
    except ConfigError as exc:
        print("cornercut: configuration error: %s" % exc, file=sys.stderr)
        return 4
    except RatioKernelError as exc:
        print("cornercut: numeric error: %s" % exc, file=sys.stderr)
        return 3
    except ValueError as exc:
        msg = str(exc)
        if msg.startswith("domain too small"):
            print("cornercut: configuration error: %s" % exc, file=sys.stderr)
            return 4
        if msg.startswith("insufficient support") or "points" in msg or "non-empty" in msg:
            print("cornercut: input error: %s" % exc, file=sys.stderr)
            return 2
        print("cornercut: numeric error: %s" % exc, file=sys.stderr)
        return 3
    except (FloatingPointError, OverflowError, ZeroDivisionError) as exc:
        print("cornercut: numeric error: %s" % exc, file=sys.stderr)
        return 3
    except OSError as exc:
        print("cornercut: input error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
