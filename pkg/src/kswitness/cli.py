"""Command-line front door.

Subcommands: ``check-set`` (colorability of a ray-set file), ``witness``
(certificate extraction from an oracle spec), ``geom`` (descent-circle
queries), ``plot`` (CSV/SVG figure data).  All structured output is JSON
with embedded schema version; all angles are radians (degrees are rejected
by omission: there is no flag for them).

Exit codes are a stable contract: 0 success/colorable, 10 uncolorable,
11 witness not found, 2 input error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from . import kssets
from .sphere_geom import (
    DescentCircle,
    DomainError,
    SphPoint,
    descent_theta,
    equator_crossings,
    to_cartesian,
    two_step_chain,
    two_step_delta_phi,
)
from .valuation import OracleSpecError, Valuation, build_oracle
from .witness import WitnessConfig, extract_witness

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IO = 3
EXIT_UNCOLORABLE = 10
EXIT_NOT_FOUND = 11

FIGURES = ("four-segment", "descent-circle")


def _fmt(x: float) -> str:
    """Fixed 12-decimal output used by every geometry subcommand."""
    s = f"{x:.12f}"
    return s[1:] if s == "-0.000000000000" else s


def _dump_json(doc: dict, out_path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


# --- check-set ---------------------------------------------------------------

def cmd_check_set(args) -> int:
    try:
        ray_set = kssets.load_ray_set(args.path)
    except OSError as exc:
        return _fail(f"cannot read {args.path}: {exc}", EXIT_INPUT)
    except (kssets.RaySetFormatError, kssets.DuplicateRay) as exc:
        return _fail(str(exc), EXIT_INPUT)
    graph = kssets.build_ortho_graph(ray_set)
    if ray_set.bases is not None:
        bases = ray_set.bases
        source = "supplied"
    else:
        bases = kssets.enumerate_bases(graph, ray_set.dimension)
        source = "enumerated"
    result = kssets.find_valuation(graph, bases)
    report = {
        "schema": 1,
        "name": ray_set.name,
        "dimension": ray_set.dimension,
        "rays": len(ray_set),
        "graph": {"vertices": graph.vertex_count, "edges": graph.edge_count},
        "bases": {"count": len(bases), "source": source},
        "coloring": result.to_json_dict(),
    }
    _dump_json(report, args.out)
    return EXIT_OK if result.colorable else EXIT_UNCOLORABLE


# --- witness -----------------------------------------------------------------

def _load_oracle(path: str) -> Valuation:
    with open(path, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    return build_oracle(spec)


def cmd_witness(args) -> int:
    try:
        oracle = _load_oracle(args.oracle)
    except OSError as exc:
        return _fail(f"cannot read {args.oracle}: {exc}", EXIT_INPUT)
    except (json.JSONDecodeError, OracleSpecError) as exc:
        return _fail(f"bad oracle spec: {exc}", EXIT_INPUT)
    config = WitnessConfig(
        meridian_samples=args.meridians,
        latitude_samples=args.latitudes,
        max_descent_probes=args.budget,
        rng_seed=args.seed,
    )
    report = extract_witness(oracle, config)
    _dump_json(report.to_json_dict(), args.out)
    return EXIT_OK if report.found else EXIT_NOT_FOUND


# --- geom --------------------------------------------------------------------

def cmd_geom(args) -> int:
    try:
        if args.geom_command == "descend":
            circle = DescentCircle(SphPoint(args.theta_p, args.phi_p))
            print(_fmt(descent_theta(circle, args.phi)))
        elif args.geom_command == "delta-phi":
            print(_fmt(two_step_delta_phi(args.theta_p, args.theta_q)))
        elif args.geom_command == "chain":
            r, q = two_step_chain(SphPoint(args.theta_p, args.phi_p), args.theta_q)
            print("r", _fmt(r.theta), _fmt(r.phi))
            print("q", _fmt(q.theta), _fmt(q.phi))
        elif args.geom_command == "crossings":
            s1, s2 = equator_crossings(DescentCircle(SphPoint(args.theta_p, args.phi_p)))
            print("s1", *(_fmt(c) for c in s1))
            print("s2", *(_fmt(c) for c in s2))
    except DomainError as exc:
        return _fail(str(exc), EXIT_INPUT)
    return EXIT_OK


# --- plot --------------------------------------------------------------------

def _valuation_grid(oracle: Valuation, lat_rows: int, lon_cols: int):
    """Equal-area (theta, phi, value) grid avoiding the boundary arcs."""
    rows = []
    for i in range(lat_rows):
        z = -1.0 + (2 * i + 1) / lat_rows
        theta = math.asin(z)
        for j in range(lon_cols):
            phi = -math.pi + 2.0 * math.pi * (j + 0.5) / lon_cols
            value = oracle.evaluate(to_cartesian(SphPoint(theta, phi)))
            rows.append((theta, phi, value))
    return rows


def _write_grid_csv(rows, out_path: str) -> None:
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta", "phi", "value"])
        for theta, phi, value in rows:
            writer.writerow([_fmt(theta), _fmt(phi), value])


def _write_grid_svg(rows, lat_rows: int, lon_cols: int, out_path: str, title: str) -> None:
    """Equirectangular projection: one rect per grid cell, ones shaded dark."""
    width, height, margin = 720, 360, 24
    cw = width / lon_cols
    ch = height / lat_rows
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width + 2 * margin}" height="{height + 2 * margin + 18}">',
        f'<text x="{margin}" y="16" font-family="monospace" font-size="13">{title}</text>',
        f'<g transform="translate({margin},{margin + 18})">',
    ]
    for k, (theta, phi, value) in enumerate(rows):
        i, j = divmod(k, lon_cols)
        color = "#24476b" if value else "#e8e4da"
        x = j * cw
        y = height - (i + 1) * ch
        parts.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{cw + 0.35:.2f}" '
            f'height="{ch + 0.35:.2f}" fill="{color}"/>'
        )
    parts.append(f'<rect x="0" y="0" width="{width}" height="{height}" '
                 f'fill="none" stroke="#222" stroke-width="1"/>')
    parts.append("</g></svg>")
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")


def _descent_curve(theta_p: float, phi_p: float, samples: int):
    circle = DescentCircle(SphPoint(theta_p, phi_p))
    rows = []
    for k in range(samples + 1):
        phi = -math.pi + 2.0 * math.pi * k / samples
        rows.append((phi, descent_theta(circle, phi)))
    return rows


def _write_curve_csv(rows, out_path: str) -> None:
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["phi", "theta"])
        for phi, theta in rows:
            writer.writerow([_fmt(phi), _fmt(theta)])


def _write_curve_svg(rows, out_path: str, title: str) -> None:
    width, height, margin = 720, 360, 24

    def sx(phi):
        return margin + (phi + math.pi) / (2.0 * math.pi) * width

    def sy(theta):
        return margin + 18 + (1.0 - (theta + math.pi / 2) / math.pi) * height

    pts = " ".join(f"{sx(phi):.2f},{sy(theta):.2f}" for phi, theta in rows)
    svg = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width + 2 * margin}" height="{height + 2 * margin + 18}">',
        f'<text x="{margin}" y="16" font-family="monospace" font-size="13">{title}</text>',
        f'<rect x="{margin}" y="{margin + 18}" width="{width}" height="{height}" '
        f'fill="#fcfbf7" stroke="#222"/>',
        f'<line x1="{sx(-math.pi):.2f}" y1="{sy(0):.2f}" x2="{sx(math.pi):.2f}" '
        f'y2="{sy(0):.2f}" stroke="#999" stroke-dasharray="4 3"/>',
        f'<polyline fill="none" stroke="#a33" stroke-width="1.6" points="{pts}"/>',
        "</svg>",
    ]
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(svg) + "\n")


def cmd_plot(args) -> int:
    if bool(args.figure) == bool(args.oracle):
        return _fail("exactly one of --figure or --oracle is required", EXIT_INPUT)
    lat_rows, lon_cols = args.grid, 2 * args.grid
    try:
        if args.oracle:
            try:
                oracle = _load_oracle(args.oracle)
            except OSError as exc:
                return _fail(f"cannot read {args.oracle}: {exc}", EXIT_INPUT)
            except (json.JSONDecodeError, OracleSpecError) as exc:
                return _fail(f"bad oracle spec: {exc}", EXIT_INPUT)
            rows = _valuation_grid(oracle, lat_rows, lon_cols)
            title = f"oracle grid: {args.oracle}"
            if args.format == "csv":
                _write_grid_csv(rows, args.out)
            else:
                _write_grid_svg(rows, lat_rows, lon_cols, args.out, title)
        elif args.figure == "four-segment":
            from .valuation import FourSegmentValuation

            rows = _valuation_grid(FourSegmentValuation(), lat_rows, lon_cols)
            if args.format == "csv":
                _write_grid_csv(rows, args.out)
            else:
                _write_grid_svg(rows, lat_rows, lon_cols, args.out,
                                "four-segment valuation (dark = 1)")
        elif args.figure == "descent-circle":
            try:
                rows = _descent_curve(args.theta_p, args.phi_p, 4 * args.grid)
            except DomainError as exc:
                return _fail(str(exc), EXIT_INPUT)
            if args.format == "csv":
                _write_curve_csv(rows, args.out)
            else:
                _write_curve_svg(rows, args.out,
                                 f"descent circle, apex ({args.theta_p:.4f}, {args.phi_p:.4f})")
        else:
            return _fail(f"unknown figure {args.figure!r}; choose from {FIGURES}", EXIT_INPUT)
    except OSError as exc:
        return _fail(f"cannot write {args.out}: {exc}", EXIT_IO)
    return EXIT_OK


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kswitness",
        description="Valuations, descent-circle witnesses, and exact ray-set colorability. "
                    "All angles are radians.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check-set", help="decide {0,1}-colorability of a ray-set file")
    p_check.add_argument("path", help="ray-set JSON file")
    p_check.add_argument("--out", help="write the JSON report here instead of stdout")
    p_check.set_defaults(func=cmd_check_set)

    p_wit = sub.add_parser("witness", help="extract a contradiction certificate from an oracle")
    p_wit.add_argument("oracle", help="oracle-spec JSON file")
    p_wit.add_argument("--seed", type=int, default=0, help="deterministic sampling seed")
    p_wit.add_argument("--budget", type=int, default=10_000, help="total oracle-call budget")
    p_wit.add_argument("--meridians", type=int, default=64, help="equator probe count")
    p_wit.add_argument("--latitudes", type=int, default=256, help="initial sample count")
    p_wit.add_argument("--out", help="write the report here instead of stdout")
    p_wit.set_defaults(func=cmd_witness)

    p_geom = sub.add_parser("geom", help="descent-circle geometry queries")
    geom_sub = p_geom.add_subparsers(dest="geom_command", required=True)
    g_desc = geom_sub.add_parser("descend", help="latitude of a descent circle at a longitude")
    g_desc.add_argument("--theta-p", type=float, required=True, help="apex latitude")
    g_desc.add_argument("--phi-p", type=float, default=0.0, help="apex longitude")
    g_desc.add_argument("--phi", type=float, required=True, help="query longitude")
    g_delta = geom_sub.add_parser("delta-phi", help="two-step descent azimuth offset")
    g_delta.add_argument("--theta-p", type=float, required=True, help="start latitude")
    g_delta.add_argument("--theta-q", type=float, required=True, help="target latitude")
    g_chain = geom_sub.add_parser("chain", help="two-step descent points r and q")
    g_chain.add_argument("--theta-p", type=float, required=True)
    g_chain.add_argument("--phi-p", type=float, default=0.0)
    g_chain.add_argument("--theta-q", type=float, required=True)
    g_cross = geom_sub.add_parser("crossings", help="equator crossings of a descent circle")
    g_cross.add_argument("--theta-p", type=float, required=True)
    g_cross.add_argument("--phi-p", type=float, default=0.0)
    p_geom.set_defaults(func=cmd_geom)

    p_plot = sub.add_parser("plot", help="emit figure data as CSV or SVG")
    p_plot.add_argument("--figure", choices=FIGURES, help="built-in figure name")
    p_plot.add_argument("--oracle", help="oracle-spec JSON file to grid instead")
    p_plot.add_argument("--out", required=True, help="output file path")
    p_plot.add_argument("--format", choices=("csv", "svg"), default="csv")
    p_plot.add_argument("--grid", type=int, default=64, help="latitude rows (longitudes = 2x)")
    p_plot.add_argument("--theta-p", type=float, default=math.pi / 4,
                        help="descent-circle apex latitude")
    p_plot.add_argument("--phi-p", type=float, default=0.0,
                        help="descent-circle apex longitude")
    p_plot.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad flags, which matches the contract.
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
