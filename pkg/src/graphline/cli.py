"""Command-line harness: generate, scan, census, geodesic, report.

Exit codes: 0 success, 1 I/O or schema errors, 2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .families import FAMILY_KINDS, FamilySpec, generate
from .geodesics import (
    cell_statistics,
    decomposition_to_json,
    max_geodesic,
    project_cells,
    segment_correspondence,
    separation_components,
)
from .graphs import (
    Graph,
    GraphError,
    all_pairs_distances,
    read_graph,
    write_graph_json,
    write_graph_text,
)
from .lineapprox import DEFAULT_K_MAX
from .localtopology import BallCensus, ball_census, census_distance
from .scan import DEFAULT_THRESHOLD, ScanReport, aggregate_reports_csv, scan_graph


def _family_spec(args) -> FamilySpec:
    return FamilySpec(
        kind=args.family,
        n=args.n,
        r=args.r,
        width=args.width,
        height=args.height,
    )


def cmd_generate(args) -> int:
    spec = _family_spec(args)  # ValueError -> usage error, caught in main
    g = generate(spec)
    dmat = all_pairs_distances(g)
    diam = int(dmat.max())
    ratio = g.n / diam if diam else float("nan")
    stats = (
        f"vertices={g.n} edges={g.edge_count} diameter={diam} "
        f"volume_ratio={ratio:.6g}"
    )
    if args.output:
        if args.output.endswith(".json"):
            write_graph_json(g, args.output, family=spec.params())
        else:
            write_graph_text(g, args.output)
        print(stats)
    else:
        sys.stderr.write(stats + "\n")
        sys.stdout.write(f"p {g.n} {g.edge_count}\n")
        for u, v in g.edges():
            sys.stdout.write(f"e {u} {v}\n")
    return 0


def _parse_scales(text: str) -> list[float]:
    vals = [float(part) for part in text.split(",") if part.strip()]
    if not vals or any(v < 1 for v in vals):
        raise ValueError("scales must be a comma list of values >= 1")
    return vals


def cmd_scan(args) -> int:
    g, family = read_graph(args.graph)
    scales = _parse_scales(args.scales) if args.scales else None
    coordinate = None
    if args.coordinate == "geodesic":
        dec = project_cells(g, max_geodesic(g))
        coordinate = np.array(dec.projection, dtype=np.float64)
    report = scan_graph(
        g,
        threshold=args.threshold,
        scales=scales,
        k_max=args.k_max,
        sample=args.sample,
        seed=args.seed,
        threads=args.threads,
        coordinate=coordinate,
        family=family,
        source=args.graph,
    )
    doc = json.dumps(report.to_json())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(doc + "\n")
    else:
        print(doc)
    if args.csv:
        report.write_csv(args.csv)
    frac = report.fraction
    sys.stderr.write(
        f"scanned={len(report.vertices)} fraction={frac.numerator}/{frac.denominator}"
        f" ({float(frac):.4f}) threshold={report.threshold}\n"
    )
    return 0


def cmd_census(args) -> int:
    if args.radius < 0:
        raise ValueError("radius must be non-negative")
    censuses: list[BallCensus] = []
    names = []
    for path in args.graphs:
        g, _ = read_graph(path)
        censuses.append(ball_census(g, args.radius))
        names.append(path)
    tv = [
        [float(census_distance(a, b)) for b in censuses] for a in censuses
    ]
    doc = {
        "radius": args.radius,
        "graphs": [
            {"source": name, "census": census.to_json()}
            for name, census in zip(names, censuses)
        ],
        "tv_matrix": tv,
    }
    text = json.dumps(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_geodesic(args) -> int:
    g, _ = read_graph(args.graph)
    dmat = all_pairs_distances(g)
    geo = max_geodesic(g, dmat)
    dec = project_cells(g, geo)
    doc = decomposition_to_json(dec, dmat)
    center = args.center if args.center is not None else geo.length // 2
    if args.stats:
        stats = cell_statistics(dec, center)
        doc["stats"] = {
            "center": center,
            "max_cell_size": max(stats.sizes),
            "max_cell_diameter": max(doc["cell_diameters"]),
            "windows": [
                {
                    "half_width": w.half_width,
                    "cesaro": float(w.cesaro),
                    "max_ratio": float(w.max_ratio),
                    "clipped": w.clipped,
                }
                for w in stats.windows
            ],
        }
    if args.separate is not None:
        sizes = separation_components(g, dec, args.separate, center)
        doc["separation"] = {
            "center": center,
            "window": args.separate,
            "component_sizes": sizes,
        }
    if args.correspondence is not None:
        A, r = args.correspondence
        corr = segment_correspondence(g, dec, geo.vertices[center], A, r, dmat)
        doc["correspondence"] = {
            "center_vertex": corr.center,
            "A": corr.half_width,
            "r": corr.scale,
            "ball_size": len(corr.ball_vertices),
            "distortion": corr.distortion,
        }
    text = json.dumps(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_report(args) -> int:
    if not args.scans:
        sys.stderr.write("report: no scan files given\n")
        return 1
    reports = []
    for path in args.scans:
        with open(path, "r", encoding="utf-8") as fh:
            reports.append(ScanReport.from_json(json.load(fh)))
    if args.output:
        with open(args.output, "w", newline="", encoding="utf-8") as fh:
            aggregate_reports_csv(reports, fh)
    else:
        aggregate_reports_csv(reports, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphline",
        description="Line-likeness analysis for finite graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a graph family member")
    p.add_argument("--family", required=True, choices=FAMILY_KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--width", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("-o", "--output", help="graph file (.json keeps family metadata)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("scan", help="per-vertex scale scan of a graph")
    p.add_argument("graph")
    p.add_argument("-x", "--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--scales", help="comma list; default geometric grid ratio sqrt(2)")
    p.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    p.add_argument("--sample", type=int, help="scan a uniform vertex sample")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, help="worker processes (env LLL_THREADS)")
    p.add_argument(
        "--coordinate",
        choices=("sweep", "geodesic"),
        default="sweep",
        help="1-d coordinate for upper bounds",
    )
    p.add_argument("-o", "--output", help="report JSON path (default stdout)")
    p.add_argument("--csv", help="also write a per-vertex CSV")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("census", help="radius-r ball census and pairwise TV")
    p.add_argument("graphs", nargs="+")
    p.add_argument("-r", "--radius", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("geodesic", help="maximal geodesic and cell decomposition")
    p.add_argument("graph")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--separate", type=int, metavar="N")
    p.add_argument("--center", type=int, help="geodesic index (default middle)")
    p.add_argument(
        "--correspondence",
        nargs=2,
        type=float,
        metavar=("A", "R"),
        help="segment half-width and scale",
    )
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("report", help="aggregate scan reports into CSV")
    p.add_argument("scans", nargs="*")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, OSError, KeyError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
