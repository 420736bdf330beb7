"""Whole-graph scale scans: which vertices see a line, at some scale.

For each vertex the scan reports per-scale energy bounds, the minimum
upper end over the grid (a certificate: the vertex sees a line-like
geometry at its best scale when this is below the threshold), and the
thresholded membership set A with its exact fraction of the scanned
vertices.
"""

from __future__ import annotations

import csv
import multiprocessing
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import Graph, all_pairs_distances
from .lineapprox import (
    DEFAULT_K_MAX,
    EnergyBounds,
    LineScanEngine,
    VertexScaleScan,
    default_scale_grid,
)

THREADS_ENV_VAR = "LLL_THREADS"
DEFAULT_THRESHOLD = 0.2
SAMPLE_CUTOFF = 10_000  # full enumeration below, uniform sampling above
DEFAULT_SAMPLE = 2_000


@dataclass(frozen=True)
class ScanReport:
    family: dict | None
    source: str | None
    n_vertices: int
    n_edges: int
    diameter: int
    volume_ratio: float | None  # |V| / diameter
    threshold: float
    k_max: int
    scales: tuple[float, ...]
    seed: int | None
    sample_size: int | None  # None: all vertices scanned
    vertices: tuple[VertexScaleScan, ...]

    @property
    def members(self) -> list[int]:
        return [vs.vertex for vs in self.vertices if vs.min_upper < self.threshold]

    @property
    def fraction(self) -> Fraction:
        hits = sum(1 for vs in self.vertices if vs.min_upper < self.threshold)
        return Fraction(hits, len(self.vertices))

    def min_upper_over_members(self) -> float | None:
        uppers = [
            vs.min_upper for vs in self.vertices if vs.min_upper < self.threshold
        ]
        return min(uppers) if uppers else None

    def to_json(self) -> dict:
        frac = self.fraction
        return {
            "family": self.family,
            "source": self.source,
            "n_vertices": self.n_vertices,
            "n_edges": self.n_edges,
            "diameter": self.diameter,
            "volume_ratio": self.volume_ratio,
            "threshold": self.threshold,
            "k_max": self.k_max,
            "scales": list(self.scales),
            "seed": self.seed,
            "sample_size": self.sample_size,
            "fraction": {
                "num": frac.numerator,
                "den": frac.denominator,
                "float": float(frac),
            },
            "vertices": [
                {
                    "vertex": vs.vertex,
                    "scales": [eb.to_json() for eb in vs.per_scale],
                    "min_upper": vs.min_upper,
                    "max_lower": vs.max_lower,
                    "best_scale": vs.best_scale,
                    "in_A": vs.min_upper < self.threshold,
                }
                for vs in self.vertices
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ScanReport":
        vertices = tuple(
            VertexScaleScan(
                vertex=rec["vertex"],
                per_scale=tuple(
                    EnergyBounds(
                        scale=eb["scale"],
                        lower=eb["lower"],
                        upper=eb["upper"],
                        k_max=eb["k_max"],
                        tail=eb["tail"],
                    )
                    for eb in rec["scales"]
                ),
                min_upper=rec["min_upper"],
                max_lower=rec["max_lower"],
                best_scale=rec["best_scale"],
            )
            for rec in doc["vertices"]
        )
        report = cls(
            family=doc.get("family"),
            source=doc.get("source"),
            n_vertices=doc["n_vertices"],
            n_edges=doc["n_edges"],
            diameter=doc["diameter"],
            volume_ratio=doc.get("volume_ratio"),
            threshold=doc["threshold"],
            k_max=doc["k_max"],
            scales=tuple(doc["scales"]),
            seed=doc.get("seed"),
            sample_size=doc.get("sample_size"),
            vertices=vertices,
        )
        recorded = doc.get("fraction")
        if recorded is not None:
            if Fraction(recorded["num"], recorded["den"]) != report.fraction:
                raise ValueError("scan report fraction does not match its records")
        return report

    def write_csv(self, path: str) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["vertex", "min_upper", "max_lower", "best_scale", "in_A"]
            )
            for vs in self.vertices:
                writer.writerow(
                    [
                        vs.vertex,
                        f"{vs.min_upper:.9g}",
                        f"{vs.max_lower:.9g}",
                        f"{vs.best_scale:.9g}",
                        int(vs.min_upper < self.threshold),
                    ]
                )


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get(THREADS_ENV_VAR)
        threads = int(env) if env else 1
    if threads < 1:
        raise ValueError("threads must be >= 1")
    return threads


_WORKER_ENGINE: LineScanEngine | None = None
_WORKER_ARGS: tuple | None = None


def _worker_init(g, dmat, triple_budget, scales, k_max, coordinate):
    global _WORKER_ENGINE, _WORKER_ARGS
    _WORKER_ENGINE = LineScanEngine(g, dmat, triple_budget=triple_budget)
    _WORKER_ARGS = (scales, k_max, coordinate)


def _worker_scan(vertices) -> list[VertexScaleScan]:
    scales, k_max, coordinate = _WORKER_ARGS
    out = []
    for v in vertices:
        per_scale = tuple(_WORKER_ENGINE.scan_vertex(v, scales, k_max, coordinate))
        best = min(per_scale, key=lambda eb: eb.upper)
        out.append(
            VertexScaleScan(
                vertex=v,
                per_scale=per_scale,
                min_upper=best.upper,
                max_lower=max(eb.lower for eb in per_scale),
                best_scale=best.scale,
            )
        )
    return out


def scan_graph(
    g: Graph,
    *,
    threshold: float = DEFAULT_THRESHOLD,
    scales=None,
    k_max: int = DEFAULT_K_MAX,
    sample: int | None = None,
    seed: int = 0,
    threads: int | None = None,
    coordinate: np.ndarray | None = None,
    family: dict | None = None,
    source: str | None = None,
    dmat: np.ndarray | None = None,
) -> ScanReport:
    """Scan vertices of g across a scale grid and threshold the results.

    ``sample`` picks that many distinct vertices uniformly (seeded);
    by default all vertices are scanned unless the graph exceeds
    ``SAMPLE_CUTOFF``.  Records are always sorted by vertex id, so
    reports are deterministic for fixed flags and seed.
    """
    if dmat is None:
        dmat = all_pairs_distances(g, dtype=np.int16 if g.n < 30000 else np.int32)
    diam = int(dmat.max())
    if scales is None:
        scales = default_scale_grid(diam)
    scales = [float(s) for s in scales]
    if sample is None and g.n > SAMPLE_CUTOFF:
        sample = DEFAULT_SAMPLE
    if sample is not None:
        if not 1 <= sample:
            raise ValueError("sample size must be positive")
        sample = min(sample, g.n)
        rng = np.random.default_rng(seed)
        targets = sorted(rng.choice(g.n, size=sample, replace=False).tolist())
    else:
        targets = list(range(g.n))
    threads = resolve_threads(threads)

    if threads == 1 or len(targets) < 4:
        _worker_init(g, dmat, 100_000, scales, k_max, coordinate)
        records = _worker_scan(targets)
    else:
        chunks = [targets[i::threads] for i in range(threads)]
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(
            processes=threads,
            initializer=_worker_init,
            initargs=(g, dmat, 100_000, scales, k_max, coordinate),
        ) as pool:
            parts = pool.map(_worker_scan, chunks)
        records = [rec for part in parts for rec in part]
        records.sort(key=lambda vs: vs.vertex)

    return ScanReport(
        family=family,
        source=source,
        n_vertices=g.n,
        n_edges=g.edge_count,
        diameter=diam,
        volume_ratio=(g.n / diam) if diam > 0 else None,
        threshold=threshold,
        k_max=k_max,
        scales=tuple(scales),
        seed=seed if sample is not None else None,
        sample_size=sample,
        vertices=tuple(records),
    )


def aggregate_reports_csv(reports: list[ScanReport], out) -> None:
    """One CSV row per scan report, fixed column order.

    ``out`` is a writable text stream (callers manage files).
    """
    writer = csv.writer(out)
    writer.writerow(
        [
            "family",
            "params",
            "n_vertices",
            "diameter",
            "volume_ratio",
            "threshold",
            "fraction",
            "min_upper_over_A",
        ]
    )
    for rep in reports:
        fam = rep.family or {}
        kind = fam.get("kind", "unknown")
        params = ",".join(
            f"{key}={fam[key]}" for key in sorted(fam) if key != "kind"
        )
        mu = rep.min_upper_over_members()
        writer.writerow(
            [
                kind,
                params,
                rep.n_vertices,
                rep.diameter,
                "" if rep.volume_ratio is None else f"{rep.volume_ratio:.9g}",
                f"{rep.threshold:.9g}",
                f"{float(rep.fraction):.9g}",
                "" if mu is None else f"{mu:.9g}",
            ]
        )
