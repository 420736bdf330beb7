"""Line-likeness analysis for finite graphs.

Tools to measure, vertex by vertex and scale by scale, how close the
rescaled metric balls of a finite graph are to segments of the real line,
plus the supporting machinery: graph families, rooted-ball isomorphism
censuses, mass-transport checks, and maximal-geodesic cell decompositions.
"""

from .canonical import canonical_code, rooted_isomorphic
from .families import FamilySpec, generate
from .geodesics import (
    CellDecomposition,
    CellStats,
    OrientedGeodesic,
    cell_statistics,
    growth_profile,
    max_geodesic,
    project_cells,
    segment_correspondence,
    separation_components,
)
from .graphs import (
    DiameterResult,
    Graph,
    GraphError,
    RootedGraph,
    all_pairs_distances,
    ball,
    bfs_distances,
    diameter,
    eccentricity,
    read_graph,
    write_graph_json,
    write_graph_text,
)
from .lineapprox import (
    BoundInterval,
    EnergyBounds,
    LineScanEngine,
    VertexScaleScan,
    default_scale_grid,
    energy_tail,
    gh_to_segment_bounds,
    local_gh_to_line,
    scale_scan,
)
from .localtopology import (
    BallCensus,
    LocalityResult,
    ball_census,
    census_distance,
    d_loc,
    locality_radius,
)
from .metricspace import (
    Correspondence,
    MetricError,
    PointedFiniteMetricSpace,
    Segment,
    distortion,
    gh_exact_small,
    line_deviation,
)
from .scan import ScanReport, scan_graph
from .transport import (
    ProfileTransport,
    adjacency_transport,
    distance_indicator_transport,
    mtp_check,
    uniform_integrability_margin,
)

__version__ = "0.1.0"
