"""Light-trap surveillance network designer.

Loads trap deployments (CSV/GeoJSON), builds radio and wind-dispersal
graphs, measures connectivity per candidate transmission range, simulates
synchronous routing/election/collection rounds, and serves it all over a
small JSON HTTP API for the design console.
"""

from .errors import (
    DeploymentFormatError,
    ExportError,
    GatewayError,
    TrapnetError,
    UnknownNodeError,
)
from .geo import (
    Deployment,
    TrapSite,
    distance_km,
    generate_synthetic,
    load_deployment,
    project_planar,
    save_deployment,
)
from .simulate import (
    BEHAVIORS,
    Message,
    RoundRecord,
    RoundTrace,
    RoutingTable,
    SimConfig,
    convergecast_collect,
    latency_minutes,
    leader_election,
    resolve_gateway,
    routing_convergence,
    run_simulation,
)
from .sweep import (
    SweepRow,
    classify_regime,
    export_graph,
    export_sweep,
    range_sweep,
)
from .topology import (
    NetworkMetrics,
    RadioGraph,
    WindField,
    WindGraph,
    build_radio_graph,
    build_wind_graph,
    components,
    eccentricity,
    hop_distances,
    largest_component,
    network_metrics,
    wind_radius_km,
)

__version__ = "0.1.0"

__all__ = [
    "BEHAVIORS",
    "Deployment",
    "DeploymentFormatError",
    "ExportError",
    "GatewayError",
    "Message",
    "NetworkMetrics",
    "RadioGraph",
    "RoundRecord",
    "RoundTrace",
    "RoutingTable",
    "SimConfig",
    "SweepRow",
    "TrapSite",
    "TrapnetError",
    "UnknownNodeError",
    "WindField",
    "WindGraph",
    "build_radio_graph",
    "build_wind_graph",
    "classify_regime",
    "components",
    "convergecast_collect",
    "distance_km",
    "eccentricity",
    "export_graph",
    "export_sweep",
    "generate_synthetic",
    "hop_distances",
    "largest_component",
    "latency_minutes",
    "leader_election",
    "load_deployment",
    "network_metrics",
    "project_planar",
    "range_sweep",
    "resolve_gateway",
    "routing_convergence",
    "run_simulation",
    "save_deployment",
    "wind_radius_km",
]
