"""Influence graphs over a deployment and the metrics reported on them.

Two constructions share the same distance metric: the undirected radio graph
(edge iff distance <= transmission range) and the directed wind-dispersal
graph (edge iff within wind reach and not upwind). Both boundary predicates
are inclusive; no epsilon slack is applied.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field

from .errors import GatewayError, TrapnetError, UnknownNodeError
from .geo import GEOGRAPHIC, KM_PER_DEG, Deployment, distance_km


@dataclass(frozen=True)
class RadioGraph:
    """Undirected range graph: adjacency lists sorted ascending by neighbor id."""

    deployment: Deployment
    range_km: float
    adj: dict[int, tuple[int, ...]]

    def degree(self, node_id: int) -> int:
        return len(self.adj[node_id])

    def neighbors(self, node_id: int) -> tuple[int, ...]:
        try:
            return self.adj[node_id]
        except KeyError:
            raise UnknownNodeError(f"unknown node id {node_id}") from None

    def edges(self) -> list[tuple[int, int]]:
        """All undirected edges as (u, v) pairs with u < v, sorted."""
        out = []
        for u, nbrs in self.adj.items():
            for v in nbrs:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out

    def to_json_dict(self) -> dict:
        return {
            "coordinate_mode": self.deployment.mode,
            "range_km": self.range_km,
            "nodes": [
                {"id": s.id, "label": s.label, "x": s.x, "y": s.y}
                for s in self.deployment.sites
            ],
            "edges": [[u, v] for u, v in self.edges()],
        }


@dataclass(frozen=True)
class WindField:
    """Wind parameters: speed (km/h), sampling duration (h), bearing the wind
    blows toward, in degrees clockwise from geographic north."""

    velocity_kmh: float
    sampling_hours: float
    bearing_deg: float = field(default=0.0)

    def __post_init__(self) -> None:
        if self.velocity_kmh < 0:
            raise TrapnetError(f"wind velocity must be >= 0, got {self.velocity_kmh}")
        if self.sampling_hours <= 0:
            raise TrapnetError(f"sampling hours must be > 0, got {self.sampling_hours}")
        object.__setattr__(self, "bearing_deg", self.bearing_deg % 360.0)


def wind_radius_km(w: WindField) -> float:
    """Maximum dispersal distance downwind: velocity times sampling time."""
    return w.velocity_kmh * w.sampling_hours


@dataclass(frozen=True)
class WindGraph:
    """Directed wind-dispersal graph; per-node target lists sorted ascending."""

    deployment: Deployment
    wind: WindField
    adj: dict[int, tuple[int, ...]]

    def arcs(self) -> list[tuple[int, int]]:
        out = []
        for u, targets in self.adj.items():
            for v in targets:
                out.append((u, v))
        out.sort()
        return out

    def support_edges(self) -> list[tuple[int, int]]:
        """Undirected support: (u, v) with u < v where either direction is an arc."""
        support = set()
        for u, v in self.arcs():
            support.add((min(u, v), max(u, v)))
        return sorted(support)

    def to_json_dict(self) -> dict:
        return {
            "coordinate_mode": self.deployment.mode,
            "wind": {
                "velocity_kmh": self.wind.velocity_kmh,
                "sampling_hours": self.wind.sampling_hours,
                "bearing_deg": self.wind.bearing_deg,
                "radius_km": wind_radius_km(self.wind),
            },
            "nodes": [
                {"id": s.id, "label": s.label, "x": s.x, "y": s.y}
                for s in self.deployment.sites
            ],
            "arcs": [[u, v] for u, v in self.arcs()],
        }


def build_radio_graph(d: Deployment, range_km: float) -> RadioGraph:
    """Unit-disk graph over the deployment with the inclusive predicate d <= r."""
    if range_km < 0:
        raise TrapnetError(f"transmission range must be >= 0, got {range_km}")
    sites = d.sites
    adj: dict[int, list[int]] = {s.id: [] for s in sites}
    for i in range(len(sites)):
        for j in range(i + 1, len(sites)):
            if distance_km(sites[i], sites[j], d.mode) <= range_km:
                adj[sites[i].id].append(sites[j].id)
                adj[sites[j].id].append(sites[i].id)
    return RadioGraph(d, range_km, {k: tuple(sorted(v)) for k, v in adj.items()})


def _east_north_km(a, b, mode: str) -> tuple[float, float]:
    """Displacement from a to b as (east, north) km components."""
    if mode == GEOGRAPHIC:
        mean_lat = math.radians((a.y + b.y) / 2.0)
        return (b.x - a.x) * math.cos(mean_lat) * KM_PER_DEG, (b.y - a.y) * KM_PER_DEG
    return b.x - a.x, b.y - a.y


def build_wind_graph(d: Deployment, w: WindField) -> WindGraph:
    """Directed dispersal graph: arc u -> v iff v is within wind reach of u
    and not behind u relative to the wind (angle to the bearing <= pi/2,
    boundary inclusive)."""
    radius = wind_radius_km(w)
    bearing = math.radians(w.bearing_deg)
    wx, wy = math.sin(bearing), math.cos(bearing)
    sites = d.sites
    adj: dict[int, list[int]] = {s.id: [] for s in sites}
    for a in sites:
        for b in sites:
            if a.id == b.id:
                continue
            if distance_km(a, b, d.mode) > radius:
                continue
            dx, dy = _east_north_km(a, b, d.mode)
            if dx * wx + dy * wy >= 0.0:
                adj[a.id].append(b.id)
    return WindGraph(d, w, {k: tuple(sorted(v)) for k, v in adj.items()})


def components(g: RadioGraph) -> list[list[int]]:
    """Connected components as sorted id lists, ordered by smallest member."""
    seen: set[int] = set()
    out: list[list[int]] = []
    for start in sorted(g.adj):
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in g.adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        out.append(sorted(comp))
    return out


def hop_distances(g: RadioGraph, source: int) -> dict[int, int | None]:
    """Breadth-first hop counts from source; unreachable nodes map to None."""
    if source not in g.adj:
        raise UnknownNodeError(f"unknown source id {source}")
    dist: dict[int, int | None] = {node: None for node in g.adj}
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if dist[v] is None:
                dist[v] = dist[u] + 1  # type: ignore[operator]
                queue.append(v)
    return dist


def eccentricity(g: RadioGraph, node_id: int) -> int:
    """Maximum hop distance from the node to any node of its component."""
    dist = hop_distances(g, node_id)
    return max(h for h in dist.values() if h is not None)


def largest_component(g: RadioGraph) -> list[int]:
    """Largest component; ties broken toward the smallest member id."""
    comps = components(g)
    if not comps:
        return []
    return max(comps, key=lambda c: (len(c), -c[0]))


def auto_leader(g: RadioGraph) -> int | None:
    """Default leader/gateway: the maximum id in the largest component."""
    comp = largest_component(g)
    return comp[-1] if comp else None


@dataclass(frozen=True)
class NetworkMetrics:
    """One row of the range study: connectivity, fan-out, and depth figures.

    channels counts directed links (two per undirected edge); fan-out is
    taken over bound nodes only; network_count counts components of size
    >= 2; radius_min is the smallest eccentricity within the largest
    component; depth_leader is the leader's eccentricity in its component.
    """

    range_km: float
    total_nodes: int
    bound_nodes: int
    isolated_nodes: int
    undirected_edges: int
    channels: int
    fanout_min: int
    fanout_max: int
    network_count: int
    diameter_max: int
    radius_min: int
    depth_leader: int
    leader_id: int | None

    def as_dict(self) -> dict:
        return {
            "range_km": self.range_km,
            "total_nodes": self.total_nodes,
            "bound_nodes": self.bound_nodes,
            "isolated_nodes": self.isolated_nodes,
            "undirected_edges": self.undirected_edges,
            "channels": self.channels,
            "fanout_min": self.fanout_min,
            "fanout_max": self.fanout_max,
            "network_count": self.network_count,
            "diameter_max": self.diameter_max,
            "radius_min": self.radius_min,
            "depth_leader": self.depth_leader,
        }


def network_metrics(g: RadioGraph, leader: int | str = "auto") -> NetworkMetrics:
    """Compute every metrics field for one graph.

    leader="auto" elects the maximum id in the largest component. An explicit
    leader must exist and be bound; an isolated or unknown id is an error.
    """
    degrees = {node: len(nbrs) for node, nbrs in g.adj.items()}
    total = len(degrees)
    bound = [node for node, deg in degrees.items() if deg >= 1]
    isolated = total - len(bound)
    undirected = sum(degrees.values()) // 2

    comps = components(g)
    networks = [c for c in comps if len(c) >= 2]

    ecc: dict[int, int] = {}
    for comp in networks:
        for node in comp:
            ecc[node] = eccentricity(g, node)
    diameter_max = max((max(ecc[n] for n in comp) for comp in networks), default=0)

    largest = largest_component(g)
    if len(largest) >= 2:
        radius_min = min(ecc[n] for n in largest)
    else:
        radius_min = 0

    if leader == "auto":
        leader_id = largest[-1] if largest else None
    else:
        if not isinstance(leader, int):
            raise GatewayError(f"leader must be 'auto' or an integer id, got {leader!r}")
        if leader not in g.adj:
            raise GatewayError(f"leader id {leader} is not in the deployment")
        if degrees[leader] == 0:
            raise GatewayError(f"leader id {leader} is isolated at range {g.range_km}")
        leader_id = leader

    if leader_id is None or degrees.get(leader_id, 0) == 0:
        depth_leader = 0
    else:
        depth_leader = ecc[leader_id]

    return NetworkMetrics(
        range_km=g.range_km,
        total_nodes=total,
        bound_nodes=len(bound),
        isolated_nodes=isolated,
        undirected_edges=undirected,
        channels=2 * undirected,
        fanout_min=min((degrees[n] for n in bound), default=0),
        fanout_max=max((degrees[n] for n in bound), default=0),
        network_count=len(networks),
        diameter_max=diameter_max,
        radius_min=radius_min,
        depth_leader=depth_leader,
        leader_id=leader_id,
    )


def graph_to_dot(g: RadioGraph | WindGraph) -> str:
    """DOT text: undirected for radio graphs, directed for wind graphs."""
    lines = []
    by_id = {s.id: s for s in g.deployment.sites}
    if isinstance(g, RadioGraph):
        lines.append("graph radio {")
        for node in sorted(g.adj):
            lines.append(f'  {node} [label="{node}:{by_id[node].label}"];')
        for u, v in g.edges():
            lines.append(f"  {u} -- {v};")
    else:
        lines.append("digraph wind {")
        for node in sorted(g.adj):
            lines.append(f'  {node} [label="{node}:{by_id[node].label}"];')
        for u, v in g.arcs():
            lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_geojson(g: RadioGraph | WindGraph) -> str:
    """GeoJSON FeatureCollection: one Point per node, one LineString per link.

    Planar graphs emit raw km coordinates in place of lon/lat.
    """
    by_id = {s.id: s for s in g.deployment.sites}
    features: list[dict] = [
        {
            "type": "Feature",
            "geometry": {"type": "Point", "coordinates": [s.x, s.y]},
            "properties": {"id": s.id, "label": s.label},
        }
        for s in g.deployment.sites
    ]
    links = g.edges() if isinstance(g, RadioGraph) else g.arcs()
    for u, v in links:
        a, b = by_id[u], by_id[v]
        features.append(
            {
                "type": "Feature",
                "geometry": {"type": "LineString", "coordinates": [[a.x, a.y], [b.x, b.y]]},
                "properties": {"source": u, "target": v},
            }
        )
    return json.dumps({"type": "FeatureCollection", "features": features}, indent=2) + "\n"
