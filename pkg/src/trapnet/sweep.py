"""Range sweeps: metrics for each candidate radio range, regime labels,
and export dispatch for graphs and sweep tables."""

from __future__ import annotations

import io
import json

from .errors import ExportError, GatewayError, TrapnetError
from .geo import Deployment
from .simulate import SimConfig, convergecast_collect, run_simulation
from .topology import (
    NetworkMetrics,
    RadioGraph,
    WindGraph,
    build_radio_graph,
    graph_to_dot,
    graph_to_geojson,
    network_metrics,
)

REGIME_DISRUPTED = "disrupted"
REGIME_SINGLE = "single"
REGIME_OVER_CONNECTED = "over_connected"

SWEEP_CSV_HEADER = (
    "range_km,total_nodes,bound_nodes,isolated_nodes,undirected_edges,channels,"
    "fanout_min,fanout_max,network_count,diameter_max,radius_min,depth_leader,regime"
)
SWEEP_CSV_HEADER_SIM = SWEEP_CSV_HEADER + ",convergence_round,completion_round,latency_minutes"

EXPORT_FORMATS = ("csv", "json", "dot", "geojson")


def classify_regime(m: NetworkMetrics, over_connect_threshold: float | None = None) -> str:
    """Label a topology: disrupted when fragmented or any node is isolated,
    over_connected when single and the peak fan-out reaches the threshold
    (default: half the node count), otherwise single."""
    if over_connect_threshold is None:
        over_connect_threshold = m.total_nodes / 2
    if m.network_count != 1 or m.isolated_nodes > 0:
        return REGIME_DISRUPTED
    if m.fanout_max >= over_connect_threshold:
        return REGIME_OVER_CONNECTED
    return REGIME_SINGLE


class SweepRow:
    """One sweep line: the metrics at one range plus its regime label, with
    optional simulation columns."""

    __slots__ = ("range_km", "metrics", "regime", "convergence_round",
                 "completion_round", "latency_minutes")

    def __init__(self, range_km: float, metrics: NetworkMetrics, regime: str,
                 convergence_round: int | None = None,
                 completion_round: int | None = None,
                 latency_minutes: float | None = None):
        self.range_km = range_km
        self.metrics = metrics
        self.regime = regime
        self.convergence_round = convergence_round
        self.completion_round = completion_round
        self.latency_minutes = latency_minutes

    @property
    def simulated(self) -> bool:
        return self.convergence_round is not None

    def as_dict(self) -> dict:
        out: dict = {"range_km": self.range_km}
        out.update(self.metrics.as_dict())
        out["regime"] = self.regime
        if self.simulated:
            out["convergence_round"] = self.convergence_round
            out["completion_round"] = self.completion_round
            out["latency_minutes"] = self.latency_minutes
        return out


def _format_range(r: float) -> str:
    return repr(int(r)) if float(r).is_integer() else repr(float(r))


def range_sweep(
    deployment: Deployment,
    ranges: list[float],
    simulate: bool = False,
    cfg: SimConfig | None = None,
    over_connect_threshold: float | None = None,
) -> list[SweepRow]:
    """Metrics (and optionally simulation figures) for every listed range.

    Ranges are processed in the given order. Any failure is re-raised with
    the offending range named. At ranges where no gateway can be bound the
    simulation columns stay empty rather than failing the sweep.
    """
    if not ranges:
        raise TrapnetError("sweep needs at least one range")
    cfg = cfg or SimConfig()
    rows: list[SweepRow] = []
    for r in ranges:
        try:
            g = build_radio_graph(deployment, r)
            m = network_metrics(g)
            regime = classify_regime(m, over_connect_threshold)
            if not simulate:
                rows.append(SweepRow(r, m, regime))
                continue
            route = run_simulation(g, "route", cfg)
            try:
                collect = convergecast_collect(g, cfg)
                completion = collect.summary["completion_round"]
                latency = collect.summary["latency_minutes"]
            except GatewayError:
                completion = None
                latency = None
            rows.append(
                SweepRow(r, m, regime, route.summary["convergence_round"], completion, latency)
            )
        except TrapnetError as exc:
            raise type(exc)(f"range {_format_range(r)}: {exc}") from exc
    return rows


def sweep_to_csv(rows: list[SweepRow]) -> str:
    if not rows:
        raise ExportError("nothing to export: sweep has no rows")
    simulated = rows[0].simulated
    buf = io.StringIO()
    buf.write((SWEEP_CSV_HEADER_SIM if simulated else SWEEP_CSV_HEADER) + "\n")
    for row in rows:
        m = row.metrics
        cells = [
            _format_range(row.range_km),
            str(m.total_nodes), str(m.bound_nodes), str(m.isolated_nodes),
            str(m.undirected_edges), str(m.channels),
            str(m.fanout_min), str(m.fanout_max),
            str(m.network_count), str(m.diameter_max), str(m.radius_min),
            str(m.depth_leader), row.regime,
        ]
        if simulated:
            cells.append("" if row.convergence_round is None else str(row.convergence_round))
            cells.append("" if row.completion_round is None else str(row.completion_round))
            if row.latency_minutes is None:
                cells.append("")
            else:
                lat = row.latency_minutes
                cells.append(repr(int(lat)) if float(lat).is_integer() else repr(float(lat)))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def sweep_to_json(rows: list[SweepRow]) -> str:
    return json.dumps([row.as_dict() for row in rows], indent=2) + "\n"


def export_graph(g: RadioGraph | WindGraph, fmt: str) -> str:
    """Serialize one graph: json, dot, or geojson."""
    if fmt == "json":
        return json.dumps(g.to_json_dict(), indent=2) + "\n"
    if fmt == "dot":
        return graph_to_dot(g)
    if fmt == "geojson":
        return graph_to_geojson(g)
    raise ExportError(f"unknown graph export format {fmt!r}; expected json, dot, or geojson")


def export_sweep(rows: list[SweepRow], fmt: str) -> str:
    """Serialize a sweep table: csv or json."""
    if fmt == "csv":
        return sweep_to_csv(rows)
    if fmt == "json":
        return sweep_to_json(rows)
    raise ExportError(f"unknown sweep export format {fmt!r}; expected csv or json")
