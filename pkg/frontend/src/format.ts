import type { CollectSummary, MetricsRow } from "./api";

/** Integers render bare; fractions are trimmed to at most two decimals. */
export function formatNumber(value: number): string {
  if (Number.isInteger(value)) {
    return String(value);
  }
  return String(Math.round(value * 100) / 100);
}

export function formatKm(value: number): string {
  return `${formatNumber(value)} km`;
}

export function formatMinutes(value: number): string {
  return `${formatNumber(value)} min`;
}

export interface RegimeBadge {
  label: string;
  className: string;
}

const REGIME_BADGES: Record<string, RegimeBadge> = {
  disrupted: { label: "disrupted", className: "disrupted" },
  single: { label: "single network", className: "single" },
  over_connected: { label: "over-connected", className: "over" },
};

export function regimeBadge(regime: string): RegimeBadge {
  return REGIME_BADGES[regime] ?? { label: regime, className: "unknown" };
}

export interface PanelRow {
  label: string;
  value: string;
}

/**
 * Metrics panel rows, straight from the server's row in its column order.
 * No value is recomputed client-side.
 */
export function metricsPanelRows(m: MetricsRow | null): PanelRow[] {
  if (m === null) {
    return [];
  }
  return [
    { label: "range", value: formatKm(m.range_km) },
    { label: "trap sites", value: formatNumber(m.total_nodes) },
    { label: "bound", value: formatNumber(m.bound_nodes) },
    { label: "isolated", value: formatNumber(m.isolated_nodes) },
    { label: "links", value: formatNumber(m.undirected_edges) },
    { label: "channels", value: formatNumber(m.channels) },
    { label: "fan-out min", value: formatNumber(m.fanout_min) },
    { label: "fan-out max", value: formatNumber(m.fanout_max) },
    { label: "sub-networks", value: formatNumber(m.network_count) },
    { label: "diameter", value: formatNumber(m.diameter_max) },
    { label: "radius", value: formatNumber(m.radius_min) },
    { label: "depth to leader", value: formatNumber(m.depth_leader) },
    { label: "leader", value: m.leader_id === null ? "-" : formatNumber(m.leader_id) },
  ];
}

/** One-line collection report; every number comes verbatim from the summary. */
export function collectLine(c: CollectSummary | null, sleepMinutes: number): string | null {
  if (c === null) {
    return null;
  }
  let line =
    `Gateway ${c.gateway}: depth ${formatNumber(c.gateway_eccentricity)} hops, ` +
    `completion round ${formatNumber(c.completion_round)}, ` +
    `latency ${formatMinutes(c.latency_minutes)} at ${formatNumber(sleepMinutes)} min sleep`;
  if (c.undeliverable_nodes.length > 0) {
    line += `; ${c.undeliverable_nodes.length} sites out of reach`;
  }
  return line;
}
