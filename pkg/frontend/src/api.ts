// Typed access to the trapnet server. All graph and metric math stays
// server-side; this module only shapes URLs and decodes JSON.

export interface TrapNode {
  id: number;
  label: string;
  x: number;
  y: number;
}

export interface DeploymentPayload {
  coordinate_mode: string;
  total_nodes: number;
  bbox: number[] | null;
  nodes: TrapNode[];
}

export interface RadioGraphPayload {
  coordinate_mode: string;
  range_km: number;
  nodes: TrapNode[];
  edges: Array<[number, number]>;
}

export interface WindInfo {
  velocity_kmh: number;
  sampling_hours: number;
  bearing_deg: number;
  radius_km: number;
}

export interface WindGraphPayload {
  coordinate_mode: string;
  wind: WindInfo;
  nodes: TrapNode[];
  arcs: Array<[number, number]>;
}

export interface MetricsRow {
  range_km: number;
  total_nodes: number;
  bound_nodes: number;
  isolated_nodes: number;
  undirected_edges: number;
  channels: number;
  fanout_min: number;
  fanout_max: number;
  network_count: number;
  diameter_max: number;
  radius_min: number;
  depth_leader: number;
  regime: string;
  leader_id: number | null;
}

export interface CollectSummary {
  gateway: number;
  gateway_eccentricity: number;
  component_diameter: number;
  routing_convergence_round: number;
  completion_round: number;
  latency_minutes: number;
  samples_originated: number;
  samples_delivered: number;
  delivery_rounds: Record<string, number>;
  undeliverable_nodes: number[];
}

export interface SimulatePayload {
  behavior: string;
  converged: boolean;
  rounds_executed: number;
  summary: CollectSummary;
}

export interface WindQuery {
  velocityKmh: number;
  samplingHours: number;
  bearingDeg: number;
}

export type Gateway = number | "auto";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export function deploymentUrl(base = ""): string {
  return `${base}/api/deployment`;
}

export function graphUrl(rangeKm: number, wind: WindQuery | null = null, base = ""): string {
  let url = `${base}/api/graph?range_km=${rangeKm}`;
  if (wind !== null) {
    url += `&wind_v=${wind.velocityKmh}&wind_t=${wind.samplingHours}&wind_bearing=${wind.bearingDeg}`;
  }
  return url;
}

export function metricsUrl(rangeKm: number, gateway: Gateway, base = ""): string {
  return `${base}/api/metrics?range_km=${rangeKm}&gateway=${gateway}`;
}

export function collectUrl(rangeKm: number, gateway: Gateway, sleepMinutes: number, base = ""): string {
  return (
    `${base}/api/simulate?range_km=${rangeKm}&behavior=collect` +
    `&capacity=1&sleep_min=${sleepMinutes}&gateway=${gateway}`
  );
}

/** GET a JSON endpoint; non-2xx responses become ApiError with the server's message. */
export async function getJson<T>(url: string): Promise<T> {
  const resp = await fetch(url);
  if (!resp.ok) {
    let detail = `${resp.status} ${resp.statusText}`.trim();
    try {
      const body = (await resp.json()) as { error?: unknown };
      if (body && typeof body.error === "string") {
        detail = body.error;
      }
    } catch {
      // non-JSON error body, keep the status line
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}
