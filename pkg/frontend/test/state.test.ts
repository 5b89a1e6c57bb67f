import { describe, expect, it } from "vitest";
import type { MetricsRow, RadioGraphPayload, SimulatePayload, WindGraphPayload } from "../src/api";
import { ViewController, validWind } from "../src/state";

interface Pending {
  url: string;
  resolve: (value: unknown) => void;
  reject: (err: unknown) => void;
}

// Hand-settled fetch plus a hand-fired timer, so tests control both the
// network and the debounce clock.
function harness() {
  const calls: string[] = [];
  const pending: Pending[] = [];
  const timers: Array<{ fn: () => void; ms: number; cleared: boolean; fired: boolean }> = [];
  const controller = new ViewController({
    fetchJson: (url) => {
      calls.push(url);
      return new Promise((resolve, reject) => {
        pending.push({ url, resolve, reject });
      });
    },
    setTimer: (fn, ms) => {
      timers.push({ fn, ms, cleared: false, fired: false });
      return timers.length - 1;
    },
    clearTimer: (handle) => {
      timers[handle].cleared = true;
    },
  });
  const fireTimers = () => {
    for (const t of timers) {
      if (!t.cleared && !t.fired) {
        t.fired = true;
        t.fn();
      }
    }
  };
  const settle = async (match: string, value: unknown) => {
    const hits = pending.filter((p) => p.url.includes(match));
    for (const hit of hits) {
      pending.splice(pending.indexOf(hit), 1);
      hit.resolve(value);
    }
    await Promise.resolve();
    await Promise.resolve();
  };
  const fail = async (match: string, message: string) => {
    const hits = pending.filter((p) => p.url.includes(match));
    for (const hit of hits) {
      pending.splice(pending.indexOf(hit), 1);
      hit.reject(new Error(message));
    }
    await Promise.resolve();
    await Promise.resolve();
  };
  return { controller, calls, pending, timers, fireTimers, settle, fail };
}

function graphAt(rangeKm: number, edges: Array<[number, number]> = [[1, 2]]): RadioGraphPayload {
  return {
    coordinate_mode: "planar",
    range_km: rangeKm,
    nodes: [
      { id: 1, label: "P1", x: 0, y: 0 },
      { id: 2, label: "P2", x: 1, y: 0 },
      { id: 3, label: "P3", x: 9, y: 9 },
    ],
    edges,
  };
}

function metricsAt(rangeKm: number, depth = 1): MetricsRow {
  return {
    range_km: rangeKm,
    total_nodes: 3,
    bound_nodes: 2,
    isolated_nodes: 1,
    undirected_edges: 1,
    channels: 2,
    fanout_min: 1,
    fanout_max: 1,
    network_count: 2,
    diameter_max: 1,
    radius_min: 1,
    depth_leader: depth,
    regime: "disrupted",
    leader_id: 2,
  };
}

function collectAt(gateway: number): SimulatePayload {
  return {
    behavior: "collect",
    converged: true,
    rounds_executed: 2,
    summary: {
      gateway,
      gateway_eccentricity: 1,
      component_diameter: 1,
      routing_convergence_round: 1,
      completion_round: 1,
      latency_minutes: 5,
      samples_originated: 2,
      samples_delivered: 2,
      delivery_rounds: { "1": 0, "2": 1 },
      undeliverable_nodes: [3],
    },
  };
}

async function loadView(h: ReturnType<typeof harness>, rangeKm: number): Promise<void> {
  h.controller.setRange(rangeKm);
  h.fireTimers();
  await h.settle("/api/graph", graphAt(rangeKm));
  await h.settle("/api/metrics", metricsAt(rangeKm));
  await h.settle("/api/simulate", collectAt(2));
}

describe("debounce", () => {
  it("collapses a drag into one request batch for the final value", () => {
    const h = harness();
    h.controller.setRange(5);
    h.controller.setRange(6);
    h.controller.setRange(7);
    expect(h.calls).toHaveLength(0);
    h.fireTimers();
    expect(h.calls.filter((u) => u.includes("/api/graph?range_km=7&")).length + h.calls.filter((u) => u === "/api/graph?range_km=7").length).toBe(1);
    expect(h.calls.some((u) => u.includes("range_km=5") || u.includes("range_km=6"))).toBe(false);
    expect(h.calls).toHaveLength(3);
    expect(h.timers.filter((t) => t.cleared)).toHaveLength(2);
  });

  it("gateway changes fetch immediately, no debounce", () => {
    const h = harness();
    h.controller.setGateway(2);
    expect(h.calls.length).toBe(3);
    expect(h.calls.some((u) => u.includes("gateway=2"))).toBe(true);
  });
});

describe("stale responses", () => {
  it("discards a slow reply for an old range", async () => {
    const h = harness();
    h.controller.refreshNow();
    const oldBatch = h.pending.splice(0);
    h.controller.setRange(12);
    h.fireTimers();
    await h.settle("/api/graph", graphAt(12));
    await h.settle("/api/metrics", metricsAt(12));
    await h.settle("/api/simulate", collectAt(2));
    expect(h.controller.state.graph?.range_km).toBe(12);
    // the old batch resolves late, for range 8
    for (const p of oldBatch) {
      p.resolve(p.url.includes("/api/graph") ? graphAt(8) : p.url.includes("/api/metrics") ? metricsAt(8) : collectAt(2));
    }
    await Promise.resolve();
    await Promise.resolve();
    expect(h.controller.state.graph?.range_km).toBe(12);
    expect(h.controller.state.metrics?.range_km).toBe(12);
  });

  it("commits graph and metrics together, never mixed", async () => {
    const h = harness();
    h.controller.refreshNow();
    await h.settle("/api/graph", graphAt(8));
    // graph resolved but the batch has not settled: nothing committed yet
    expect(h.controller.state.graph).toBeNull();
    await h.settle("/api/metrics", metricsAt(8));
    await h.settle("/api/simulate", collectAt(2));
    expect(h.controller.state.graph?.range_km).toBe(8);
    expect(h.controller.state.metrics?.range_km).toBe(8);
    expect(h.controller.state.collect?.gateway).toBe(2);
    expect(h.controller.state.warning).toBeNull();
  });
});

describe("failures", () => {
  it("keeps the previous metrics when a gateway pick is rejected at the same range", async () => {
    const h = harness();
    await loadView(h, 8);
    expect(h.controller.state.metrics?.depth_leader).toBe(1);

    h.controller.setGateway(3);
    await h.settle("/api/graph", graphAt(8));
    await h.fail("/api/metrics", "leader id 3 is isolated");
    await h.fail("/api/simulate", "leader id 3 is isolated");
    const s = h.controller.state;
    expect(s.warning).toContain("isolated");
    expect(s.metrics?.depth_leader).toBe(1);
    expect(s.collect?.gateway).toBe(2);
    expect(s.graph?.range_km).toBe(8);
  });

  it("drops metrics at a new range instead of showing another range's numbers", async () => {
    const h = harness();
    await loadView(h, 8);
    h.controller.setRange(2);
    h.fireTimers();
    await h.settle("/api/graph", graphAt(2, []));
    await h.fail("/api/metrics", "no bound node");
    await h.fail("/api/simulate", "no bound node");
    const s = h.controller.state;
    expect(s.graph?.range_km).toBe(2);
    expect(s.metrics).toBeNull();
    expect(s.collect).toBeNull();
    expect(s.warning).toContain("no bound node");
  });

  it("keeps the whole last view when the graph fetch itself fails", async () => {
    const h = harness();
    await loadView(h, 8);
    h.controller.setRange(9);
    h.fireTimers();
    await h.fail("/api/graph", "boom");
    await h.fail("/api/metrics", "boom");
    await h.fail("/api/simulate", "boom");
    const s = h.controller.state;
    expect(s.graph?.range_km).toBe(8);
    expect(s.metrics?.range_km).toBe(8);
    expect(s.warning).toBe("boom");
  });
});

describe("wind", () => {
  it("fetches the overlay only when enabled", async () => {
    const h = harness();
    h.controller.refreshNow();
    expect(h.calls.some((u) => u.includes("wind_v"))).toBe(false);
    await h.settle("/api/graph", graphAt(8));
    await h.settle("/api/metrics", metricsAt(8));
    await h.settle("/api/simulate", collectAt(2));

    h.controller.setWind(true, { velocityKmh: 2, samplingHours: 4, bearingDeg: 225 });
    const windCalls = h.calls.filter((u) => u.includes("wind_v=2&wind_t=4&wind_bearing=225"));
    expect(windCalls).toHaveLength(1);
    const windGraph: WindGraphPayload = {
      coordinate_mode: "planar",
      wind: { velocity_kmh: 2, sampling_hours: 4, bearing_deg: 225, radius_km: 8 },
      nodes: graphAt(8).nodes,
      arcs: [[1, 2]],
    };
    await h.settle("wind_v", windGraph);
    await h.settle("/api/metrics", metricsAt(8));
    await h.settle("/api/simulate", collectAt(2));
    await h.settle("/api/graph", graphAt(8));
    expect(h.controller.state.windGraph?.arcs).toHaveLength(1);
  });

  it("rejects invalid parameters client-side, no fetch", () => {
    const h = harness();
    h.controller.setWind(true, { velocityKmh: 2, samplingHours: 0, bearingDeg: 90 });
    expect(h.calls).toHaveLength(0);
    expect(h.controller.state.warning).toContain("wind");
    expect(h.controller.state.windEnabled).toBe(false);
    expect(validWind({ velocityKmh: 0, samplingHours: 1, bearingDeg: 0 })).toBe(true);
    expect(validWind({ velocityKmh: -1, samplingHours: 1, bearingDeg: 0 })).toBe(false);
  });
});

describe("input guards", () => {
  it("ignores nonpositive range and sleep values", () => {
    const h = harness();
    h.controller.setRange(0);
    h.controller.setRange(Number.NaN);
    h.controller.setSleepMinutes(0);
    expect(h.calls).toHaveLength(0);
    expect(h.timers).toHaveLength(0);
    expect(h.controller.state.rangeKm).toBe(8);
    expect(h.controller.state.sleepMinutes).toBe(5);
  });
});
