import { describe, expect, it } from "vitest";
import type { CollectSummary, MetricsRow } from "../src/api";
import { collectLine, formatKm, formatMinutes, formatNumber, metricsPanelRows, regimeBadge } from "../src/format";

const ROW: MetricsRow = {
  range_km: 8,
  total_nodes: 60,
  bound_nodes: 60,
  isolated_nodes: 0,
  undirected_edges: 131,
  channels: 262,
  fanout_min: 1,
  fanout_max: 8,
  network_count: 1,
  diameter_max: 15,
  radius_min: 8,
  depth_leader: 12,
  regime: "single",
  leader_id: 60,
};

const SUMMARY: CollectSummary = {
  gateway: 43,
  gateway_eccentricity: 9,
  component_diameter: 12,
  routing_convergence_round: 12,
  completion_round: 9,
  latency_minutes: 45,
  samples_originated: 60,
  samples_delivered: 60,
  delivery_rounds: {},
  undeliverable_nodes: [],
};

describe("number formatting", () => {
  it("renders integers bare and trims fractions", () => {
    expect(formatNumber(7)).toBe("7");
    expect(formatNumber(7.5)).toBe("7.5");
    expect(formatNumber(1 / 3)).toBe("0.33");
    expect(formatKm(7.5)).toBe("7.5 km");
    expect(formatMinutes(45)).toBe("45 min");
  });
});

describe("metrics panel", () => {
  it("maps every server field verbatim, in column order", () => {
    const rows = metricsPanelRows(ROW);
    expect(rows.map((r) => r.label)).toEqual([
      "range",
      "trap sites",
      "bound",
      "isolated",
      "links",
      "channels",
      "fan-out min",
      "fan-out max",
      "sub-networks",
      "diameter",
      "radius",
      "depth to leader",
      "leader",
    ]);
    expect(rows[0].value).toBe("8 km");
    expect(rows[4].value).toBe("131");
    expect(rows[11].value).toBe("12");
    expect(rows[12].value).toBe("60");
  });

  it("shows a dash for a missing leader and nothing for no row", () => {
    expect(metricsPanelRows({ ...ROW, leader_id: null })[12].value).toBe("-");
    expect(metricsPanelRows(null)).toEqual([]);
  });
});

describe("regime badge", () => {
  it("labels the three regimes and falls back for surprises", () => {
    expect(regimeBadge("disrupted")).toEqual({ label: "disrupted", className: "disrupted" });
    expect(regimeBadge("single").className).toBe("single");
    expect(regimeBadge("over_connected").label).toBe("over-connected");
    expect(regimeBadge("???").className).toBe("unknown");
  });
});

describe("collect line", () => {
  it("repeats the summary's numbers verbatim", () => {
    const line = collectLine(SUMMARY, 5);
    expect(line).toBe("Gateway 43: depth 9 hops, completion round 9, latency 45 min at 5 min sleep");
  });

  it("mentions out-of-reach sites when there are any", () => {
    const line = collectLine({ ...SUMMARY, undeliverable_nodes: [7, 9] }, 5);
    expect(line).toContain("2 sites out of reach");
  });

  it("is null without a summary", () => {
    expect(collectLine(null, 5)).toBeNull();
  });
});
