import type { RadioGraphPayload, TrapNode, WindGraphPayload } from "./api";

// Structural subset of CanvasRenderingContext2D, so tests and the parity
// script can pass a recording stub instead of a real canvas.
export interface Ctx2D {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  fill(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fillText(text: string, x: number, y: number): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  fillStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
  textAlign: string;
}

export const COLORS = {
  background: "#ffffff",
  edge: "#9db8d2",
  edgeDim: "#d4dfeb",
  windArc: "#c0392b",
  bound: "#2563a8",
  isolated: "#e67e22",
  gatewayRing: "#1e8449",
  label: "#49586a",
};

export type Transform = (x: number, y: number) => [number, number];

/**
 * Maps data coordinates into a padded viewport. North stays up: the data
 * y axis grows upward, canvas y grows downward, so y is flipped. Degenerate
 * extents (single site, co-located sites) center instead of dividing by zero.
 */
export function makeTransform(nodes: TrapNode[], width: number, height: number, padding = 28): Transform {
  if (nodes.length === 0) {
    return (_x, _y) => [width / 2, height / 2];
  }
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const n of nodes) {
    minX = Math.min(minX, n.x);
    maxX = Math.max(maxX, n.x);
    minY = Math.min(minY, n.y);
    maxY = Math.max(maxY, n.y);
  }
  const spanX = maxX - minX;
  const spanY = maxY - minY;
  const innerW = Math.max(1, width - 2 * padding);
  const innerH = Math.max(1, height - 2 * padding);
  // one scale for both axes keeps distances honest on screen
  const scale = Math.min(spanX > 0 ? innerW / spanX : Infinity, spanY > 0 ? innerH / spanY : Infinity);
  const usable = Number.isFinite(scale) ? scale : 1;
  const offsetX = padding + (innerW - spanX * usable) / 2;
  const offsetY = padding + (innerH - spanY * usable) / 2;
  return (x, y) => [offsetX + (x - minX) * usable, offsetY + (maxY - y) * usable];
}

export interface SceneOptions {
  width: number;
  height: number;
  padding?: number;
  gateway?: number | null;
  showLabels?: boolean;
  scale?: number;
}

export interface RenderStats {
  nodes: number;
  edges: number;
  arcs: number;
  isolated: number;
}

function drawArrow(ctx: Ctx2D, from: [number, number], to: [number, number], headLen: number): void {
  const dx = to[0] - from[0];
  const dy = to[1] - from[1];
  const len = Math.hypot(dx, dy);
  ctx.beginPath();
  ctx.moveTo(from[0], from[1]);
  ctx.lineTo(to[0], to[1]);
  ctx.stroke();
  if (len === 0) {
    return;
  }
  const angle = Math.atan2(dy, dx);
  const spread = Math.PI / 7;
  ctx.beginPath();
  ctx.moveTo(to[0], to[1]);
  ctx.lineTo(to[0] - headLen * Math.cos(angle - spread), to[1] - headLen * Math.sin(angle - spread));
  ctx.moveTo(to[0], to[1]);
  ctx.lineTo(to[0] - headLen * Math.cos(angle + spread), to[1] - headLen * Math.sin(angle + spread));
  ctx.stroke();
}

/**
 * Draws the range graph, an optional wind overlay, and the sites.
 * Isolated sites get their own color; the gateway gets a ring. Returns
 * exactly what was drawn so callers can cross-check against the payload.
 */
export function renderScene(
  ctx: Ctx2D,
  graph: RadioGraphPayload,
  windGraph: WindGraphPayload | null,
  opts: SceneOptions,
): RenderStats {
  const k = opts.scale ?? 1;
  ctx.clearRect(0, 0, opts.width, opts.height);
  const stats: RenderStats = { nodes: 0, edges: 0, arcs: 0, isolated: 0 };
  if (graph.nodes.length === 0) {
    return stats;
  }

  const at = makeTransform(graph.nodes, opts.width, opts.height, (opts.padding ?? 28) * k);
  const pos = new Map<number, [number, number]>();
  const degree = new Map<number, number>();
  for (const n of graph.nodes) {
    pos.set(n.id, at(n.x, n.y));
    degree.set(n.id, 0);
  }
  for (const [a, b] of graph.edges) {
    degree.set(a, (degree.get(a) ?? 0) + 1);
    degree.set(b, (degree.get(b) ?? 0) + 1);
  }

  ctx.strokeStyle = windGraph !== null ? COLORS.edgeDim : COLORS.edge;
  ctx.lineWidth = 1 * k;
  for (const [a, b] of graph.edges) {
    const pa = pos.get(a);
    const pb = pos.get(b);
    if (!pa || !pb) {
      continue;
    }
    ctx.beginPath();
    ctx.moveTo(pa[0], pa[1]);
    ctx.lineTo(pb[0], pb[1]);
    ctx.stroke();
    stats.edges += 1;
  }

  if (windGraph !== null) {
    ctx.strokeStyle = COLORS.windArc;
    ctx.lineWidth = 1.2 * k;
    for (const [a, b] of windGraph.arcs) {
      const pa = pos.get(a);
      const pb = pos.get(b);
      if (!pa || !pb) {
        continue;
      }
      drawArrow(ctx, pa, pb, 7 * k);
      stats.arcs += 1;
    }
  }

  const radius = 4.5 * k;
  for (const n of graph.nodes) {
    const p = pos.get(n.id);
    if (!p) {
      continue;
    }
    const isolated = (degree.get(n.id) ?? 0) === 0;
    if (isolated) {
      stats.isolated += 1;
    }
    ctx.fillStyle = isolated ? COLORS.isolated : COLORS.bound;
    ctx.beginPath();
    ctx.arc(p[0], p[1], radius, 0, 2 * Math.PI);
    ctx.fill();
    if (opts.gateway === n.id) {
      ctx.strokeStyle = COLORS.gatewayRing;
      ctx.lineWidth = 2 * k;
      ctx.beginPath();
      ctx.arc(p[0], p[1], radius + 3.5 * k, 0, 2 * Math.PI);
      ctx.stroke();
    }
    stats.nodes += 1;
  }

  const showLabels = opts.showLabels ?? graph.nodes.length <= 40;
  if (showLabels) {
    ctx.fillStyle = COLORS.label;
    ctx.font = `${11 * k}px system-ui, sans-serif`;
    ctx.textAlign = "center";
    for (const n of graph.nodes) {
      const p = pos.get(n.id);
      if (p) {
        ctx.fillText(n.label, p[0], p[1] - (radius + 4 * k));
      }
    }
  }
  return stats;
}

/** Nearest site within reach of a click, or null. */
export function pickNode(
  nodes: TrapNode[],
  at: Transform,
  x: number,
  y: number,
  maxDistance = 12,
): TrapNode | null {
  let best: TrapNode | null = null;
  let bestDist = maxDistance;
  for (const n of nodes) {
    const p = at(n.x, n.y);
    const d = Math.hypot(p[0] - x, p[1] - y);
    if (d <= bestDist) {
      best = n;
      bestDist = d;
    }
  }
  return best;
}
