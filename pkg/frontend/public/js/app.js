"use strict";
(() => {
  // src/api.ts
  var ApiError = class extends Error {
    constructor(status, message) {
      super(message);
      this.status = status;
      this.name = "ApiError";
    }
  };
  function deploymentUrl(base = "") {
    return `${base}/api/deployment`;
  }
  function graphUrl(rangeKm, wind = null, base = "") {
    let url = `${base}/api/graph?range_km=${rangeKm}`;
    if (wind !== null) {
      url += `&wind_v=${wind.velocityKmh}&wind_t=${wind.samplingHours}&wind_bearing=${wind.bearingDeg}`;
    }
    return url;
  }
  function metricsUrl(rangeKm, gateway, base = "") {
    return `${base}/api/metrics?range_km=${rangeKm}&gateway=${gateway}`;
  }
  function collectUrl(rangeKm, gateway, sleepMinutes, base = "") {
    return `${base}/api/simulate?range_km=${rangeKm}&behavior=collect&capacity=1&sleep_min=${sleepMinutes}&gateway=${gateway}`;
  }
  async function getJson(url) {
    const resp = await fetch(url);
    if (!resp.ok) {
      let detail = `${resp.status} ${resp.statusText}`.trim();
      try {
        const body = await resp.json();
        if (body && typeof body.error === "string") {
          detail = body.error;
        }
      } catch {
      }
      throw new ApiError(resp.status, detail);
    }
    return await resp.json();
  }

  // src/format.ts
  function formatNumber(value) {
    if (Number.isInteger(value)) {
      return String(value);
    }
    return String(Math.round(value * 100) / 100);
  }
  function formatKm(value) {
    return `${formatNumber(value)} km`;
  }
  function formatMinutes(value) {
    return `${formatNumber(value)} min`;
  }
  var REGIME_BADGES = {
    disrupted: { label: "disrupted", className: "disrupted" },
    single: { label: "single network", className: "single" },
    over_connected: { label: "over-connected", className: "over" }
  };
  function regimeBadge(regime) {
    return REGIME_BADGES[regime] ?? { label: regime, className: "unknown" };
  }
  function metricsPanelRows(m) {
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
      { label: "leader", value: m.leader_id === null ? "-" : formatNumber(m.leader_id) }
    ];
  }
  function collectLine(c, sleepMinutes) {
    if (c === null) {
      return null;
    }
    let line = `Gateway ${c.gateway}: depth ${formatNumber(c.gateway_eccentricity)} hops, completion round ${formatNumber(c.completion_round)}, latency ${formatMinutes(c.latency_minutes)} at ${formatNumber(sleepMinutes)} min sleep`;
    if (c.undeliverable_nodes.length > 0) {
      line += `; ${c.undeliverable_nodes.length} sites out of reach`;
    }
    return line;
  }

  // src/render.ts
  var COLORS = {
    background: "#ffffff",
    edge: "#9db8d2",
    edgeDim: "#d4dfeb",
    windArc: "#c0392b",
    bound: "#2563a8",
    isolated: "#e67e22",
    gatewayRing: "#1e8449",
    label: "#49586a"
  };
  function makeTransform(nodes, width, height, padding = 28) {
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
    const scale = Math.min(spanX > 0 ? innerW / spanX : Infinity, spanY > 0 ? innerH / spanY : Infinity);
    const usable = Number.isFinite(scale) ? scale : 1;
    const offsetX = padding + (innerW - spanX * usable) / 2;
    const offsetY = padding + (innerH - spanY * usable) / 2;
    return (x, y) => [offsetX + (x - minX) * usable, offsetY + (maxY - y) * usable];
  }
  function drawArrow(ctx, from, to, headLen) {
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
  function renderScene(ctx, graph, windGraph, opts) {
    const k = opts.scale ?? 1;
    ctx.clearRect(0, 0, opts.width, opts.height);
    const stats = { nodes: 0, edges: 0, arcs: 0, isolated: 0 };
    if (graph.nodes.length === 0) {
      return stats;
    }
    const at = makeTransform(graph.nodes, opts.width, opts.height, (opts.padding ?? 28) * k);
    const pos = /* @__PURE__ */ new Map();
    const degree = /* @__PURE__ */ new Map();
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
  function pickNode(nodes, at, x, y, maxDistance = 12) {
    let best = null;
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

  // src/state.ts
  function validWind(w) {
    return Number.isFinite(w.velocityKmh) && w.velocityKmh >= 0 && Number.isFinite(w.samplingHours) && w.samplingHours > 0 && Number.isFinite(w.bearingDeg);
  }
  function messageOf(err) {
    return err instanceof Error ? err.message : String(err);
  }
  var ViewController = class {
    constructor(options = {}) {
      this.listeners = [];
      this.ticket = 0;
      this.timer = null;
      this.fetchJson = options.fetchJson ?? ((url) => getJson(url));
      this.base = options.base ?? "";
      this.debounceMs = options.debounceMs ?? 150;
      this.setTimer = options.setTimer ?? ((fn, ms) => setTimeout(fn, ms));
      this.clearTimer = options.clearTimer ?? ((handle) => clearTimeout(handle));
      this.state = {
        rangeKm: 8,
        windEnabled: false,
        wind: { velocityKmh: 2, samplingHours: 4, bearingDeg: 225 },
        gateway: "auto",
        sleepMinutes: 5,
        graph: null,
        windGraph: null,
        metrics: null,
        collect: null,
        warning: null,
        loading: false,
        ...options.initial
      };
    }
    subscribe(listener) {
      this.listeners.push(listener);
      return () => {
        this.listeners = this.listeners.filter((l) => l !== listener);
      };
    }
    emit() {
      for (const listener of this.listeners) {
        listener(this.state);
      }
    }
    patch(changes) {
      this.state = { ...this.state, ...changes };
      this.emit();
    }
    /** Slider input; fetches are debounced so drags do not flood the server. */
    setRange(rangeKm) {
      if (!Number.isFinite(rangeKm) || rangeKm <= 0) {
        return;
      }
      this.patch({ rangeKm });
      this.scheduleRefresh();
    }
    /** Wind overlay toggle; invalid parameters never reach the server. */
    setWind(enabled, wind) {
      const next = wind ?? this.state.wind;
      if (enabled && !validWind(next)) {
        this.patch({
          windEnabled: false,
          windGraph: null,
          wind: next,
          warning: "wind needs velocity >= 0 km/h and sampling hours > 0"
        });
        return;
      }
      this.patch({ windEnabled: enabled, wind: next, windGraph: enabled ? this.state.windGraph : null });
      this.refreshNow();
    }
    setGateway(gateway) {
      this.patch({ gateway });
      this.refreshNow();
    }
    setSleepMinutes(sleepMinutes) {
      if (!Number.isFinite(sleepMinutes) || sleepMinutes <= 0) {
        return;
      }
      this.patch({ sleepMinutes });
      this.refreshNow();
    }
    scheduleRefresh() {
      if (this.timer !== null) {
        this.clearTimer(this.timer);
      }
      this.timer = this.setTimer(() => {
        this.timer = null;
        void this.refresh();
      }, this.debounceMs);
    }
    refreshNow() {
      if (this.timer !== null) {
        this.clearTimer(this.timer);
        this.timer = null;
      }
      void this.refresh();
    }
    async refresh() {
      const ticket = ++this.ticket;
      const s = this.state;
      this.patch({ loading: true });
      const wind = s.windEnabled && validWind(s.wind) ? s.wind : null;
      const settled = await Promise.allSettled([
        this.fetchJson(graphUrl(s.rangeKm, null, this.base)),
        this.fetchJson(metricsUrl(s.rangeKm, s.gateway, this.base)),
        this.fetchJson(collectUrl(s.rangeKm, s.gateway, s.sleepMinutes, this.base)),
        wind === null ? Promise.resolve(null) : this.fetchJson(
          graphUrl(s.rangeKm, { velocityKmh: wind.velocityKmh, samplingHours: wind.samplingHours, bearingDeg: wind.bearingDeg }, this.base)
        )
      ]);
      if (ticket !== this.ticket) {
        return;
      }
      const [graphRes, metricsRes, collectRes, windRes] = settled;
      if (graphRes.status === "rejected") {
        this.patch({ loading: false, warning: messageOf(graphRes.reason) });
        return;
      }
      const graph = graphRes.value;
      const sameRange = this.state.graph !== null && this.state.graph.range_km === graph.range_km;
      let warning = null;
      let metrics;
      if (metricsRes.status === "fulfilled") {
        metrics = metricsRes.value;
      } else {
        metrics = sameRange ? this.state.metrics : null;
        warning = messageOf(metricsRes.reason);
      }
      let collect;
      if (collectRes.status === "fulfilled") {
        collect = collectRes.value.summary;
      } else {
        collect = sameRange && metricsRes.status === "rejected" ? this.state.collect : null;
        warning = warning ?? messageOf(collectRes.reason);
      }
      let windGraph = null;
      if (windRes.status === "fulfilled") {
        windGraph = windRes.value;
      } else {
        warning = warning ?? messageOf(windRes.reason);
      }
      this.patch({ graph, metrics, collect, windGraph, warning, loading: false });
    }
  };

  // src/main.ts
  function byId(id) {
    const el = document.getElementById(id);
    if (!el) {
      throw new Error(`missing #${id}`);
    }
    return el;
  }
  function readNumber(input) {
    return Number(input.value);
  }
  async function start() {
    const canvas = byId("map");
    const slider = byId("range");
    const rangeOut = byId("range-out");
    const windToggle = byId("wind-on");
    const windV = byId("wind-v");
    const windT = byId("wind-t");
    const windB = byId("wind-bearing");
    const gatewaySel = byId("gateway");
    const sleepInput = byId("sleep-min");
    const panel = byId("metrics");
    const badge = byId("regime");
    const warnBox = byId("warning");
    const collectBox = byId("collect");
    const subtitle = byId("subtitle");
    const controller = new ViewController();
    slider.min = slider.dataset.min ?? "1";
    slider.max = slider.dataset.max ?? "50";
    slider.step = slider.dataset.step ?? "0.5";
    slider.value = String(controller.state.rangeKm);
    rangeOut.textContent = formatKm(controller.state.rangeKm);
    windV.value = String(controller.state.wind.velocityKmh);
    windT.value = String(controller.state.wind.samplingHours);
    windB.value = String(controller.state.wind.bearingDeg);
    sleepInput.value = String(controller.state.sleepMinutes);
    let deployment = null;
    try {
      deployment = await getJson(deploymentUrl());
    } catch (err) {
      warnBox.textContent = `server unreachable: ${err instanceof Error ? err.message : err}`;
      warnBox.hidden = false;
      return;
    }
    subtitle.textContent = `${deployment.total_nodes} trap sites, ${deployment.coordinate_mode} coordinates`;
    for (const node of deployment.nodes) {
      const opt = document.createElement("option");
      opt.value = String(node.id);
      opt.textContent = `${node.label} (${node.id})`;
      gatewaySel.appendChild(opt);
    }
    function draw(s) {
      const ctx = canvas.getContext("2d");
      if (!ctx || s.graph === null) {
        return;
      }
      const dpr = window.devicePixelRatio || 1;
      const w = canvas.clientWidth * dpr;
      const h = canvas.clientHeight * dpr;
      if (canvas.width !== w || canvas.height !== h) {
        canvas.width = w;
        canvas.height = h;
      }
      const gateway = s.collect !== null ? s.collect.gateway : typeof s.gateway === "number" ? s.gateway : null;
      renderScene(ctx, s.graph, s.windEnabled ? s.windGraph : null, {
        width: w,
        height: h,
        gateway,
        scale: dpr
      });
    }
    function update(s) {
      rangeOut.textContent = formatKm(s.rangeKm);
      panel.innerHTML = "";
      for (const row of metricsPanelRows(s.metrics)) {
        const dt = document.createElement("dt");
        dt.textContent = row.label;
        const dd = document.createElement("dd");
        dd.textContent = row.value;
        panel.appendChild(dt);
        panel.appendChild(dd);
      }
      if (s.metrics !== null) {
        const b = regimeBadge(s.metrics.regime);
        badge.textContent = b.label;
        badge.className = `badge ${b.className}`;
        badge.hidden = false;
      } else {
        badge.hidden = true;
      }
      const line = collectLine(s.collect, s.sleepMinutes);
      collectBox.textContent = line ?? "";
      collectBox.hidden = line === null;
      warnBox.textContent = s.warning ?? "";
      warnBox.hidden = s.warning === null;
      document.body.classList.toggle("loading", s.loading);
      draw(s);
    }
    controller.subscribe(update);
    slider.addEventListener("input", () => {
      controller.setRange(readNumber(slider));
    });
    const applyWind = () => {
      controller.setWind(windToggle.checked, {
        velocityKmh: readNumber(windV),
        samplingHours: readNumber(windT),
        bearingDeg: readNumber(windB)
      });
    };
    windToggle.addEventListener("change", applyWind);
    windV.addEventListener("change", applyWind);
    windT.addEventListener("change", applyWind);
    windB.addEventListener("change", applyWind);
    gatewaySel.addEventListener("change", () => {
      controller.setGateway(gatewaySel.value === "auto" ? "auto" : Number(gatewaySel.value));
    });
    sleepInput.addEventListener("change", () => {
      controller.setSleepMinutes(readNumber(sleepInput));
    });
    canvas.addEventListener("click", (ev) => {
      const s = controller.state;
      if (s.graph === null) {
        return;
      }
      const rect = canvas.getBoundingClientRect();
      const dpr = window.devicePixelRatio || 1;
      const at = makeTransform(s.graph.nodes, canvas.width, canvas.height, 28 * dpr);
      const hit = pickNode(s.graph.nodes, at, (ev.clientX - rect.left) * dpr, (ev.clientY - rect.top) * dpr, 14 * dpr);
      if (hit !== null) {
        gatewaySel.value = String(hit.id);
        controller.setGateway(hit.id);
      }
    });
    window.addEventListener("resize", () => {
      draw(controller.state);
    });
    controller.refreshNow();
  }
  void start();
})();
//# sourceMappingURL=app.js.map
