import { type DeploymentPayload, deploymentUrl, getJson } from "./api";
import { collectLine, formatKm, metricsPanelRows, regimeBadge } from "./format";
import { makeTransform, pickNode, renderScene } from "./render";
import { type ViewState, ViewController } from "./state";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`missing #${id}`);
  }
  return el as T;
}

function readNumber(input: HTMLInputElement): number {
  return Number(input.value);
}

async function start(): Promise<void> {
  const canvas = byId<HTMLCanvasElement>("map");
  const slider = byId<HTMLInputElement>("range");
  const rangeOut = byId<HTMLElement>("range-out");
  const windToggle = byId<HTMLInputElement>("wind-on");
  const windV = byId<HTMLInputElement>("wind-v");
  const windT = byId<HTMLInputElement>("wind-t");
  const windB = byId<HTMLInputElement>("wind-bearing");
  const gatewaySel = byId<HTMLSelectElement>("gateway");
  const sleepInput = byId<HTMLInputElement>("sleep-min");
  const panel = byId<HTMLElement>("metrics");
  const badge = byId<HTMLElement>("regime");
  const warnBox = byId<HTMLElement>("warning");
  const collectBox = byId<HTMLElement>("collect");
  const subtitle = byId<HTMLElement>("subtitle");

  const controller = new ViewController();

  // slider bounds are configurable on the markup; 1..50 km by default
  slider.min = slider.dataset.min ?? "1";
  slider.max = slider.dataset.max ?? "50";
  slider.step = slider.dataset.step ?? "0.5";
  slider.value = String(controller.state.rangeKm);
  rangeOut.textContent = formatKm(controller.state.rangeKm);
  windV.value = String(controller.state.wind.velocityKmh);
  windT.value = String(controller.state.wind.samplingHours);
  windB.value = String(controller.state.wind.bearingDeg);
  sleepInput.value = String(controller.state.sleepMinutes);

  let deployment: DeploymentPayload | null = null;
  try {
    deployment = await getJson<DeploymentPayload>(deploymentUrl());
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

  function draw(s: ViewState): void {
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
      scale: dpr,
    });
  }

  function update(s: ViewState): void {
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
  const applyWind = (): void => {
    controller.setWind(windToggle.checked, {
      velocityKmh: readNumber(windV),
      samplingHours: readNumber(windT),
      bearingDeg: readNumber(windB),
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
