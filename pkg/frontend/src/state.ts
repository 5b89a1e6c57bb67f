import {
  type CollectSummary,
  type Gateway,
  type MetricsRow,
  type RadioGraphPayload,
  type SimulatePayload,
  type WindGraphPayload,
  collectUrl,
  getJson,
  graphUrl,
  metricsUrl,
} from "./api";

export interface WindParams {
  velocityKmh: number;
  samplingHours: number;
  bearingDeg: number;
}

export interface ViewState {
  rangeKm: number;
  windEnabled: boolean;
  wind: WindParams;
  gateway: Gateway;
  sleepMinutes: number;
  graph: RadioGraphPayload | null;
  windGraph: WindGraphPayload | null;
  metrics: MetricsRow | null;
  collect: CollectSummary | null;
  warning: string | null;
  loading: boolean;
}

export type FetchJson = (url: string) => Promise<unknown>;

export interface ControllerOptions {
  fetchJson?: FetchJson;
  base?: string;
  debounceMs?: number;
  setTimer?: (fn: () => void, ms: number) => number;
  clearTimer?: (handle: number) => void;
  initial?: Partial<Pick<ViewState, "rangeKm" | "wind" | "gateway" | "sleepMinutes">>;
}

export function validWind(w: WindParams): boolean {
  return (
    Number.isFinite(w.velocityKmh) &&
    w.velocityKmh >= 0 &&
    Number.isFinite(w.samplingHours) &&
    w.samplingHours > 0 &&
    Number.isFinite(w.bearingDeg)
  );
}

function messageOf(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}

/**
 * Holds the view and keeps its parts in step with each other.
 *
 * Every refresh gets a ticket; a response batch only lands if its ticket is
 * still the newest, so a slow reply for an old range can never overwrite a
 * newer one. Graph, metrics, and collection summary are committed together:
 * the metrics panel always describes the graph on screen.
 */
export class ViewController {
  state: ViewState;

  private fetchJson: FetchJson;
  private base: string;
  private debounceMs: number;
  private setTimer: (fn: () => void, ms: number) => number;
  private clearTimer: (handle: number) => void;
  private listeners: Array<(s: ViewState) => void> = [];
  private ticket = 0;
  private timer: number | null = null;

  constructor(options: ControllerOptions = {}) {
    this.fetchJson = options.fetchJson ?? ((url) => getJson(url));
    this.base = options.base ?? "";
    this.debounceMs = options.debounceMs ?? 150;
    this.setTimer = options.setTimer ?? ((fn, ms) => setTimeout(fn, ms) as unknown as number);
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
      ...options.initial,
    };
  }

  subscribe(listener: (s: ViewState) => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  private patch(changes: Partial<ViewState>): void {
    this.state = { ...this.state, ...changes };
    this.emit();
  }

  /** Slider input; fetches are debounced so drags do not flood the server. */
  setRange(rangeKm: number): void {
    if (!Number.isFinite(rangeKm) || rangeKm <= 0) {
      return;
    }
    this.patch({ rangeKm });
    this.scheduleRefresh();
  }

  /** Wind overlay toggle; invalid parameters never reach the server. */
  setWind(enabled: boolean, wind?: WindParams): void {
    const next = wind ?? this.state.wind;
    if (enabled && !validWind(next)) {
      this.patch({
        windEnabled: false,
        windGraph: null,
        wind: next,
        warning: "wind needs velocity >= 0 km/h and sampling hours > 0",
      });
      return;
    }
    this.patch({ windEnabled: enabled, wind: next, windGraph: enabled ? this.state.windGraph : null });
    this.refreshNow();
  }

  setGateway(gateway: Gateway): void {
    this.patch({ gateway });
    this.refreshNow();
  }

  setSleepMinutes(sleepMinutes: number): void {
    if (!Number.isFinite(sleepMinutes) || sleepMinutes <= 0) {
      return;
    }
    this.patch({ sleepMinutes });
    this.refreshNow();
  }

  scheduleRefresh(): void {
    if (this.timer !== null) {
      this.clearTimer(this.timer);
    }
    this.timer = this.setTimer(() => {
      this.timer = null;
      void this.refresh();
    }, this.debounceMs);
  }

  refreshNow(): void {
    if (this.timer !== null) {
      this.clearTimer(this.timer);
      this.timer = null;
    }
    void this.refresh();
  }

  private async refresh(): Promise<void> {
    const ticket = ++this.ticket;
    const s = this.state;
    this.patch({ loading: true });

    const wind = s.windEnabled && validWind(s.wind) ? s.wind : null;
    const settled = await Promise.allSettled([
      this.fetchJson(graphUrl(s.rangeKm, null, this.base)) as Promise<RadioGraphPayload>,
      this.fetchJson(metricsUrl(s.rangeKm, s.gateway, this.base)) as Promise<MetricsRow>,
      this.fetchJson(collectUrl(s.rangeKm, s.gateway, s.sleepMinutes, this.base)) as Promise<SimulatePayload>,
      wind === null
        ? Promise.resolve(null)
        : (this.fetchJson(
            graphUrl(s.rangeKm, { velocityKmh: wind.velocityKmh, samplingHours: wind.samplingHours, bearingDeg: wind.bearingDeg }, this.base),
          ) as Promise<WindGraphPayload>),
    ]);
    if (ticket !== this.ticket) {
      return; // a newer request owns the view now
    }

    const [graphRes, metricsRes, collectRes, windRes] = settled;
    if (graphRes.status === "rejected") {
      // nothing newer to show; keep the last good view and say why
      this.patch({ loading: false, warning: messageOf(graphRes.reason) });
      return;
    }
    const graph = graphRes.value;

    // Re-fetching the same range (a gateway or sleep change) may keep the
    // previous metrics when the new ones are rejected; a range change must
    // not, or the panel would describe a graph no longer on screen.
    const sameRange = this.state.graph !== null && this.state.graph.range_km === graph.range_km;
    let warning: string | null = null;

    let metrics: MetricsRow | null;
    if (metricsRes.status === "fulfilled") {
      metrics = metricsRes.value;
    } else {
      metrics = sameRange ? this.state.metrics : null;
      warning = messageOf(metricsRes.reason);
    }

    let collect: CollectSummary | null;
    if (collectRes.status === "fulfilled") {
      collect = collectRes.value.summary;
    } else {
      collect = sameRange && metricsRes.status === "rejected" ? this.state.collect : null;
      warning = warning ?? messageOf(collectRes.reason);
    }

    let windGraph: WindGraphPayload | null = null;
    if (windRes.status === "fulfilled") {
      windGraph = windRes.value;
    } else {
      warning = warning ?? messageOf(windRes.reason);
    }

    this.patch({ graph, metrics, collect, windGraph, warning, loading: false });
  }
}
