"""Command-line entry point: gen, build, metrics, sweep, simulate, serve.

Exit codes: 0 success, 1 domain or I/O error (diagnostic on stderr),
2 usage error (argparse). All outputs are byte-stable for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import TrapnetError
from .geo import Deployment, generate_synthetic, load_deployment, save_deployment
from .server import default_port, make_server
from .simulate import BEHAVIORS, SimConfig, run_simulation
from .sweep import SweepRow, classify_regime, export_graph, export_sweep, range_sweep
from .topology import WindField, build_radio_graph, build_wind_graph, network_metrics

PROG = "trapnet"


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs, resolved from flags."""

    command: str
    input_path: str | None = None
    input_format: str | None = None
    out_path: str | None = None
    export_format: str | None = None
    ranges: tuple[float, ...] = ()
    wind: WindField | None = None
    gateway: int | str = "auto"
    link_capacity: int | None = 1
    sleep_minutes: float = 5.0
    max_rounds: int = 10_000
    behavior: str | None = None
    simulate: bool = False
    as_json: bool = False
    over_connect_threshold: float | None = None
    n: int = 0
    bbox: tuple[float, float, float, float] | None = None
    seed: int = 0
    host: str = "127.0.0.1"
    port: int = 0
    static_dir: str | None = None

    def sim_config(self) -> SimConfig:
        return SimConfig(
            max_rounds=self.max_rounds,
            link_capacity=self.link_capacity,
            sleep_minutes=self.sleep_minutes,
            gateway=self.gateway,
        )


def _parse_gateway(raw: str) -> int | str:
    if raw == "auto":
        return "auto"
    try:
        return int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"must be 'auto' or an integer id, got {raw!r}"
        ) from None


def _parse_capacity(raw: str) -> int | None:
    if raw in ("unlimited", "inf"):
        return None
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"must be a positive integer or 'unlimited', got {raw!r}"
        ) from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1 or 'unlimited', got {raw}")
    return value


def _parse_ranges(raw: str) -> tuple[float, ...]:
    try:
        parts = tuple(float(p) for p in raw.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"must be comma-separated numbers, got {raw!r}"
        ) from None
    if not parts:
        raise argparse.ArgumentTypeError("needs at least one range")
    return parts


def _parse_bbox(raw: str) -> tuple[float, float, float, float]:
    parts = raw.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            f"must be min_x,min_y,max_x,max_y, got {raw!r}"
        )
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"must be four numbers, got {raw!r}"
        ) from None


def _add_input_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--input", required=True, help="deployment file (CSV or GeoJSON)")
    sub.add_argument("--input-format", choices=("csv", "geojson"),
                     help="override format sniffing by file extension")


def _add_wind_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--wind-v", type=float, help="wind velocity in km/h")
    sub.add_argument("--wind-t", type=float, help="sampling window in hours")
    sub.add_argument("--wind-bearing", type=float, help="wind bearing in degrees (0=N, 90=E)")


def _add_out_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", default="-", help="output file, '-' for stdout (default)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Light-trap network designer: build radio graphs over trap "
                    "deployments, measure connectivity, and simulate data collection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic planar deployment")
    p.add_argument("--n", type=int, required=True, help="number of trap sites")
    p.add_argument("--bbox", type=_parse_bbox, required=True,
                   help="bounding box min_x,min_y,max_x,max_y in km")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--export", choices=("csv", "geojson"), default="csv")
    _add_out_flag(p)

    p = sub.add_parser("build", help="build and export one graph")
    _add_input_flags(p)
    p.add_argument("--range", type=float, required=True, dest="range_km",
                   help="transmission range in km")
    _add_wind_flags(p)
    p.add_argument("--export", choices=("json", "dot", "geojson"), default="json")
    _add_out_flag(p)

    p = sub.add_parser("metrics", help="print the metrics row for one range")
    _add_input_flags(p)
    p.add_argument("--range", type=float, required=True, dest="range_km")
    p.add_argument("--gateway", type=_parse_gateway, default="auto")
    p.add_argument("--json", action="store_true", dest="as_json",
                   help="emit JSON instead of the CSV row")
    _add_out_flag(p)

    p = sub.add_parser("sweep", help="metrics for a list of ranges")
    _add_input_flags(p)
    p.add_argument("--ranges", type=_parse_ranges, required=True,
                   help="comma-separated ranges in km")
    p.add_argument("--simulate", action="store_true",
                   help="add convergence/completion/latency columns")
    p.add_argument("--gateway", type=_parse_gateway, default="auto")
    p.add_argument("--capacity", type=_parse_capacity, default=1)
    p.add_argument("--sleep-min", type=float, default=5.0, dest="sleep_minutes")
    p.add_argument("--max-rounds", type=int, default=10_000)
    p.add_argument("--over-connect-threshold", type=float, default=None,
                   help="fan-out at which a single network counts as over-connected "
                        "(default: half the node count)")
    p.add_argument("--export", choices=("csv", "json"), default="csv")
    _add_out_flag(p)

    p = sub.add_parser("simulate", help="run one behavior and export its trace")
    _add_input_flags(p)
    p.add_argument("--range", type=float, required=True, dest="range_km")
    p.add_argument("--behavior", choices=BEHAVIORS, required=True)
    p.add_argument("--gateway", type=_parse_gateway, default="auto")
    p.add_argument("--capacity", type=_parse_capacity, default=1)
    p.add_argument("--sleep-min", type=float, default=5.0, dest="sleep_minutes")
    p.add_argument("--max-rounds", type=int, default=10_000)
    p.add_argument("--export", choices=("json", "csv"), default="json",
                   help="json: full trace; csv: per-round table")
    _add_out_flag(p)

    p = sub.add_parser("serve", help="serve the JSON API (and optional static UI)")
    _add_input_flags(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None,
                   help="default: $TRAPNET_PORT or 8000")
    p.add_argument("--static", dest="static_dir", default=None,
                   help="directory of static files to serve at /")

    return parser


def config_from_args(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    wind = None
    wind_parts = (getattr(args, "wind_v", None), getattr(args, "wind_t", None),
                  getattr(args, "wind_bearing", None))
    if any(part is not None for part in wind_parts):
        if any(part is None for part in wind_parts):
            parser.error("--wind-v, --wind-t and --wind-bearing must be given together")
        wind = WindField(*wind_parts)
    ranges = getattr(args, "ranges", None)
    if ranges is None and getattr(args, "range_km", None) is not None:
        ranges = (args.range_km,)
    return RunConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        input_format=getattr(args, "input_format", None),
        out_path=getattr(args, "out", None),
        export_format=getattr(args, "export", None),
        ranges=tuple(ranges) if ranges else (),
        wind=wind,
        gateway=getattr(args, "gateway", "auto"),
        link_capacity=getattr(args, "capacity", 1),
        sleep_minutes=getattr(args, "sleep_minutes", 5.0),
        max_rounds=getattr(args, "max_rounds", 10_000),
        behavior=getattr(args, "behavior", None),
        simulate=getattr(args, "simulate", False),
        as_json=getattr(args, "as_json", False),
        over_connect_threshold=getattr(args, "over_connect_threshold", None),
        n=getattr(args, "n", 0),
        bbox=getattr(args, "bbox", None),
        seed=getattr(args, "seed", 0),
        host=getattr(args, "host", "127.0.0.1"),
        port=args.port if getattr(args, "port", None) is not None else default_port(),
        static_dir=getattr(args, "static_dir", None),
    )


def _sniff_format(path: str, explicit: str | None) -> str:
    if explicit:
        return explicit
    lowered = path.lower()
    if lowered.endswith(".geojson") or lowered.endswith(".json"):
        return "geojson"
    return "csv"


def _load(cfg: RunConfig) -> Deployment:
    fmt = _sniff_format(cfg.input_path, cfg.input_format)
    with open(cfg.input_path, encoding="utf-8", newline="") as fh:
        return load_deployment(fh, fmt)


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.out_path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(cfg.out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _metrics_payload(deployment: Deployment, range_km: float, gateway: int | str) -> SweepRow:
    g = build_radio_graph(deployment, range_km)
    m = network_metrics(g, leader=gateway)
    return SweepRow(range_km, m, classify_regime(m))


def _cmd_gen(cfg: RunConfig) -> int:
    d = generate_synthetic(cfg.n, cfg.bbox, cfg.seed)
    _write(cfg, save_deployment(d, cfg.export_format))
    return 0


def _cmd_build(cfg: RunConfig) -> int:
    d = _load(cfg)
    if cfg.wind is not None:
        g = build_wind_graph(d, cfg.wind)
    else:
        g = build_radio_graph(d, cfg.ranges[0])
    _write(cfg, export_graph(g, cfg.export_format))
    return 0


def _cmd_metrics(cfg: RunConfig) -> int:
    d = _load(cfg)
    row = _metrics_payload(d, cfg.ranges[0], cfg.gateway)
    if cfg.as_json:
        payload = row.as_dict()
        payload["leader_id"] = row.metrics.leader_id
        _write(cfg, json.dumps(payload, indent=2) + "\n")
    else:
        _write(cfg, export_sweep([row], "csv"))
    return 0


def _cmd_sweep(cfg: RunConfig) -> int:
    d = _load(cfg)
    rows = range_sweep(
        d,
        list(cfg.ranges),
        simulate=cfg.simulate,
        cfg=cfg.sim_config(),
        over_connect_threshold=cfg.over_connect_threshold,
    )
    _write(cfg, export_sweep(rows, cfg.export_format))
    return 0


def _cmd_simulate(cfg: RunConfig) -> int:
    d = _load(cfg)
    g = build_radio_graph(d, cfg.ranges[0])
    trace = run_simulation(g, cfg.behavior, cfg.sim_config())
    if cfg.export_format == "csv":
        _write(cfg, trace.to_csv())
    else:
        _write(cfg, json.dumps(trace.to_json_dict(), indent=2) + "\n")
    return 0


def _cmd_serve(cfg: RunConfig) -> int:
    d = _load(cfg)
    server = make_server(d, host=cfg.host, port=cfg.port, static_dir=cfg.static_dir)
    host, port = server.server_address[0], server.server_address[1]
    print(f"{PROG}: serving {len(d)} sites on http://{host}:{port}/ "
          f"(ctrl-c to stop)", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "build": _cmd_build,
    "metrics": _cmd_metrics,
    "sweep": _cmd_sweep,
    "simulate": _cmd_simulate,
    "serve": _cmd_serve,
}


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(args, parser)
    try:
        return _COMMANDS[cfg.command](cfg)
    except TrapnetError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
