"""Acceptance gate: one test per shipping criterion, each printing its own
pass line and holding to its runtime budget. Run with -v to see one line
per criterion."""

import json
import math
import random
import time

from oracles import all_pairs_bfs, brute_metrics, path_completion_round
from trapnet import (
    Deployment,
    GatewayError,
    SimConfig,
    TrapSite,
    WindField,
    build_radio_graph,
    build_wind_graph,
    components,
    convergecast_collect,
    generate_synthetic,
    latency_minutes,
    network_metrics,
    routing_convergence,
    run_simulation,
    wind_radius_km,
)
from trapnet.cli import dispatch
from trapnet.sweep import classify_regime, export_sweep, range_sweep


def timed(budget_s):
    class _Timer:
        def __enter__(self):
            self.start = time.monotonic()
            return self

        def __exit__(self, *exc):
            self.elapsed = time.monotonic() - self.start
            if exc[0] is None:
                assert self.elapsed < budget_s, f"budget {budget_s}s exceeded: {self.elapsed:.1f}s"
            return False

    return _Timer()


def path_graph(n):
    sites = tuple(TrapSite(i, f"P{i}", float(i), 0.0) for i in range(1, n + 1))
    return build_radio_graph(Deployment(sites, "planar"), 1.0)


def test_wind_radius_exact():
    assert wind_radius_km(WindField(velocity_kmh=2.0, sampling_hours=4.0, bearing_deg=0.0)) == 8.0


def test_latency_arithmetic_exact():
    with timed(1):
        # depth-9 topology: path of 10, gateway at the far end
        nine = convergecast_collect(path_graph(10), SimConfig(gateway=10, sleep_minutes=5.0))
        assert nine.summary["gateway_eccentricity"] == 9
        assert nine.summary["completion_round"] == 9
        assert nine.summary["latency_minutes"] == 45
        # depth-12 topology: path of 13
        twelve = convergecast_collect(path_graph(13), SimConfig(gateway=13, sleep_minutes=5.0))
        assert twelve.summary["completion_round"] == 12
        assert twelve.summary["latency_minutes"] == 60
        assert latency_minutes(9, 5) == 45 and latency_minutes(12, 5) == 60


def test_routing_oracle_50_seeds():
    with timed(30):
        for seed in range(50):
            rng = random.Random(seed)
            n = rng.randint(2, 100)
            side = rng.uniform(10, 60)
            d = generate_synthetic(n, (0.0, 0.0, side, side), seed)
            g = build_radio_graph(d, rng.uniform(3.0, side / 2))
            tables = routing_convergence(g)
            oracle = all_pairs_bfs(g)
            for u in g.adj:
                row = oracle[u]
                entries = tables[u].entries
                for v in g.adj:
                    want = row[v]
                    if want is None:
                        assert v not in entries
                        continue
                    dist, link = entries[v]
                    assert dist == want, (seed, u, v)
                    if want >= 1:
                        hop = g.adj[u][link]
                        # first hop lies on a shortest path
                        assert oracle[hop][v] == want - 1, (seed, u, v, hop)
            trace = run_simulation(g, "route")
            assert trace.converged
            diam = 0
            for comp in components(g):
                if len(comp) > 1:
                    diam = max(diam, max(oracle[a][b] for a in comp for b in comp))
            assert trace.summary["convergence_round"] <= max(diam, 0), seed


def test_metrics_oracle_exact():
    with timed(30):
        for seed in range(40):
            rng = random.Random(1000 + seed)
            n = rng.randint(0, 50)
            d = generate_synthetic(n, (0.0, 0.0, 30.0, 30.0), 1000 + seed)
            g = build_radio_graph(d, rng.uniform(2.0, 18.0))
            m = network_metrics(g)
            got = dict(m.as_dict(), leader_id=m.leader_id)
            assert got == brute_metrics(g), seed


def test_monotonicity_suite():
    with timed(10):
        ranges = [2, 3.5, 5, 6, 7, 8, 9, 10, 14, 20, 30, 40]
        for seed in range(8):
            d = generate_synthetic(45, (0.0, 0.0, 40.0, 60.0), 2000 + seed)
            graphs = [build_radio_graph(d, r) for r in ranges]
            rows = [network_metrics(g) for g in graphs]
            single_seen = False
            for i in range(len(ranges) - 1):
                a, b = rows[i], rows[i + 1]
                assert set(graphs[i].edges()) <= set(graphs[i + 1].edges())
                assert a.bound_nodes <= b.bound_nodes
                assert a.undirected_edges <= b.undirected_edges
                assert a.channels <= b.channels
                assert a.fanout_min <= b.fanout_min
                assert a.fanout_max <= b.fanout_max
                assert len(components(graphs[i])) >= len(components(graphs[i + 1]))
            for i, m in enumerate(rows):
                if m.network_count == 1 and m.isolated_nodes == 0:
                    if single_seen:
                        assert m.diameter_max <= prev_diam
                    prev_diam = m.diameter_max
                    single_seen = True


def test_wind_graph_laws_100_seeds():
    with timed(10):
        for seed in range(100):
            rng = random.Random(seed)
            d = generate_synthetic(18, (0.0, 0.0, 30.0, 30.0), 3000 + seed)
            w = WindField(rng.uniform(0.5, 3.0), rng.uniform(1.0, 6.0), rng.uniform(0.0, 360.0))
            wg = build_wind_graph(d, w)
            rg = build_radio_graph(d, wind_radius_km(w))
            radio = {(u, v) for u, vs in rg.adj.items() for v in vs}
            arcs = set(wg.arcs())
            assert arcs <= radio
            assert set(wg.support_edges()) <= radio
            brg = math.radians(w.bearing_deg)
            wind_e, wind_n = math.sin(brg), math.cos(brg)
            for a in d:
                for b in d:
                    if a.id == b.id or (a.id, b.id) not in radio:
                        continue
                    dx, dy = b.x - a.x, b.y - a.y
                    dot = dx * wind_e + dy * wind_n
                    if dot < 0 and (-dx * wind_e - dy * wind_n) > 0:
                        # strictly upwind one way means strictly downwind back
                        assert (a.id, b.id) not in arcs
                        assert (b.id, a.id) in arcs
        # |beta| = pi/2 boundary is inclusive, both directions
        sites = (TrapSite(1, "a", 0.0, 0.0), TrapSite(2, "b", 5.0, 0.0))
        crosswind = build_wind_graph(Deployment(sites, "planar"), WindField(2.0, 4.0, 0.0))
        assert set(crosswind.arcs()) == {(1, 2), (2, 1)}


def test_convergecast_contention():
    with timed(10):
        for n in (4, 7, 10):
            trace = convergecast_collect(path_graph(n), SimConfig(gateway=n))
            assert trace.summary["completion_round"] == n - 1
            assert trace.summary["completion_round"] == path_completion_round(n, 1)
        # geometric star: 5 leaves on a ring, gateway at the center
        star_sites = [TrapSite(1, "C", 0.0, 0.0)] + [
            TrapSite(i + 2, f"L{i}", 2.0 * math.sin(2 * math.pi * i / 5),
                     2.0 * math.cos(2 * math.pi * i / 5))
            for i in range(5)
        ]
        star = build_radio_graph(Deployment(tuple(star_sites), "planar"), 2.1)
        st = convergecast_collect(star, SimConfig(gateway=1))
        assert st.summary["completion_round"] == 1
        # capacity law and conservation on random instances
        for seed in range(10):
            rng = random.Random(seed)
            capacity = rng.choice([1, 2, 3])
            d = generate_synthetic(30, (0.0, 0.0, 25.0, 25.0), 4000 + seed)
            g = build_radio_graph(d, 6.0)
            try:
                trace = convergecast_collect(g, SimConfig(link_capacity=capacity))
            except GatewayError:
                continue
            links = sum(len(v) for v in g.adj.values())
            originated = trace.summary["samples_originated"]
            delivered = 1  # gateway's own sample, home at round 0
            for record in trace.rounds:
                delivered += record.delivered
                assert record.max_link_load <= capacity
                assert record.messages_received <= capacity * links
                assert delivered + record.in_transit == originated
            assert delivered == originated


def test_qualitative_regime_sequence():
    with timed(10):
        d = generate_synthetic(60, (0.0, 0.0, 40.0, 60.0), 85)
        rows = range_sweep(d, [5, 6, 7, 8, 9, 10, 20, 30, 40])
        regimes = [row.regime for row in rows]
        metrics = [row.metrics for row in rows]
        # small ranges: disrupted with isolated nodes
        assert regimes[0] == "disrupted"
        assert metrics[0].isolated_nodes > 0
        # a threshold range binds all 60 nodes into one network
        threshold = regimes.index("single")
        assert metrics[threshold].bound_nodes == 60
        assert metrics[threshold].network_count == 1
        assert metrics[threshold].isolated_nodes == 0
        # regimes never move backwards across the sweep
        order = {"disrupted": 0, "single": 1, "over_connected": 2}
        codes = [order[r] for r in regimes]
        assert codes == sorted(codes)
        assert regimes[-1] == "over_connected"
        # once single: diameter declines monotonically, fan-out keeps growing
        diams = [m.diameter_max for m in metrics[threshold:]]
        assert all(a >= b for a, b in zip(diams, diams[1:]))
        assert diams[-1] < diams[0]
        fans = [m.fanout_max for m in metrics]
        assert all(a <= b for a, b in zip(fans, fans[1:]))
        assert fans[-1] >= 30  # over-connection: half the nodes in range of one


def test_determinism_byte_identical(tmp_path):
    with timed(10):
        deploy = tmp_path / "d.csv"
        assert dispatch(["gen", "--n", "40", "--bbox", "0,0,40,60", "--seed", "85",
                         "--out", str(deploy)]) == 0
        outs = []
        for tag in ("a", "b"):
            sweep_path = tmp_path / f"sweep_{tag}.csv"
            trace_path = tmp_path / f"trace_{tag}.json"
            assert dispatch(["sweep", "--input", str(deploy),
                             "--ranges", "5,8,20", "--simulate",
                             "--out", str(sweep_path)]) == 0
            assert dispatch(["simulate", "--input", str(deploy), "--range", "8",
                             "--behavior", "collect", "--out", str(trace_path)]) == 0
            outs.append((sweep_path.read_bytes(), trace_path.read_bytes()))
        assert outs[0] == outs[1]
        # library-level determinism too
        d = generate_synthetic(40, (0.0, 0.0, 40.0, 60.0), 85)
        a = export_sweep(range_sweep(d, [5, 8, 20]), "csv")
        b = export_sweep(range_sweep(d, [5, 8, 20]), "csv")
        assert a == b
