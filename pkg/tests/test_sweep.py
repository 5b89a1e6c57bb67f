import json

import pytest

from trapnet import (
    Deployment,
    NetworkMetrics,
    SimConfig,
    classify_regime,
    export_graph,
    export_sweep,
    generate_synthetic,
    range_sweep,
    build_radio_graph,
    build_wind_graph,
    WindField,
)
from trapnet.errors import ExportError, TrapnetError
from trapnet.sweep import SWEEP_CSV_HEADER, SWEEP_CSV_HEADER_SIM, SweepRow


def metrics_row(**overrides):
    base = dict(
        range_km=8.0, total_nodes=60, bound_nodes=60, isolated_nodes=0,
        undirected_edges=100, channels=200, fanout_min=1, fanout_max=9,
        network_count=1, diameter_max=12, radius_min=6, depth_leader=9,
        leader_id=60,
    )
    base.update(overrides)
    return NetworkMetrics(**base)


def test_regime_disrupted_on_fragmentation():
    m = metrics_row(network_count=9, bound_nodes=55, isolated_nodes=5)
    assert classify_regime(m) == "disrupted"


def test_regime_disrupted_on_isolated_nodes():
    m = metrics_row(network_count=1, bound_nodes=59, isolated_nodes=1)
    assert classify_regime(m) == "disrupted"


def test_regime_single_modest_fanout():
    assert classify_regime(metrics_row(fanout_max=9)) == "single"


def test_regime_over_connected_high_fanout():
    assert classify_regime(metrics_row(fanout_max=39)) == "over_connected"


def test_regime_threshold_boundary_and_knob():
    at_half = metrics_row(fanout_max=30)  # 60 nodes, threshold n/2 = 30, inclusive
    assert classify_regime(at_half) == "over_connected"
    assert classify_regime(metrics_row(fanout_max=29)) == "single"
    assert classify_regime(at_half, over_connect_threshold=31) == "single"
    assert classify_regime(metrics_row(fanout_max=9), over_connect_threshold=9) == "over_connected"


def test_sweep_basic_shape_and_order():
    d = generate_synthetic(30, (0.0, 0.0, 30.0, 30.0), 5)
    rows = range_sweep(d, [5, 8, 12])
    assert [row.range_km for row in rows] == [5, 8, 12]
    assert all(row.metrics.total_nodes == 30 for row in rows)
    assert not rows[0].simulated


def test_sweep_requires_ranges():
    d = generate_synthetic(5, (0, 0, 10, 10), 0)
    with pytest.raises(TrapnetError):
        range_sweep(d, [])


def test_sweep_error_names_offending_range():
    d = generate_synthetic(5, (0, 0, 10, 10), 0)
    with pytest.raises(TrapnetError) as err:
        range_sweep(d, [5.0, -2.0])
    assert "range -2" in str(err.value)


def test_sweep_empty_deployment_degenerate_row():
    rows = range_sweep(Deployment((), "planar"), [8.0])
    m = rows[0].metrics
    assert m.total_nodes == 0 and m.undirected_edges == 0 and m.diameter_max == 0


def test_sweep_monotone_columns():
    d = generate_synthetic(40, (0.0, 0.0, 35.0, 35.0), 9)
    rows = range_sweep(d, [2, 4, 6, 8, 10, 14, 18, 25])
    for a, b in zip(rows, rows[1:]):
        assert a.metrics.bound_nodes <= b.metrics.bound_nodes
        assert a.metrics.undirected_edges <= b.metrics.undirected_edges
        assert a.metrics.channels <= b.metrics.channels
        assert a.metrics.fanout_min <= b.metrics.fanout_min
        assert a.metrics.fanout_max <= b.metrics.fanout_max


def test_sweep_simulated_columns():
    d = generate_synthetic(25, (0.0, 0.0, 20.0, 20.0), 85)
    rows = range_sweep(d, [8.0], simulate=True, cfg=SimConfig(link_capacity=None))
    row = rows[0]
    assert row.simulated
    if row.metrics.network_count == 1 and row.metrics.isolated_nodes == 0:
        # capacity unlimited: completion equals the auto gateway's eccentricity
        assert row.completion_round == row.metrics.depth_leader
        assert row.latency_minutes == row.completion_round * 5.0
    assert row.convergence_round is not None


def test_sweep_simulate_skips_unbindable_gateway():
    # spread sites so far apart that every node is isolated at 1 km
    d = generate_synthetic(6, (0.0, 0.0, 500.0, 500.0), 3)
    rows = range_sweep(d, [0.001], simulate=True)
    row = rows[0]
    assert row.convergence_round == 0
    assert row.completion_round is None and row.latency_minutes is None
    text = export_sweep(rows, "csv")
    assert text.splitlines()[1].endswith(",0,,")


def test_sweep_csv_headers_exact():
    d = generate_synthetic(10, (0, 0, 15, 15), 1)
    plain = export_sweep(range_sweep(d, [5, 8]), "csv")
    assert plain.splitlines()[0] == SWEEP_CSV_HEADER
    assert SWEEP_CSV_HEADER == (
        "range_km,total_nodes,bound_nodes,isolated_nodes,undirected_edges,channels,"
        "fanout_min,fanout_max,network_count,diameter_max,radius_min,depth_leader,regime"
    )
    simulated = export_sweep(range_sweep(d, [5, 8], simulate=True), "csv")
    assert simulated.splitlines()[0] == SWEEP_CSV_HEADER_SIM
    assert SWEEP_CSV_HEADER_SIM.endswith(",convergence_round,completion_round,latency_minutes")
    assert len(plain.splitlines()) == 3


def test_sweep_json_round_trip():
    d = generate_synthetic(12, (0, 0, 15, 15), 2)
    rows = range_sweep(d, [4, 9])
    doc = json.loads(export_sweep(rows, "json"))
    assert [r["range_km"] for r in doc] == [4, 9]
    assert set(doc[0]) == set(SWEEP_CSV_HEADER.split(","))
    sim_doc = json.loads(export_sweep(range_sweep(d, [4], simulate=True), "json"))
    assert set(sim_doc[0]) == set(SWEEP_CSV_HEADER_SIM.split(","))


def test_export_determinism():
    d = generate_synthetic(15, (0, 0, 20, 20), 4)
    a = export_sweep(range_sweep(d, [5, 8, 12]), "csv")
    b = export_sweep(range_sweep(d, [5, 8, 12]), "csv")
    assert a == b


def test_export_rejects_bad_format_or_empty():
    d = generate_synthetic(5, (0, 0, 10, 10), 0)
    rows = range_sweep(d, [5])
    with pytest.raises(ExportError):
        export_sweep(rows, "xml")
    with pytest.raises(ExportError):
        export_sweep([], "csv")


def test_export_graph_formats():
    d = generate_synthetic(6, (0, 0, 10, 10), 6)
    g = build_radio_graph(d, 5.0)
    assert json.loads(export_graph(g, "json"))["range_km"] == 5.0
    assert export_graph(g, "dot").startswith("graph radio {")
    assert json.loads(export_graph(g, "geojson"))["type"] == "FeatureCollection"
    w = build_wind_graph(d, WindField(2.0, 4.0, 90.0))
    assert json.loads(export_graph(w, "json"))["wind"]["radius_km"] == 8.0
    with pytest.raises(ExportError):
        export_graph(g, "pdf")


def test_sweep_row_as_dict_fields():
    d = generate_synthetic(8, (0, 0, 10, 10), 7)
    row = range_sweep(d, [6], simulate=True)[0]
    doc = row.as_dict()
    assert list(doc)[:2] == ["range_km", "total_nodes"]
    assert doc["regime"] in ("disrupted", "single", "over_connected")
    assert "convergence_round" in doc
