"""Deterministic synchronous-round simulator over a radio graph.

Every round executes four phases with strict barriers: produce (behaviors
enqueue messages into per-link FIFO outboxes), exchange (each directed link
carries at most link_capacity messages; a send of round k is received in
round k, the rest stay queued), analyze (incoming messages merged in
(sender id, FIFO position) order), sleep. A behavior is quiescent when a
full round moves no messages and changes no state. Identical inputs always
produce identical traces.

Three behaviors are built in: routing-table convergence, leader election
with distributed diameter, and FIFO-buffered convergecast to a gateway.
"""

from __future__ import annotations

import io
from collections import deque
from dataclasses import dataclass, field

from .errors import GatewayError, TrapnetError
from .topology import RadioGraph, components, eccentricity, largest_component

ROUTE = "route"
ELECT = "elect"
COLLECT = "collect"
BEHAVIORS = (ROUTE, ELECT, COLLECT)

TABLE_EXCHANGE = "table_exchange"
LEADER_PROBE = "leader_probe"
DATA_SAMPLE = "data_sample"

TRACE_CSV_HEADER = "round,messages_sent,messages_received,max_queue_depth,max_link_load,delivered,in_transit"


@dataclass(frozen=True)
class SimConfig:
    """Simulation knobs. link_capacity=None means unlimited; one round
    represents sleep_minutes of wall time."""

    max_rounds: int = 10_000
    link_capacity: int | None = 1
    sleep_minutes: float = 5.0
    gateway: int | str = "auto"

    def __post_init__(self) -> None:
        if self.max_rounds < 1:
            raise TrapnetError(f"max_rounds must be >= 1, got {self.max_rounds}")
        if self.link_capacity is not None and self.link_capacity < 1:
            raise TrapnetError(f"link_capacity must be >= 1 or None, got {self.link_capacity}")
        if self.sleep_minutes <= 0:
            raise TrapnetError(f"sleep_minutes must be > 0, got {self.sleep_minutes}")
        if self.gateway != "auto" and not isinstance(self.gateway, int):
            raise TrapnetError(f"gateway must be 'auto' or an integer id, got {self.gateway!r}")


@dataclass(frozen=True)
class Message:
    kind: str
    origin: int
    hop_count: int
    body: object = None


@dataclass(frozen=True)
class RoutingTable:
    """Converged per-node table: destination -> (hop distance, link index).

    The link index points into the node's sorted adjacency list and lies on a
    shortest path; the node's own entry has distance 0 and no link.
    """

    entries: dict[int, tuple[int, int | None]]

    def distance(self, dest: int) -> int | None:
        entry = self.entries.get(dest)
        return entry[0] if entry else None

    def first_hop(self, links: tuple[int, ...], dest: int) -> int | None:
        entry = self.entries.get(dest)
        if entry is None or entry[1] is None:
            return None
        return links[entry[1]]


class _NodeState:
    """Per-node simulation state: identity, sorted links, per-link outboxes."""

    __slots__ = ("identity", "links", "link_index", "outbox", "routing", "dirty",
                 "distances", "claims", "pending", "originated", "payload")

    def __init__(self, identity: int, links: tuple[int, ...]):
        self.identity = identity
        self.links = links
        self.link_index = {nbr: i for i, nbr in enumerate(links)}
        self.outbox: dict[int, deque[Message]] = {nbr: deque() for nbr in links}
        self.routing: dict[int, tuple[int, int | None]] = {}
        self.dirty = False
        self.distances: dict[int, int] = {}
        self.claims: dict[int, int] = {}
        self.pending: deque[Message] = deque()
        self.originated = False
        self.payload = None


@dataclass(frozen=True)
class RoundRecord:
    round: int
    messages_sent: int
    messages_received: int
    max_queue_depth: int
    max_link_load: int
    delivered: int
    in_transit: int


@dataclass
class RoundTrace:
    """Full record of one simulation run plus the behavior's summary block."""

    behavior: str
    config: SimConfig
    rounds: list[RoundRecord]
    converged: bool
    rounds_executed: int
    summary: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "behavior": self.behavior,
            "config": {
                "max_rounds": self.config.max_rounds,
                "link_capacity": self.config.link_capacity,
                "sleep_minutes": self.config.sleep_minutes,
                "gateway": self.config.gateway,
            },
            "converged": self.converged,
            "rounds_executed": self.rounds_executed,
            "rounds": [
                {
                    "round": r.round,
                    "messages_sent": r.messages_sent,
                    "messages_received": r.messages_received,
                    "max_queue_depth": r.max_queue_depth,
                    "max_link_load": r.max_link_load,
                    "delivered": r.delivered,
                    "in_transit": r.in_transit,
                }
                for r in self.rounds
            ],
            "summary": self.summary,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(TRACE_CSV_HEADER + "\n")
        for r in self.rounds:
            buf.write(
                f"{r.round},{r.messages_sent},{r.messages_received},"
                f"{r.max_queue_depth},{r.max_link_load},{r.delivered},{r.in_transit}\n"
            )
        return buf.getvalue()


class _RouteBehavior:
    """Distance-vector flooding: nodes re-send their table whenever it changed."""

    def on_start(self, nodes: dict[int, _NodeState]) -> None:
        for node in nodes.values():
            node.routing = {node.identity: (0, None)}
            node.dirty = True

    def begin_round(self, round_no: int) -> None:
        pass

    def produce(self, node: _NodeState) -> list[tuple[int, Message]]:
        if not node.dirty:
            return []
        node.dirty = False
        snapshot = tuple(sorted((dest, dist) for dest, (dist, _li) in node.routing.items()))
        msg = Message(TABLE_EXCHANGE, node.identity, 0, snapshot)
        return [(nbr, msg) for nbr in node.links]

    def analyze(self, node: _NodeState, incoming: list[tuple[int, Message]]) -> bool:
        changed = False
        for sender, msg in incoming:
            link = node.link_index[sender]
            for dest, dist in msg.body:
                candidate = dist + 1
                current = node.routing.get(dest)
                if current is None or candidate < current[0] or (
                    candidate == current[0]
                    and current[1] is not None
                    and sender < node.links[current[1]]
                ):
                    node.routing[dest] = (candidate, link)
                    changed = True
        if changed:
            node.dirty = True
        return changed

    def round_stats(self, nodes: dict[int, _NodeState]) -> tuple[int, int]:
        return 0, 0


class _ElectBehavior:
    """Max-id flooding with piggybacked distances and eccentricity claims."""

    def on_start(self, nodes: dict[int, _NodeState]) -> None:
        for node in nodes.values():
            node.distances = {node.identity: 0}
            node.claims = {node.identity: 0}
            node.dirty = True

    def begin_round(self, round_no: int) -> None:
        pass

    def produce(self, node: _NodeState) -> list[tuple[int, Message]]:
        if not node.dirty:
            return []
        node.dirty = False
        body = (
            tuple(sorted(node.distances.items())),
            tuple(sorted(node.claims.items())),
        )
        msg = Message(LEADER_PROBE, node.identity, 0, body)
        return [(nbr, msg) for nbr in node.links]

    def analyze(self, node: _NodeState, incoming: list[tuple[int, Message]]) -> bool:
        changed = False
        for _sender, msg in incoming:
            dist_vec, claim_vec = msg.body
            for nid, dist in dist_vec:
                candidate = dist + 1
                if nid not in node.distances or candidate < node.distances[nid]:
                    node.distances[nid] = candidate
                    changed = True
            for nid, claim in claim_vec:
                if node.claims.get(nid, -1) < claim:
                    node.claims[nid] = claim
                    changed = True
        own_ecc = max(node.distances.values())
        if node.claims[node.identity] < own_ecc:
            node.claims[node.identity] = own_ecc
            changed = True
        if changed:
            node.dirty = True
        return changed

    def round_stats(self, nodes: dict[int, _NodeState]) -> tuple[int, int]:
        return 0, 0


class _CollectBehavior:
    """Convergecast: each member of the gateway's component originates one
    sample at round 1 and forwards along converged first-hop links."""

    def __init__(self, gateway: int, tables: dict[int, RoutingTable], member_ids: set[int]):
        self.gateway = gateway
        self.tables = tables
        self.members = member_ids
        self.delivery_round: dict[int, int] = {}
        self.delivered_this_round = 0
        self.current_round = 0

    def on_start(self, nodes: dict[int, _NodeState]) -> None:
        # The gateway's own sample never crosses a link; it is home at round 0.
        self.delivery_round[self.gateway] = 0

    def begin_round(self, round_no: int) -> None:
        self.current_round = round_no
        self.delivered_this_round = 0

    def produce(self, node: _NodeState) -> list[tuple[int, Message]]:
        if not node.originated and node.identity in self.members:
            node.originated = True
            if node.identity != self.gateway:
                node.pending.append(Message(DATA_SAMPLE, node.identity, 0, node.payload))
        if not node.pending:
            return []
        next_hop = self.tables[node.identity].first_hop(node.links, self.gateway)
        out = []
        while node.pending:
            out.append((next_hop, node.pending.popleft()))
        return out

    def analyze(self, node: _NodeState, incoming: list[tuple[int, Message]]) -> bool:
        changed = False
        for _sender, msg in incoming:
            if msg.kind != DATA_SAMPLE:
                continue
            hops = msg.hop_count + 1
            if node.identity == self.gateway:
                self.delivery_round[msg.origin] = self.current_round
                self.delivered_this_round += 1
            else:
                node.pending.append(Message(DATA_SAMPLE, msg.origin, hops, msg.body))
            changed = True
        return changed

    def round_stats(self, nodes: dict[int, _NodeState]) -> tuple[int, int]:
        in_transit = sum(len(node.pending) for node in nodes.values())
        in_transit += sum(
            len(q) for node in nodes.values() for q in node.outbox.values()
        )
        return self.delivered_this_round, in_transit


def _run(g: RadioGraph, behavior, cfg: SimConfig) -> tuple[dict[int, _NodeState], list[RoundRecord], bool, int, int]:
    nodes = {nid: _NodeState(nid, g.adj[nid]) for nid in sorted(g.adj)}
    behavior.on_start(nodes)

    records: list[RoundRecord] = []
    converged = False
    last_change_round = 0
    round_no = 0
    while round_no < cfg.max_rounds:
        round_no += 1
        behavior.begin_round(round_no)

        sent = 0
        for nid in sorted(nodes):
            for dest, msg in behavior.produce(nodes[nid]):
                nodes[nid].outbox[dest].append(msg)
                sent += 1

        # Exchange: outer loop ascends sender ids, so each inbox is already
        # ordered by (sender id, FIFO position).
        inboxes: dict[int, list[tuple[int, Message]]] = {nid: [] for nid in nodes}
        received = 0
        max_link_load = 0
        for nid in sorted(nodes):
            node = nodes[nid]
            for dest in node.links:
                queue = node.outbox[dest]
                moves = len(queue) if cfg.link_capacity is None else min(cfg.link_capacity, len(queue))
                for _ in range(moves):
                    inboxes[dest].append((nid, queue.popleft()))
                received += moves
                if moves > max_link_load:
                    max_link_load = moves

        max_queue = 0
        for node in nodes.values():
            for queue in node.outbox.values():
                if len(queue) > max_queue:
                    max_queue = len(queue)

        changed = False
        for nid in sorted(nodes):
            if behavior.analyze(nodes[nid], inboxes[nid]):
                changed = True
        if changed:
            last_change_round = round_no

        delivered, in_transit = behavior.round_stats(nodes)
        records.append(
            RoundRecord(round_no, sent, received, max_queue, max_link_load, delivered, in_transit)
        )
        if sent == 0 and received == 0 and not changed:
            converged = True
            break

    return nodes, records, converged, round_no, last_change_round


def resolve_gateway(g: RadioGraph, gateway: int | str) -> int:
    """Resolve an explicit or auto gateway; must exist and be bound."""
    if gateway == "auto":
        comp = largest_component(g)
        if not comp:
            raise GatewayError("cannot pick a gateway in an empty deployment")
        resolved = comp[-1]
    else:
        if not isinstance(gateway, int):
            raise GatewayError(f"gateway must be 'auto' or an integer id, got {gateway!r}")
        if gateway not in g.adj:
            raise GatewayError(f"gateway id {gateway} is not in the deployment")
        resolved = gateway
    if len(g.adj[resolved]) == 0:
        raise GatewayError(f"gateway id {resolved} is isolated at range {g.range_km}")
    return resolved


def run_simulation(g: RadioGraph, behavior: str, cfg: SimConfig | None = None) -> RoundTrace:
    """Run one behavior to quiescence (or max_rounds) and return its trace."""
    cfg = cfg or SimConfig()
    if behavior == ROUTE:
        _nodes, records, converged, executed, last_change = _run(g, _RouteBehavior(), cfg)
        trace = RoundTrace(ROUTE, cfg, records, converged, executed)
        trace.summary = {"convergence_round": last_change}
        return trace
    if behavior == ELECT:
        nodes, records, converged, executed, last_change = _run(g, _ElectBehavior(), cfg)
        trace = RoundTrace(ELECT, cfg, records, converged, executed)
        comps = components(g)
        per_component = []
        for comp in comps:
            view = nodes[comp[0]]
            per_component.append(
                {
                    "leader": max(view.distances),
                    "diameter": max(view.claims.values()),
                    "size": len(comp),
                }
            )
        largest = largest_component(g)
        overall = per_component[comps.index(largest)] if comps else None
        trace.summary = {
            "convergence_round": last_change,
            "leader": overall["leader"] if overall else None,
            "diameter": overall["diameter"] if overall else None,
            "components": per_component,
        }
        return trace
    if behavior == COLLECT:
        return _run_collect(g, cfg)
    raise TrapnetError(f"unknown behavior {behavior!r}; expected one of {BEHAVIORS}")


def _run_collect(g: RadioGraph, cfg: SimConfig) -> RoundTrace:
    gateway = resolve_gateway(g, cfg.gateway)

    route_nodes, _rr, route_converged, _re, route_last_change = _run(g, _RouteBehavior(), cfg)
    if not route_converged:
        raise TrapnetError(
            f"routing did not converge within max_rounds={cfg.max_rounds}; cannot collect"
        )
    tables = {nid: RoutingTable(dict(node.routing)) for nid, node in route_nodes.items()}

    member_ids = next(set(c) for c in components(g) if gateway in c)
    behavior = _CollectBehavior(gateway, tables, member_ids)
    _nodes, records, converged, executed, _lc = _run(g, behavior, cfg)

    delivery = behavior.delivery_round
    completion = max(delivery.values()) if delivery else 0
    undeliverable = sorted(set(g.adj) - member_ids)
    trace = RoundTrace(COLLECT, cfg, records, converged, executed)
    trace.summary = {
        "gateway": gateway,
        "gateway_eccentricity": eccentricity(g, gateway),
        "component_diameter": max(eccentricity(g, n) for n in member_ids),
        "routing_convergence_round": route_last_change,
        "completion_round": completion,
        "latency_minutes": latency_minutes(completion, cfg.sleep_minutes),
        "samples_originated": len(member_ids),
        "samples_delivered": len(delivery),
        "delivery_rounds": {str(nid): delivery[nid] for nid in sorted(delivery)},
        "undeliverable_nodes": undeliverable,
    }
    return trace


def routing_convergence(g: RadioGraph, cfg: SimConfig | None = None) -> dict[int, RoutingTable]:
    """Run table exchange to quiescence and return each node's converged table."""
    cfg = cfg or SimConfig()
    nodes, _records, converged, _executed, _lc = _run(g, _RouteBehavior(), cfg)
    if not converged:
        raise TrapnetError(f"routing did not converge within max_rounds={cfg.max_rounds}")
    return {nid: RoutingTable(dict(node.routing)) for nid, node in nodes.items()}


def leader_election(g: RadioGraph, cfg: SimConfig | None = None) -> list[dict]:
    """Elect per component; returns [{leader, diameter, size}] ordered as components(g)."""
    trace = run_simulation(g, ELECT, cfg)
    return trace.summary["components"]


def convergecast_collect(g: RadioGraph, cfg: SimConfig | None = None) -> RoundTrace:
    """Route first, then collect one sample from every member of the gateway's
    component; the trace carries delivery rounds and the derived latency."""
    return run_simulation(g, COLLECT, cfg or SimConfig())


def latency_minutes(rounds: int, sleep_minutes: float) -> float:
    """Wall-clock latency for a number of synchronous steps."""
    if rounds < 0:
        raise TrapnetError(f"rounds must be >= 0, got {rounds}")
    return rounds * sleep_minutes
