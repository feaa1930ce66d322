"""Server- and path-selection algorithms, pluggable as the controller's
LB policy.

Server algorithms: round-robin, smooth weighted round-robin, seeded
random, rendezvous (highest-random-weight) hashing, and mice/elephant
flow-based counters.  Path algorithms: Global First Fit over the
lexicographic path enumeration, and least-transmission-rate selection
from sliding-window port stats.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .controller import Controller, STATUS_ENTRY_PUSHED
from .dataplane import FlowAction, FlowEntry, FlowMatch, Packet, PRIORITY_LOADBALANCER
from .errors import (
    InvalidPort,
    NoAliveServer,
    NoFeasiblePath,
    NoRoute,
    UnknownFlow,
    UnknownSwitch,
)
from .topology import Path, Topology, enumerate_paths, shortest_path

DEFAULT_ELEPHANT_THRESHOLD = 100_000  # bytes

ALGORITHMS = (
    "static_rules",
    "round_robin",
    "weighted_round_robin",
    "random",
    "hash",
    "global_first_fit",
    "flow_based",
    "least_rate_path",
)
SERVER_ALGORITHMS = ("round_robin", "weighted_round_robin", "random", "hash", "flow_based")
PATH_ALGORITHMS = ("global_first_fit", "least_rate_path")

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
MASK64 = 0xFFFFFFFFFFFFFFFF


def fnv1a_64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & MASK64
    return h


def hash_key(five_tuple, server_address: str) -> bytes:
    src_ip, dst_ip, src_port, dst_port, protocol = five_tuple
    return f"{src_ip},{dst_ip},{src_port},{dst_port},{protocol}|{server_address}".encode()


@dataclass
class Server:
    host: str
    address: str
    weight: int = 1


class ServerPool:
    def __init__(self, vip: str, servers: list[Server]):
        if not servers:
            raise ValueError("pool needs at least one server")
        for s in servers:
            if s.weight < 1:
                raise ValueError(f"weight must be >= 1 on {s.host}")
        addrs = [s.address for s in servers]
        if len(set(addrs)) != len(addrs):
            raise ValueError("server addresses must be distinct")
        self.vip = vip
        self.servers = list(servers)  # declared order is the canonical order
        self.alive = {s.host: True for s in servers}

    def alive_servers(self) -> list[Server]:
        return [s for s in self.servers if self.alive[s.host]]

    def set_alive(self, host: str, alive: bool):
        self.alive[host] = alive


def classify_flow(size_hint_bytes: int, threshold_bytes: int) -> str:
    """Elephant at or above the threshold, mice below."""
    return "elephant" if size_hint_bytes >= threshold_bytes else "mice"


@dataclass
class LbState:
    rr_cursor: int = 0
    wrr_credit: dict = field(default_factory=dict)  # host -> credit
    elephant_count: dict = field(default_factory=dict)  # host -> int
    mice_count: dict = field(default_factory=dict)
    reservations: dict = field(default_factory=dict)  # link key -> reserved bps


@dataclass
class FlowRecord:
    flow_id: str
    kind: str  # "gff" | "class" | "plain"
    path: Path | None = None
    demand_bps: float = 0.0
    server: str | None = None
    flow_class: str | None = None


class LoadBalancer:
    def __init__(self, controller: Controller, stats=None):
        self.controller = controller
        self.topology = controller.topology
        self.stats = stats if stats is not None else controller.engine.stats
        self.pool: ServerPool | None = None
        self.algorithm = "static_rules"
        self.params: dict = {}
        self.state = LbState()
        self.rng = random.Random(0)
        self.flows: dict[str, FlowRecord] = {}
        # flow registration: five-tuple -> (flow_id, rate_bps, size_hint)
        self.registered: dict[tuple, tuple[str, float, int]] = {}
        self.assignments: dict[str, dict] = {}
        self.decided: set[str] = set()  # selection happens on first packet only
        controller.lb_policy = self

    # -- configuration -------------------------------------------------

    def configure(self, algorithm: str, pool: ServerPool | None = None, params=None):
        if algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {algorithm!r}")
        if algorithm in SERVER_ALGORITHMS and pool is None:
            raise ValueError(f"{algorithm} needs a server pool")
        self.algorithm = algorithm
        self.pool = pool
        self.params = dict(params or {})
        self.state = LbState()
        self.rng = random.Random(self.params.get("seed", 0))
        self.registered.clear()
        self.assignments.clear()
        self.flows.clear()
        self.decided.clear()

    @property
    def elephant_threshold(self) -> int:
        return int(self.params.get("threshold_bytes", DEFAULT_ELEPHANT_THRESHOLD))

    # -- static-rule load balancing (dst-IP -> egress port) -----------

    def apply_static_lb_rules(self, rules) -> list[str]:
        statuses = []
        for switch, dst_ip, port in rules:
            if switch not in self.controller.engine.switches:
                raise UnknownSwitch(f"unknown switch {switch!r}")
            statuses.append(
                self.controller.push_static_flow(
                    f"lbstatic-{dst_ip}-{switch}",
                    switch,
                    FlowMatch(dst_ip=dst_ip),
                    FlowAction.forward(port),
                    PRIORITY_LOADBALANCER,
                )
            )
        return statuses

    # -- server selection ---------------------------------------------

    def _alive(self, pool: ServerPool) -> list[Server]:
        alive = pool.alive_servers()
        if not alive:
            raise NoAliveServer("no alive server in pool")
        return alive

    def select_round_robin(self, pool: ServerPool) -> Server:
        alive = self._alive(pool)
        server = alive[self.state.rr_cursor % len(alive)]
        self.state.rr_cursor += 1
        return server

    def select_weighted_round_robin(self, pool: ServerPool) -> Server:
        """Smooth WRR: add each weight as credit, pick the largest, charge
        the winner the total weight.  Ties go to canonical pool order."""
        alive = self._alive(pool)
        credit = self.state.wrr_credit
        total = sum(s.weight for s in alive)
        for s in alive:
            credit[s.host] = credit.get(s.host, 0) + s.weight
        winner = max(alive, key=lambda s: (credit[s.host], -alive.index(s)))
        credit[winner.host] -= total
        return winner

    def select_random(self, pool: ServerPool, rng=None) -> Server:
        alive = self._alive(pool)
        return (rng or self.rng).choice(alive)

    def select_hash(self, pool: ServerPool, five_tuple) -> Server:
        alive = self._alive(pool)
        best = None
        best_h = -1
        for s in alive:
            h = fnv1a_64(hash_key(five_tuple, s.address))
            if h > best_h:
                best, best_h = s, h
        return best

    def select_flow_based(self, pool: ServerPool, flow_class: str) -> Server:
        alive = self._alive(pool)
        counts = (
            self.state.elephant_count
            if flow_class == "elephant"
            else self.state.mice_count
        )
        winner = min(alive, key=lambda s: (counts.get(s.host, 0), alive.index(s)))
        counts[winner.host] = counts.get(winner.host, 0) + 1
        return winner

    # -- path selection -----------------------------------------------

    def _path_feasible(self, path: Path, demand_bps: float) -> bool:
        for link in path.links(self.topology):
            reserved = self.state.reservations.get(link.key(), 0.0)
            if reserved + demand_bps > link.capacity_bps:
                return False
        return True

    def select_path_gff(self, src, dst, demand_bps, flow_id=None) -> Path:
        if demand_bps <= 0:
            raise ValueError("demand must be > 0")
        for path in enumerate_paths(self.topology, src, dst):
            if self._path_feasible(path, demand_bps):
                for link in path.links(self.topology):
                    key = link.key()
                    self.state.reservations[key] = (
                        self.state.reservations.get(key, 0.0) + demand_bps
                    )
                fid = flow_id or f"gff-{len(self.flows)}"
                self.flows[fid] = FlowRecord(fid, "gff", path=path, demand_bps=demand_bps)
                return path
        raise NoFeasiblePath(f"no path {src}->{dst} fits {demand_bps} bps")

    def select_path_least_rate(self, src, dst, now=None, window_s=1.0) -> Path:
        paths = enumerate_paths(self.topology, src, dst)
        if not paths:
            raise NoRoute(f"no path {src}->{dst}")
        if now is None:
            now = self.controller.engine.now
        best = None
        best_rate = None
        for path in paths:
            rate = max(
                self.stats.link_rate_bps(link, now, window_s)
                for link in path.links(self.topology)
            )
            if best_rate is None or rate < best_rate:
                best, best_rate = path, rate
        return best

    def end_flow(self, flow_id: str):
        record = self.flows.pop(flow_id, None)
        if record is None:
            raise UnknownFlow(f"unknown flow {flow_id!r}")
        if record.kind == "gff" and record.path is not None:
            for link in record.path.links(self.topology):
                key = link.key()
                self.state.reservations[key] -= record.demand_bps
                if self.state.reservations[key] <= 0:
                    del self.state.reservations[key]
        elif record.kind == "class":
            counts = (
                self.state.elephant_count
                if record.flow_class == "elephant"
                else self.state.mice_count
            )
            counts[record.server] = max(0, counts.get(record.server, 0) - 1)

    # -- binding selections to the dataplane --------------------------

    def vip_rewrite_entries(self, pool: ServerPool, server: Server, five_tuple):
        """Priority-200 exact-tuple entries steering a VIP flow to the
        chosen backend, along the default path from the client."""
        if not pool.alive.get(server.host, False):
            raise NoAliveServer(f"server {server.host} is not alive")
        src_ip, dst_ip, src_port, dst_port, protocol = five_tuple
        topo = self.topology
        client = topo.host_of_addr(src_ip)
        if client is None:
            raise NoRoute(f"no host owns {src_ip}")
        client_sw, _ = topo.attachment(client)
        server_sw, _ = topo.attachment(server.host)
        path = shortest_path(topo, client_sw, server_sw)
        if path is None:
            raise NoRoute(f"{client_sw} cannot reach {server_sw}")
        host_port = topo.port_towards(server_sw, server.host)
        match = FlowMatch(
            src_ip=src_ip,
            dst_ip=dst_ip,
            src_port=src_port,
            dst_port=dst_port,
            protocol=protocol,
        )
        out = []
        for hop in path.hops:
            port = hop.egress_port if hop.egress_port is not None else host_port
            name = (
                f"lb-{src_ip}:{src_port}-{dst_ip}:{dst_port}-{protocol}-{hop.node}"
            )
            out.append(
                (
                    hop.node,
                    FlowEntry(
                        name=name,
                        match=match,
                        priority=PRIORITY_LOADBALANCER,
                        action=FlowAction.forward(port),
                    ),
                )
            )
        return out

    def _path_entries(self, path: Path, five_tuple, dst_host: str):
        src_ip, dst_ip, src_port, dst_port, protocol = five_tuple
        topo = self.topology
        host_port = topo.port_towards(path.switches[-1], dst_host)
        match = FlowMatch(
            src_ip=src_ip,
            dst_ip=dst_ip,
            src_port=src_port,
            dst_port=dst_port,
            protocol=protocol,
        )
        out = []
        for hop in path.hops:
            port = hop.egress_port if hop.egress_port is not None else host_port
            name = (
                f"lb-{src_ip}:{src_port}-{dst_ip}:{dst_port}-{protocol}-{hop.node}"
            )
            out.append(
                (
                    hop.node,
                    FlowEntry(
                        name=name,
                        match=match,
                        priority=PRIORITY_LOADBALANCER,
                        action=FlowAction.forward(port),
                    ),
                )
            )
        return out

    # -- controller policy hooks --------------------------------------

    def register_flow(self, flow_id, five_tuple, rate_bps, size_hint):
        self.registered[five_tuple] = (flow_id, rate_bps, size_hint)

    def claims(self, pkt: Packet) -> bool:
        if self.algorithm in SERVER_ALGORITHMS:
            return self.pool is not None and pkt.dst_ip == self.pool.vip
        if self.algorithm in PATH_ALGORITHMS:
            return self._tuple_of(pkt) in self.registered
        return False

    @staticmethod
    def _tuple_of(pkt: Packet):
        return (pkt.src_ip, pkt.dst_ip, pkt.src_port, pkt.dst_port, pkt.protocol)

    def handle_packet_in(self, switch, pkt: Packet):
        five = self._tuple_of(pkt)
        reg = self.registered.get(five)
        flow_id = reg[0] if reg else f"flow-{five}"
        if flow_id in self.decided:
            # selection happened on the flow's first packet; a rejected
            # flow stays rejected rather than falling back to routing
            return []
        self.decided.add(flow_id)
        try:
            if self.algorithm in SERVER_ALGORITHMS:
                placements = self._handle_server_flow(five, reg, flow_id)
            else:
                placements = self._handle_path_flow(five, reg, flow_id, pkt)
        except (NoAliveServer, NoFeasiblePath, NoRoute) as exc:
            self.assignments[flow_id] = {"error": exc.code}
            raise
        installed = []
        for sw, entry in placements:
            self.controller.push_static_flow(
                entry.name, sw, entry.match, entry.action, entry.priority
            )
            installed.append(entry)
        self.controller.engine.emit_event(
            "lb-assigned", f"{flow_id} {self.assignments[flow_id]}"
        )
        return installed

    def _handle_server_flow(self, five, reg, flow_id):
        pool = self.pool
        if self.algorithm == "round_robin":
            server = self.select_round_robin(pool)
        elif self.algorithm == "weighted_round_robin":
            server = self.select_weighted_round_robin(pool)
        elif self.algorithm == "random":
            server = self.select_random(pool)
        elif self.algorithm == "hash":
            server = self.select_hash(pool, five)
        else:  # flow_based
            size_hint = reg[2] if reg else 0
            flow_class = classify_flow(size_hint, self.elephant_threshold)
            server = self.select_flow_based(pool, flow_class)
            self.flows[flow_id] = FlowRecord(
                flow_id, "class", server=server.host, flow_class=flow_class
            )
        if self.algorithm != "flow_based":
            self.flows.setdefault(flow_id, FlowRecord(flow_id, "plain"))
        self.assignments[flow_id] = {"server": server.host}
        return self.vip_rewrite_entries(pool, server, five)

    def _handle_path_flow(self, five, reg, flow_id, pkt):
        src_host = self.topology.host_of_addr(pkt.src_ip)
        dst_host = self.topology.host_of_addr(pkt.dst_ip)
        if src_host is None or dst_host is None:
            raise NoRoute(f"unroutable tuple {five}")
        if self.algorithm == "global_first_fit":
            demand = reg[1] if reg else 1.0
            path = self.select_path_gff(src_host, dst_host, demand, flow_id=flow_id)
        else:
            path = self.select_path_least_rate(src_host, dst_host)
            self.flows.setdefault(flow_id, FlowRecord(flow_id, "plain", path=path))
        self.assignments[flow_id] = {"path": list(path.switches)}
        return self._path_entries(path, five, dst_host)
