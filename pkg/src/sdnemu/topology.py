"""Network graph model: hosts, switches, links, and simple-path enumeration.

Topologies are immutable after construction and safe to share across
threads.  The reference topology is a small 3-tier fabric (core s1,
aggregation s2/s3, edge s4/s5 with two hosts each) chosen so that every
host pair has at least two disjoint switch paths.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import SameEndpoint, UnknownNode

DEFAULT_CAPACITY_BPS = 10_000_000
DEFAULT_LATENCY_S = 20e-6


@dataclass(frozen=True)
class NodeId:
    kind: str  # "host" | "switch"
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Endpoint:
    node: str
    port: int

    def __str__(self):
        return f"{self.node}:{self.port}"

    @classmethod
    def parse(cls, text: str) -> "Endpoint":
        node, _, port = text.rpartition(":")
        return cls(node, int(port))


@dataclass(frozen=True)
class Link:
    a: Endpoint
    b: Endpoint
    capacity_bps: float = DEFAULT_CAPACITY_BPS
    latency_s: float = DEFAULT_LATENCY_S

    def other(self, node: str) -> Endpoint:
        if node == self.a.node:
            return self.b
        if node == self.b.node:
            return self.a
        raise ValueError(f"{node} not on link {self}")

    def touches(self, node: str) -> bool:
        return node in (self.a.node, self.b.node)

    def key(self):
        """Direction-independent identity of the link."""
        ends = sorted([(self.a.node, self.a.port), (self.b.node, self.b.port)])
        return tuple(ends)

    def __str__(self):
        return f"{self.a}--{self.b}"


@dataclass(frozen=True)
class PathHop:
    node: str
    egress_port: int | None  # None on a switch-terminated path's last hop


@dataclass(frozen=True)
class Path:
    """Hops from the source-side switch to the destination-side switch."""

    hops: tuple[PathHop, ...]

    @property
    def switches(self) -> tuple[str, ...]:
        return tuple(h.node for h in self.hops)

    def links(self, topology: "Topology") -> list[Link]:
        out = []
        names = self.switches
        for cur, nxt in zip(names, names[1:]):
            out.append(topology.link_between(cur, nxt))
        return out

    def __str__(self):
        return "-".join(self.switches)


class Topology:
    def __init__(self, nodes, links, host_addrs):
        self.declared_nodes: list[NodeId] = list(nodes)
        self.nodes: dict[str, NodeId] = {n.name: n for n in nodes}
        self.links: list[Link] = list(links)
        self.host_addrs: dict[str, str] = dict(host_addrs)
        # adjacency: node -> list of (link, far endpoint)
        self._adj: dict[str, list[tuple[Link, Endpoint]]] = {n: [] for n in self.nodes}
        for link in self.links:
            if link.a.node in self._adj:
                self._adj[link.a.node].append((link, link.b))
            if link.b.node in self._adj:
                self._adj[link.b.node].append((link, link.a))
        self._addr_to_host = {addr: h for h, addr in self.host_addrs.items()}

    # -- lookups -------------------------------------------------------

    def node(self, name: str) -> NodeId:
        try:
            return self.nodes[name]
        except KeyError:
            raise UnknownNode(f"unknown node {name!r}") from None

    def is_host(self, name: str) -> bool:
        return name in self.nodes and self.nodes[name].kind == "host"

    def is_switch(self, name: str) -> bool:
        return name in self.nodes and self.nodes[name].kind == "switch"

    def host_of_addr(self, addr: str) -> str | None:
        return self._addr_to_host.get(addr)

    def addr_of_host(self, host: str) -> str:
        return self.host_addrs[host]

    def ports_of(self, name: str) -> set[int]:
        ports = set()
        for link, _far in self._adj.get(name, []):
            end = link.a if link.a.node == name else link.b
            ports.add(end.port)
        return ports

    def neighbors(self, name: str):
        return self._adj.get(name, [])

    def link_on_port(self, name: str, port: int) -> Link | None:
        for link, _far in self._adj.get(name, []):
            end = link.a if link.a.node == name else link.b
            if end.port == port:
                return link
        return None

    def link_between(self, a: str, b: str) -> Link:
        for link, far in self._adj.get(a, []):
            if far.node == b:
                return link
        raise ValueError(f"no link {a}--{b}")

    def port_towards(self, a: str, b: str) -> int:
        link = self.link_between(a, b)
        end = link.a if link.a.node == a else link.b
        return end.port

    def attachment(self, host: str) -> tuple[str, int]:
        """(switch, switch-side port) the host hangs off."""
        for link, far in self._adj[host]:
            return far.node, far.port
        raise UnknownNode(f"host {host!r} has no link")

    def switch_names(self) -> list[str]:
        return sorted(n for n, nid in self.nodes.items() if nid.kind == "switch")

    def host_names(self) -> list[str]:
        return sorted(n for n, nid in self.nodes.items() if nid.kind == "host")

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {"name": n.name, "kind": n.kind}
                for n in sorted(self.nodes.values(), key=lambda x: (x.kind, x.name))
            ],
            "links": [
                {
                    "a": str(l.a),
                    "b": str(l.b),
                    "capacity_bps": l.capacity_bps,
                    "latency_s": l.latency_s,
                }
                for l in self.links
            ],
            "host_addrs": {h: self.host_addrs[h] for h in sorted(self.host_addrs)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, doc: dict) -> "Topology":
        nodes = [NodeId(kind=n["kind"], name=n["name"]) for n in doc["nodes"]]
        links = [
            Link(
                a=Endpoint.parse(l["a"]),
                b=Endpoint.parse(l["b"]),
                capacity_bps=l["capacity_bps"],
                latency_s=l["latency_s"],
            )
            for l in doc["links"]
        ]
        return cls(nodes, links, doc["host_addrs"])

    @classmethod
    def from_json(cls, text: str) -> "Topology":
        return cls.from_dict(json.loads(text))


def build_reference_topology() -> Topology:
    """Core s1; aggregation s2, s3; edge s4 (h1, h2) and s5 (h3, h4)."""
    hosts = [NodeId("host", f"h{i}") for i in range(1, 5)]
    switches = [NodeId("switch", f"s{i}") for i in range(1, 6)]
    wiring = [
        ("h1", "s4"),
        ("h2", "s4"),
        ("h3", "s5"),
        ("h4", "s5"),
        ("s1", "s2"),
        ("s1", "s3"),
        ("s2", "s4"),
        ("s2", "s5"),
        ("s3", "s4"),
        ("s3", "s5"),
    ]
    next_port: dict[str, int] = {}
    links = []
    for a, b in wiring:
        pa = next_port.get(a, 0) + 1
        pb = next_port.get(b, 0) + 1
        next_port[a], next_port[b] = pa, pb
        links.append(Link(Endpoint(a, pa), Endpoint(b, pb)))
    addrs = {f"h{i}": f"10.0.0.{i}" for i in range(1, 5)}
    return Topology(hosts + switches, links, addrs)


def enumerate_paths(t: Topology, src: str, dst: str) -> list[Path]:
    """All simple switch paths src→dst, lexicographic by switch-name sequence.

    Host endpoints are resolved to their attached switches; the final hop
    then carries the egress port towards the destination host.
    """
    if src == dst:
        raise SameEndpoint(f"src and dst are both {src!r}")
    t.node(src)
    t.node(dst)

    dst_host_port = None
    if t.is_host(src):
        src_sw, _ = t.attachment(src)
    else:
        src_sw = src
    if t.is_host(dst):
        dst_sw, _ = t.attachment(dst)
        dst_host_port = t.port_towards(dst_sw, dst)
    else:
        dst_sw = dst

    results: list[tuple[str, ...]] = []
    if src_sw == dst_sw:
        results.append((src_sw,))
    else:
        stack = [(src_sw, (src_sw,))]
        while stack:
            cur, trail = stack.pop()
            for _link, far in t.neighbors(cur):
                if not t.is_switch(far.node) or far.node in trail:
                    continue
                if far.node == dst_sw:
                    results.append(trail + (far.node,))
                else:
                    stack.append((far.node, trail + (far.node,)))
    results.sort()

    paths = []
    for names in results:
        hops = []
        for cur, nxt in zip(names, names[1:]):
            hops.append(PathHop(cur, t.port_towards(cur, nxt)))
        hops.append(PathHop(names[-1], dst_host_port))
        paths.append(Path(tuple(hops)))
    return paths


def shortest_path(t: Topology, src_sw: str, dst_sw: str) -> Path | None:
    """BFS by hop count; ties broken by lexicographic switch-name sequence.

    Returns None when disconnected.  Endpoints must be switches.
    """
    if src_sw == dst_sw:
        return Path((PathHop(src_sw, None),))
    dist = {dst_sw: 0}
    frontier = [dst_sw]
    while frontier:
        nxt = []
        for node in frontier:
            for _link, far in t.neighbors(node):
                if t.is_switch(far.node) and far.node not in dist:
                    dist[far.node] = dist[node] + 1
                    nxt.append(far.node)
        frontier = nxt
    if src_sw not in dist:
        return None
    # walk downhill, always taking the alphabetically first next switch
    names = [src_sw]
    cur = src_sw
    while cur != dst_sw:
        candidates = sorted(
            far.node
            for _link, far in t.neighbors(cur)
            if t.is_switch(far.node) and dist.get(far.node) == dist[cur] - 1
        )
        cur = candidates[0]
        names.append(cur)
    hops = [PathHop(a, t.port_towards(a, b)) for a, b in zip(names, names[1:])]
    hops.append(PathHop(names[-1], None))
    return Path(tuple(hops))


def validate_topology(t: Topology) -> list[str]:
    """Empty list means the topology is well-formed."""
    violations = []
    names = [n.name for n in t.declared_nodes]
    for name in sorted({n for n in names if names.count(n) > 1}):
        violations.append(f"duplicate node {name}")
    seen_eps = set()
    for link in t.links:
        if link.a.node == link.b.node:
            violations.append(f"self-link on {link.a.node}")
        if link.capacity_bps <= 0:
            violations.append(f"non-positive capacity on {link}")
        if link.latency_s < 0:
            violations.append(f"negative latency on {link}")
        for end in (link.a, link.b):
            if end.node not in t.nodes:
                violations.append(f"link endpoint {end} references unknown node")
            if (end.node, end.port) in seen_eps:
                violations.append(f"duplicate port {end}")
            seen_eps.add((end.node, end.port))
    for name, node in t.nodes.items():
        if node.kind == "host":
            degree = len(t.neighbors(name))
            if degree != 1:
                violations.append(f"host degree != 1 for {name}")
            if name not in t.host_addrs:
                violations.append(f"host {name} has no address")
    addrs = list(t.host_addrs.values())
    if len(set(addrs)) != len(addrs):
        violations.append("duplicate host address")
    for host in t.host_addrs:
        if host not in t.nodes:
            violations.append(f"address for unknown host {host}")
    if t.nodes:
        start = next(iter(t.nodes))
        seen = {start}
        stack = [start]
        while stack:
            for _link, far in t.neighbors(stack.pop()):
                if far.node in t.nodes and far.node not in seen:
                    seen.add(far.node)
                    stack.append(far.node)
        if seen != set(t.nodes):
            violations.append("graph not connected")
    return violations
