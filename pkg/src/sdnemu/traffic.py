"""Workload drivers: ping sequences and declarative flow scenarios.

Flows are emitted as fixed 1,000-byte datagrams at the spec'd rate so
every byte count in results is exactly computable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dataplane import Engine, Packet
from .errors import EmulatorError, UnknownHost
from .loadbalancer import LoadBalancer

DATAGRAM_BYTES = 1000
PING_SPACING_S = 1.0


@dataclass
class FlowSpec:
    id: str
    src: str  # host name
    dst_ip: str  # may be a VIP
    protocol: str = "tcp"
    src_port: int = 0
    dst_port: int = 80
    rate_bps: float = 8000.0
    size_hint: int = 0
    start: float = 0.0
    duration: float = 1.0

    def __post_init__(self):
        if self.rate_bps <= 0:
            raise ValueError("rate must be > 0")
        if self.duration <= 0:
            raise ValueError("duration must be > 0")

    @classmethod
    def from_dict(cls, doc: dict) -> "FlowSpec":
        return cls(
            id=doc["id"],
            src=doc["src"],
            dst_ip=doc["dst_ip"],
            protocol=doc.get("protocol", "tcp"),
            src_port=doc.get("src_port", 0),
            dst_port=doc.get("dst_port", 80),
            rate_bps=doc.get("rate_bps", 8000.0),
            size_hint=doc.get("size_hint", 0),
            start=doc.get("start", 0.0),
            duration=doc.get("duration", 1.0),
        )


@dataclass
class PingReport:
    src: str
    dst_ip: str
    transmitted: int = 0
    received: int = 0
    probes: list = field(default_factory=list)  # (seq, replied, rtt)

    def as_dict(self):
        return {
            "src": self.src,
            "dst_ip": self.dst_ip,
            "transmitted": self.transmitted,
            "received": self.received,
            "probes": [
                {"seq": s, "replied": r, "rtt_s": rtt} for s, r, rtt in self.probes
            ],
        }


@dataclass
class FlowResult:
    id: str
    assignment: dict  # {"server": ...} | {"path": [...]} | {"error": code}
    delivered_bytes: int

    def as_dict(self):
        return {
            "id": self.id,
            "assignment": self.assignment,
            "delivered_bytes": self.delivered_bytes,
        }


def run_ping(engine: Engine, src: str, dst: str, count: int) -> PingReport:
    """`count` sequential echo round-trips at 1 s simulated spacing.

    `dst` may be a host name or an address."""
    if count < 1:
        raise ValueError("count must be >= 1")
    topo = engine.topology
    if not topo.is_host(src):
        raise UnknownHost(f"unknown host {src!r}")
    dst_host = dst if topo.is_host(dst) else topo.host_of_addr(dst)
    if dst_host is None:
        raise UnknownHost(f"unknown destination {dst!r}")
    report = PingReport(src=src, dst_ip=topo.addr_of_host(dst_host))
    base = engine.now
    for seq in range(1, count + 1):
        engine.now = base + (seq - 1) * PING_SPACING_S
        out = engine.ping_roundtrip(src, dst_host)
        report.transmitted += 1
        if out["reply"]:
            report.received += 1
        report.probes.append((seq, out["reply"], out["rtt"]))
    engine.now = base + count * PING_SPACING_S
    return report


def run_flows(engine: Engine, lb: LoadBalancer, specs: list[FlowSpec]) -> list[FlowResult]:
    """Drive each flow through the dataplane; the first packet of a flow
    triggers LB selection via packet-in when the active policy claims it."""
    topo = engine.topology
    base = engine.now
    ordered = sorted(specs, key=lambda s: (s.start, s.id))
    timeline = []  # (time, tie, kind, spec)
    for idx, spec in enumerate(ordered):
        src_addr = topo.addr_of_host(spec.src)
        five = (src_addr, spec.dst_ip, spec.src_port, spec.dst_port, spec.protocol)
        lb.register_flow(spec.id, five, spec.rate_bps, spec.size_hint)
        total_bytes = spec.rate_bps * spec.duration / 8.0
        n_packets = max(1, int(total_bytes // DATAGRAM_BYTES))
        gap = spec.duration / n_packets
        for i in range(n_packets):
            timeline.append((base + spec.start + i * gap, 1, idx, spec))
        timeline.append((base + spec.start + spec.duration, 0, idx, spec))
    # at equal times a flow end frees its reservations before new packets
    timeline.sort(key=lambda ev: (ev[0], ev[1], ev[2]))

    delivered = {spec.id: 0 for spec in ordered}
    for time, kind, _idx, spec in timeline:
        engine.now = max(engine.now, time)
        if kind == 0:
            if spec.id in lb.flows:
                try:
                    lb.end_flow(spec.id)
                except EmulatorError:
                    pass
            continue
        pkt = Packet(
            src_ip=topo.addr_of_host(spec.src),
            dst_ip=spec.dst_ip,
            src_port=spec.src_port,
            dst_port=spec.dst_port,
            protocol=spec.protocol,
            size=DATAGRAM_BYTES,
        )
        record = engine.inject_packet(spec.src, pkt)
        if record.verdict == "delivered":
            delivered[spec.id] += DATAGRAM_BYTES

    return [
        FlowResult(spec.id, lb.assignments.get(spec.id, {}), delivered[spec.id])
        for spec in ordered
    ]
