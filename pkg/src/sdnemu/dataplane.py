"""Flow tables and the discrete-event packet walk.

Each switch holds an ordered set of priority-matched entries; the engine
carries packets hop-by-hop under simulated time, raising a synchronous
packet-in on table miss and updating entry/port counters along the way.

Priority tiers used network-wide: firewall 300, load balancer 200,
default routing 100.  An Allow action falls through to the next tier
below it instead of terminating the lookup.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

from .errors import (
    AddressMismatch,
    EmulatorError,
    InvalidPort,
    UnknownHost,
    UnknownSwitch,
)
from .stats import StatsStore
from .topology import Topology

PRIORITY_FIREWALL = 300
PRIORITY_LOADBALANCER = 200
PRIORITY_ROUTING = 100

HOP_LIMIT = 64

ICMP_ECHO_SIZE = 84  # 56 B payload + headers, ping's default framing


@dataclass(frozen=True)
class FlowMatch:
    src_ip: str | None = None  # None = wildcard
    dst_ip: str | None = None
    src_port: int | None = None
    dst_port: int | None = None
    protocol: str | None = None  # "icmp" | "tcp" | "udp"

    def matches(self, pkt: "Packet") -> bool:
        return (
            (self.src_ip is None or self.src_ip == pkt.src_ip)
            and (self.dst_ip is None or self.dst_ip == pkt.dst_ip)
            and (self.src_port is None or self.src_port == pkt.src_port)
            and (self.dst_port is None or self.dst_port == pkt.dst_port)
            and (self.protocol is None or self.protocol == pkt.protocol)
        )


@dataclass(frozen=True)
class FlowAction:
    kind: str  # "forward" | "drop" | "allow"
    port: int | None = None

    @classmethod
    def forward(cls, port: int) -> "FlowAction":
        return cls("forward", port)

    @classmethod
    def drop(cls) -> "FlowAction":
        return cls("drop")

    @classmethod
    def allow(cls) -> "FlowAction":
        return cls("allow")


@dataclass
class FlowEntry:
    name: str
    match: FlowMatch
    priority: int
    action: FlowAction
    packets: int = 0
    bytes: int = 0
    installed_seq: int = 0
    first_matched: float | None = None
    last_matched: float | None = None

    def hit(self, size: int, time: float):
        self.packets += 1
        self.bytes += size
        if self.first_matched is None:
            self.first_matched = time
        self.last_matched = time


@dataclass
class Packet:
    src_ip: str
    dst_ip: str
    src_port: int = 0
    dst_port: int = 0
    protocol: str = "icmp"
    size: int = ICMP_ECHO_SIZE
    icmp_kind: str = "none"  # "echo-request" | "echo-reply" | "none"
    injected_at: float = 0.0
    hops_remaining: int = HOP_LIMIT

    def five_tuple(self) -> str:
        return (
            f"{self.src_ip}>{self.dst_ip}/{self.protocol}"
            f"/{self.src_port}:{self.dst_port}"
        )


class SwitchState:
    def __init__(self, name: str, ports: set[int]):
        self.name = name
        self.ports = ports
        self.entries: dict[str, FlowEntry] = {}

    def best_match(self, pkt: Packet, below_priority: int | None = None):
        best = None
        for entry in self.entries.values():
            if below_priority is not None and entry.priority >= below_priority:
                continue
            if not entry.match.matches(pkt):
                continue
            if best is None or (entry.priority, -entry.installed_seq) > (
                best.priority,
                -best.installed_seq,
            ):
                best = entry
        return best


@dataclass(frozen=True)
class TraceRecord:
    verdict: str  # "delivered" | "dropped" | "dropped-no-rule" | "loop-killed"
    where: str  # host (delivered) or switch (otherwise)
    time: float
    switches: tuple[str, ...]  # switches traversed, in order


class Engine:
    """Single-threaded discrete-event core; one instance per emulation."""

    def __init__(self, topology: Topology, stats: StatsStore | None = None):
        self.topology = topology
        self.stats = stats or StatsStore()
        self.now = 0.0
        self.switches = {
            name: SwitchState(name, topology.ports_of(name))
            for name in topology.switch_names()
        }
        self._seq = itertools.count(1)
        self.trace_lines: list[str] = []
        self.verdicts = {
            "delivered": 0,
            "dropped": 0,
            "dropped-no-rule": 0,
            "loop-killed": 0,
        }
        # called on table miss: (switch_name, packet) -> installed entries
        self.packet_in_handler = None
        self.listeners: list = []  # called with event dicts

    # -- flow table management ----------------------------------------

    def switch(self, name: str) -> SwitchState:
        try:
            return self.switches[name]
        except KeyError:
            raise UnknownSwitch(f"unknown switch {name!r}") from None

    def install_entry(self, switch: str, entry: FlowEntry) -> str:
        sw = self.switch(switch)
        if entry.action.kind == "forward" and entry.action.port not in sw.ports:
            raise InvalidPort(f"port {entry.action.port} does not exist on {switch}")
        fresh = replace(entry)
        fresh.packets = 0
        fresh.bytes = 0
        fresh.first_matched = None
        fresh.last_matched = None
        fresh.installed_seq = next(self._seq)
        status = "replaced" if entry.name in sw.entries else "installed"
        sw.entries[entry.name] = fresh
        return status

    def remove_entries(self, switch: str, name_prefix: str) -> int:
        sw = self.switch(switch)
        doomed = [n for n in sw.entries if n.startswith(name_prefix)]
        for name in doomed:
            del sw.entries[name]
        return len(doomed)

    def match_packet(self, switch: str, pkt: Packet):
        """Lookup only; no counter updates.  None means table miss."""
        return self.switch(switch).best_match(pkt)

    # -- tracing -------------------------------------------------------

    def _trace(self, time: float, event: str, where: str, pkt: Packet | None, detail: str):
        five = pkt.five_tuple() if pkt else "-"
        self.trace_lines.append(f"{time:.9f}\t{event}\t{where}\t{five}\t{detail}")
        record = {"time": time, "event": event, "where": where, "detail": detail}
        for listener in self.listeners:
            listener(record)

    def emit_event(self, event: str, detail: str):
        self._trace(self.now, event, "-", None, detail)

    # -- packet walk ---------------------------------------------------

    def _resolve(self, sw: SwitchState, pkt: Packet, time: float):
        """Highest-priority match with Allow fall-through; bumps counters."""
        ceiling = None
        while True:
            entry = sw.best_match(pkt, below_priority=ceiling)
            if entry is None:
                return None
            entry.hit(pkt.size, time)
            if entry.action.kind == "allow":
                self._trace(time, "allow", sw.name, pkt, entry.name)
                ceiling = entry.priority
                continue
            return entry

    def inject_packet(self, src_host: str, pkt: Packet) -> TraceRecord:
        topo = self.topology
        if not topo.is_host(src_host):
            raise UnknownHost(f"unknown host {src_host!r}")
        if pkt.src_ip != topo.addr_of_host(src_host):
            raise AddressMismatch(
                f"packet src {pkt.src_ip} is not {src_host}'s address"
            )
        t = self.now
        pkt.injected_at = t
        self._trace(t, "inject", src_host, pkt, "")
        if pkt.dst_ip == topo.addr_of_host(src_host):
            # loopback short-circuit: no switches involved
            self._trace(t, "deliver", src_host, pkt, "loopback")
            self.verdicts["delivered"] += 1
            return TraceRecord("delivered", src_host, t, ())

        cur, _ = topo.attachment(src_host)
        visited: list[str] = []
        while True:
            pkt.hops_remaining -= 1
            if pkt.hops_remaining <= 0:
                self._trace(t, "loop-killed", cur, pkt, "hop limit")
                self.verdicts["loop-killed"] += 1
                return TraceRecord("loop-killed", cur, t, tuple(visited))
            visited.append(cur)
            sw = self.switches[cur]

            entry = self._resolve(sw, pkt, t)
            if entry is None:
                self._trace(t, "packet-in", cur, pkt, "")
                if self.packet_in_handler is not None:
                    try:
                        self.packet_in_handler(cur, pkt)
                    except EmulatorError:
                        pass  # no route / no server: fall through to drop
                entry = self._resolve(sw, pkt, t)
                if entry is None:
                    self._trace(t, "drop-no-rule", cur, pkt, "")
                    self.verdicts["dropped-no-rule"] += 1
                    return TraceRecord("dropped-no-rule", cur, t, tuple(visited))

            if entry.action.kind == "drop":
                self._trace(t, "drop", cur, pkt, entry.name)
                self.verdicts["dropped"] += 1
                return TraceRecord("dropped", cur, t, tuple(visited))

            link = topo.link_on_port(cur, entry.action.port)
            far = link.other(cur)
            self._trace(
                t,
                "forward",
                cur,
                pkt,
                f"{entry.name} port={entry.action.port} size={pkt.size}",
            )
            self.stats.record_transit(cur, entry.action.port, pkt.size, t, "tx")
            t += link.latency_s
            if topo.is_switch(far.node):
                self.stats.record_transit(far.node, far.port, pkt.size, t, "rx")
            if topo.is_host(far.node):
                self._trace(t, "deliver", far.node, pkt, "")
                self.verdicts["delivered"] += 1
                return TraceRecord("delivered", far.node, t, tuple(visited))
            cur = far.node

    def ping_roundtrip(self, src: str, dst: str):
        """One echo round-trip; rtt sums link latencies both ways."""
        topo = self.topology
        for h in (src, dst):
            if not topo.is_host(h):
                raise UnknownHost(f"unknown host {h!r}")
        if src == dst:
            return {"reply": True, "rtt": 0.0}
        request = Packet(
            src_ip=topo.addr_of_host(src),
            dst_ip=topo.addr_of_host(dst),
            protocol="icmp",
            icmp_kind="echo-request",
        )
        start = self.now
        out = self.inject_packet(src, request)
        if out.verdict != "delivered":
            return {"reply": False, "rtt": None}
        reply = Packet(
            src_ip=topo.addr_of_host(dst),
            dst_ip=topo.addr_of_host(src),
            protocol="icmp",
            icmp_kind="echo-reply",
        )
        self.now = out.time
        back = self.inject_packet(dst, reply)
        # leave the clock at the end of the exchange so later traffic on the
        # same ports never regresses in time
        self.now = back.time
        if back.verdict != "delivered":
            return {"reply": False, "rtt": None}
        return {"reply": True, "rtt": back.time - start}

    def trace_text(self) -> str:
        return "\n".join(self.trace_lines) + "\n" if self.trace_lines else ""
