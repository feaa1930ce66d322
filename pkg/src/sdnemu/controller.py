"""Centralized control plane: reactive shortest-path routing on packet-in
and the static-flow-pusher surface every other module uses."""

from __future__ import annotations

from dataclasses import dataclass

from .dataplane import Engine, FlowAction, FlowEntry, FlowMatch, Packet, PRIORITY_ROUTING
from .errors import NoRoute, UnknownSwitch
from .topology import shortest_path

STATUS_ENTRY_PUSHED = "Entry pushed"


@dataclass(frozen=True)
class RegisteredRule:
    name: str
    switch: str
    priority: int
    entry: FlowEntry


class Controller:
    def __init__(self, engine: Engine):
        self.engine = engine
        self.topology = engine.topology
        self.registry: dict[str, RegisteredRule] = {}
        self.lb_policy = None  # set by the load balancer module
        engine.packet_in_handler = self.handle_packet_in

    # -- reactive routing ---------------------------------------------

    def handle_packet_in(self, switch: str, pkt: Packet) -> list[FlowEntry]:
        if self.lb_policy is not None and self.lb_policy.claims(pkt):
            return self.lb_policy.handle_packet_in(switch, pkt)
        return self.install_default_route(switch, pkt)

    def install_default_route(self, switch: str, pkt: Packet) -> list[FlowEntry]:
        topo = self.topology
        dst_host = topo.host_of_addr(pkt.dst_ip)
        if dst_host is None:
            raise NoRoute(f"no host owns {pkt.dst_ip}")
        dst_sw, _ = topo.attachment(dst_host)
        path = shortest_path(topo, switch, dst_sw)
        if path is None:
            raise NoRoute(f"{switch} cannot reach {dst_sw}")
        host_port = topo.port_towards(dst_sw, dst_host)
        match = FlowMatch(src_ip=pkt.src_ip, dst_ip=pkt.dst_ip, protocol=pkt.protocol)
        installed = []
        for hop in path.hops:
            port = hop.egress_port if hop.egress_port is not None else host_port
            entry = FlowEntry(
                name=f"rt-{pkt.src_ip}-{pkt.dst_ip}-{pkt.protocol}-{hop.node}",
                match=match,
                priority=PRIORITY_ROUTING,
                action=FlowAction.forward(port),
            )
            self.engine.install_entry(hop.node, entry)
            self.registry[entry.name] = RegisteredRule(
                entry.name, hop.node, entry.priority, entry
            )
            installed.append(entry)
        return installed

    # -- static flow pusher -------------------------------------------

    def push_static_flow(self, name, switch, match, action, priority) -> str:
        entry = FlowEntry(name=name, match=match, priority=priority, action=action)
        old = self.registry.get(name)
        if old is not None and old.switch != switch:
            # same name moving to another switch: evict the old placement
            self.engine.remove_entries(old.switch, name)
        self.engine.install_entry(switch, entry)
        self.registry[name] = RegisteredRule(name, switch, priority, entry)
        return STATUS_ENTRY_PUSHED

    def delete_static_flow(self, name: str) -> str:
        rule = self.registry.pop(name, None)
        if rule is None:
            return "not_found"
        self.engine.remove_entries(rule.switch, name)
        return "deleted"

    def list_flows(self) -> list[dict]:
        return [
            {"name": r.name, "switch": r.switch, "priority": r.priority}
            for r in self.registry.values()
        ]
