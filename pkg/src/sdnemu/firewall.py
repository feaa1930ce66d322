"""Interactive allow/deny of host-to-host flows, pushed live to the
switches along the current default path.

Entries are directional: deny(A, B) drops only packets addressed A→B.
Both ping directions still fail under a deny because each ping needs the
blocked leg for either its request or its reply.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .controller import Controller, STATUS_ENTRY_PUSHED
from .dataplane import FlowAction, FlowMatch, PRIORITY_FIREWALL
from .errors import NoRoute, UnknownHost
from .topology import shortest_path


@dataclass
class FirewallRule:
    src_ip: str
    dst_ip: str
    allow: bool
    entry_names: list[str] = field(default_factory=list)


class Firewall:
    def __init__(self, controller: Controller, strict: bool = False):
        self.controller = controller
        self.topology = controller.topology
        # strict mode installs on every switch, not just the default path
        self.strict = strict
        self.rules: dict[tuple[str, str], FirewallRule] = {}

    def _path_switches(self, src_ip: str, dst_ip: str) -> list[str]:
        topo = self.topology
        src_host = topo.host_of_addr(src_ip)
        dst_host = topo.host_of_addr(dst_ip)
        if src_host is None or dst_host is None:
            bad = src_ip if src_host is None else dst_ip
            raise UnknownHost(f"{bad} does not belong to a known host")
        if self.strict:
            return topo.switch_names()
        src_sw, _ = topo.attachment(src_host)
        dst_sw, _ = topo.attachment(dst_host)
        path = shortest_path(topo, src_sw, dst_sw)
        if path is None:
            raise NoRoute(f"{src_sw} cannot reach {dst_sw}")
        return list(path.switches)

    def set_flow_permission(self, src_ip, dst_ip, allow) -> list[str]:
        switches = self._path_switches(src_ip, dst_ip)
        action = FlowAction.allow() if allow else FlowAction.drop()
        match = FlowMatch(src_ip=src_ip, dst_ip=dst_ip)
        names = []
        statuses = []
        for sw in switches:
            name = f"fw-{src_ip}-{dst_ip}-{sw}"
            statuses.append(
                self.controller.push_static_flow(
                    name, sw, match, action, PRIORITY_FIREWALL
                )
            )
            names.append(name)
        self.rules[(src_ip, dst_ip)] = FirewallRule(src_ip, dst_ip, bool(allow), names)
        self.controller.engine.emit_event(
            "rules-changed", f"firewall {src_ip}->{dst_ip} allow={int(allow)}"
        )
        return statuses

    def list_permissions(self) -> list[FirewallRule]:
        return [
            FirewallRule(r.src_ip, r.dst_ip, r.allow, list(r.entry_names))
            for r in self.rules.values()
        ]

    def clear_permission(self, src_ip, dst_ip) -> str:
        rule = self.rules.pop((src_ip, dst_ip), None)
        if rule is None:
            return "not_found"
        for name in rule.entry_names:
            self.controller.delete_static_flow(name)
        self.controller.engine.emit_event(
            "rules-changed", f"firewall {src_ip}->{dst_ip} cleared"
        )
        return "cleared"


# re-export for callers that only need the status literal
ENTRY_PUSHED = STATUS_ENTRY_PUSHED
