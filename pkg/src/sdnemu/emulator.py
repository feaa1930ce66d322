"""Composition root: one emulator = topology + engine + controller +
firewall + load balancer, wired together."""

from __future__ import annotations

import hashlib

from .controller import Controller
from .dataplane import Engine
from .firewall import Firewall
from .loadbalancer import LoadBalancer
from .stats import StatsStore
from .topology import Topology, build_reference_topology, validate_topology


class Emulator:
    def __init__(self, topology: Topology | None = None, strict_firewall: bool = False):
        self.topology = topology or build_reference_topology()
        violations = validate_topology(self.topology)
        if violations:
            raise ValueError(f"invalid topology: {violations}")
        self.stats = StatsStore()
        self.engine = Engine(self.topology, self.stats)
        self.controller = Controller(self.engine)
        self.firewall = Firewall(self.controller, strict=strict_firewall)
        self.loadbalancer = LoadBalancer(self.controller)

    def topology_hash(self) -> str:
        return hashlib.sha256(self.topology.to_json().encode()).hexdigest()[:16]
