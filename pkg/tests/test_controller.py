from collections import deque

import pytest

from sdnemu.dataplane import FlowAction, FlowMatch, Packet, PRIORITY_ROUTING
from sdnemu.errors import NoRoute, UnknownSwitch


def bfs_shortest_lexicographic(topo, src_sw, dst_sw):
    """Oracle: enumerate all shortest switch paths, pick lexicographic min."""
    if src_sw == dst_sw:
        return (src_sw,)
    best = None
    q = deque([(src_sw, (src_sw,))])
    shortest = None
    while q:
        node, trail = q.popleft()
        if shortest is not None and len(trail) > shortest:
            continue
        for _link, far in topo.neighbors(node):
            if not topo.is_switch(far.node) or far.node in trail:
                continue
            nxt = trail + (far.node,)
            if far.node == dst_sw:
                if shortest is None:
                    shortest = len(nxt)
                if len(nxt) == shortest and (best is None or nxt < best):
                    best = nxt
            else:
                q.append((far.node, nxt))
    return best


class TestHandlePacketIn:
    def test_first_packet_installs_three_entries(self, emu):
        entries = emu.controller.handle_packet_in(
            "s4", Packet("10.0.0.1", "10.0.0.3")
        )
        assert len(entries) == 3
        switches = [e.name.rsplit("-", 1)[1] for e in entries]
        assert tuple(switches) == bfs_shortest_lexicographic(emu.topology, "s4", "s5")
        assert switches == ["s4", "s2", "s5"]

    def test_second_identical_packet_no_packet_in(self, emu):
        emu.engine.inject_packet("h1", Packet("10.0.0.1", "10.0.0.3"))
        before = sum("packet-in" in line for line in emu.engine.trace_lines)
        emu.engine.inject_packet("h1", Packet("10.0.0.1", "10.0.0.3"))
        after = sum("packet-in" in line for line in emu.engine.trace_lines)
        assert before == after == 1

    def test_unknown_destination_is_no_route(self, emu):
        with pytest.raises(NoRoute):
            emu.controller.handle_packet_in("s4", Packet("10.0.0.1", "10.0.0.99"))

    def test_installed_entries_match_exact_ips_wildcard_ports(self, emu):
        (entry, *_rest) = emu.controller.handle_packet_in(
            "s4", Packet("10.0.0.1", "10.0.0.3", 1234, 80, "tcp")
        )
        assert entry.match.src_ip == "10.0.0.1"
        assert entry.match.dst_ip == "10.0.0.3"
        assert entry.match.protocol == "tcp"
        assert entry.match.src_port is None
        assert entry.match.dst_port is None


class TestStaticFlowPusher:
    def push(self, emu, name="r1", switch="s4", priority=200):
        return emu.controller.push_static_flow(
            name,
            switch,
            FlowMatch(dst_ip="10.0.0.3"),
            FlowAction.forward(emu.topology.port_towards(switch, "s2")),
            priority,
        )

    def test_status_literal(self, emu):
        assert self.push(emu) == "Entry pushed"

    def test_unknown_switch(self, emu):
        with pytest.raises(UnknownSwitch):
            emu.controller.push_static_flow(
                "r1", "s9", FlowMatch(), FlowAction.drop(), 200
            )

    def test_repush_overwrites(self, emu):
        self.push(emu)
        assert self.push(emu, priority=250) == "Entry pushed"
        flows = [f for f in emu.controller.list_flows() if f["name"] == "r1"]
        assert len(flows) == 1
        assert flows[0]["priority"] == 250

    def test_delete_existing(self, emu):
        self.push(emu)
        assert emu.controller.delete_static_flow("r1") == "deleted"
        assert emu.controller.list_flows() == []

    def test_delete_missing(self, emu):
        assert emu.controller.delete_static_flow("nope") == "not_found"

    def test_delete_then_reinject_fires_packet_in(self, emu):
        emu.engine.inject_packet("h1", Packet("10.0.0.1", "10.0.0.3"))
        for name in list(emu.controller.registry):
            emu.controller.delete_static_flow(name)
        emu.engine.inject_packet("h1", Packet("10.0.0.1", "10.0.0.3"))
        assert sum("packet-in" in line for line in emu.engine.trace_lines) == 2

    def test_list_flows_snapshot_is_detached(self, emu):
        self.push(emu)
        snap = emu.controller.list_flows()
        self.push(emu, name="r2")
        assert len(snap) == 1


class TestInvariants:
    def test_registry_mirrors_switch_tables(self, emu):
        emu.firewall.set_flow_permission("10.0.0.1", "10.0.0.3", 0)
        emu.engine.inject_packet("h2", Packet("10.0.0.2", "10.0.0.4"))
        emu.controller.push_static_flow(
            "x", "s1", FlowMatch(), FlowAction.drop(), 200
        )
        emu.controller.delete_static_flow("x")
        in_tables = {
            name
            for sw in emu.engine.switches.values()
            for name, e in sw.entries.items()
            if e.priority >= 100
        }
        assert in_tables == set(emu.controller.registry)

    def test_all_ordered_pairs_reachable_reactively(self, emu):
        hosts = emu.topology.host_names()
        for src in hosts:
            for dst in hosts:
                if src != dst:
                    assert emu.engine.ping_roundtrip(src, dst)["reply"] is True

    def test_push_is_idempotent(self, emu):
        def tables(e):
            return {
                sw: {(n, en.priority, en.action) for n, en in s.entries.items()}
                for sw, s in e.engine.switches.items()
            }

        emu.controller.push_static_flow(
            "x", "s1", FlowMatch(dst_ip="10.0.0.3"), FlowAction.drop(), 200
        )
        once = tables(emu)
        emu.controller.push_static_flow(
            "x", "s1", FlowMatch(dst_ip="10.0.0.3"), FlowAction.drop(), 200
        )
        assert tables(emu) == once
