import pytest

from sdnemu.emulator import Emulator
from sdnemu.errors import UnknownHost
from sdnemu.loadbalancer import Server, ServerPool
from sdnemu.traffic import FlowSpec, run_flows, run_ping

VIP = "10.0.0.100"


def rr_pool():
    return ServerPool(
        VIP,
        [Server("h2", "10.0.0.2"), Server("h3", "10.0.0.3"), Server("h4", "10.0.0.4")],
    )


def vip_flows(n, src="h1", start_step=1.0):
    return [
        FlowSpec(
            id=f"f{i}",
            src=src,
            dst_ip=VIP,
            src_port=10_000 + i,
            rate_bps=8000.0,
            duration=0.5,
            start=i * start_step,
        )
        for i in range(n)
    ]


class TestRunPing:
    def test_baseline_counts(self, emu):
        report = run_ping(emu.engine, "h1", "10.0.0.3", 4)
        assert report.transmitted == 4
        assert report.received == 4
        assert [seq for seq, _r, _t in report.probes] == [1, 2, 3, 4]

    def test_blocked_counts(self, emu):
        emu.firewall.set_flow_permission("10.0.0.1", "10.0.0.3", 0)
        report = run_ping(emu.engine, "h1", "10.0.0.3", 4)
        assert report.received == 0

    def test_zero_count_rejected(self, emu):
        with pytest.raises(ValueError):
            run_ping(emu.engine, "h1", "10.0.0.3", 0)

    def test_unknown_destination(self, emu):
        with pytest.raises(UnknownHost):
            run_ping(emu.engine, "h1", "10.0.0.99", 1)


class TestRunFlows:
    def test_round_robin_assignment_multiset(self, emu):
        emu.loadbalancer.configure("round_robin", rr_pool())
        results = run_flows(emu.engine, emu.loadbalancer, vip_flows(6))
        servers = [r.assignment["server"] for r in results]
        assert sorted(servers) == ["h2", "h2", "h3", "h3", "h4", "h4"]

    def test_delivered_bytes_counted(self, emu):
        emu.loadbalancer.configure("round_robin", rr_pool())
        results = run_flows(emu.engine, emu.loadbalancer, vip_flows(3))
        for r in results:
            assert r.delivered_bytes > 0
            assert r.delivered_bytes % 1000 == 0

    def test_gff_infeasible_demand_recorded(self, emu):
        emu.loadbalancer.configure("global_first_fit")
        spec = FlowSpec(
            id="big",
            src="h1",
            dst_ip="10.0.0.3",
            src_port=5000,
            rate_bps=50_000_000.0,
            duration=0.001,
        )
        (result,) = run_flows(emu.engine, emu.loadbalancer, [spec])
        assert result.assignment == {"error": "NoFeasiblePath"}
        assert result.delivered_bytes == 0

    def test_gff_assigns_paths_and_delivers(self, emu):
        emu.loadbalancer.configure("global_first_fit")
        specs = [
            FlowSpec(
                id=f"g{i}",
                src="h1",
                dst_ip="10.0.0.3",
                src_port=6000 + i,
                rate_bps=8_000_000.0,
                duration=0.01,
                start=i * 1.0,
            )
            for i in range(2)
        ]
        results = run_flows(emu.engine, emu.loadbalancer, specs)
        # flows are sequential: the first ends (releasing its reservation)
        # before the second starts, so both take the first enumerated path
        assert results[0].assignment == {"path": ["s4", "s2", "s1", "s3", "s5"]}
        assert results[1].assignment == {"path": ["s4", "s2", "s1", "s3", "s5"]}

    def test_gff_concurrent_flows_spread(self, emu):
        emu.loadbalancer.configure("global_first_fit")
        specs = [
            FlowSpec(
                id=f"c{i}",
                src="h1",
                dst_ip="10.0.0.3",
                src_port=6100 + i,
                rate_bps=8_000_000.0,
                duration=10.0,
                start=i * 1.0,
            )
            for i in range(2)
        ]
        results = run_flows(emu.engine, emu.loadbalancer, specs)
        assert results[0].assignment == {"path": ["s4", "s2", "s1", "s3", "s5"]}
        # the first enumerated path touches a link on every h1->h3 path, so a
        # concurrent 8 Mbit/s flow cannot fit anywhere while it is live
        assert results[1].assignment == {"error": "NoFeasiblePath"}
        assert results[1].delivered_bytes == 0

    def test_replay_determinism(self):
        def once():
            emu = Emulator()
            emu.loadbalancer.configure("random", rr_pool(), {"seed": 99})
            results = run_flows(emu.engine, emu.loadbalancer, vip_flows(20))
            return [r.assignment for r in results], emu.engine.trace_text()

        a = once()
        b = once()
        assert a == b

    def test_wrr_600_flow_split(self, emu):
        pool = ServerPool(
            VIP, [Server("h3", "10.0.0.3", 5), Server("h4", "10.0.0.4", 1)]
        )
        emu.loadbalancer.configure("weighted_round_robin", pool)
        results = run_flows(emu.engine, emu.loadbalancer, vip_flows(600, start_step=0.6))
        servers = [r.assignment["server"] for r in results]
        assert servers.count("h3") == 500
        assert servers.count("h4") == 100
