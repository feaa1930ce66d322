"""Port counters with an event ring for exact sliding-window rates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import TimeRegression

DEFAULT_WINDOW_S = 1.0
# ring keeps 2x the largest window so windowed sums stay exact
RING_RETENTION_FACTOR = 2.0


@dataclass
class PortStats:
    tx_packets: int = 0
    tx_bytes: int = 0
    rx_packets: int = 0
    rx_bytes: int = 0
    tx_ring: deque = field(default_factory=deque)  # (time, bytes)
    last_time: float = 0.0

    def as_dict(self):
        return {
            "tx_packets": self.tx_packets,
            "tx_bytes": self.tx_bytes,
            "rx_packets": self.rx_packets,
            "rx_bytes": self.rx_bytes,
        }


class StatsStore:
    """Per-(switch, port) counters.  Written only by the engine thread."""

    def __init__(self, max_window_s: float = DEFAULT_WINDOW_S):
        self.ports: dict[tuple[str, int], PortStats] = {}
        self.max_window_s = max_window_s

    def _port(self, switch: str, port: int) -> PortStats:
        return self.ports.setdefault((switch, port), PortStats())

    def record_transit(self, switch, port, nbytes, time, direction="tx"):
        if nbytes <= 0:
            raise ValueError("transit size must be > 0 bytes")
        ps = self._port(switch, port)
        if time < ps.last_time:
            raise TimeRegression(
                f"time {time} < last recorded {ps.last_time} on {switch}:{port}"
            )
        ps.last_time = time
        if direction == "tx":
            ps.tx_packets += 1
            ps.tx_bytes += nbytes
            ps.tx_ring.append((time, nbytes))
            horizon = time - self.max_window_s * RING_RETENTION_FACTOR
            while ps.tx_ring and ps.tx_ring[0][0] < horizon:
                ps.tx_ring.popleft()
        else:
            ps.rx_packets += 1
            ps.rx_bytes += nbytes

    def port_rate_bps(self, switch, port, now, window_s=DEFAULT_WINDOW_S):
        """Bytes transmitted in (now - window, now], scaled to bits/second."""
        if window_s <= 0:
            raise ValueError("window_s must be > 0")
        ps = self.ports.get((switch, port))
        if ps is None:
            return 0.0
        lo = now - window_s
        total = sum(b for t, b in ps.tx_ring if lo < t <= now)
        return total * 8.0 / window_s

    def link_rate_bps(self, link, now, window_s=DEFAULT_WINDOW_S):
        """Load on a link: sum of both directions' tx rates."""
        return self.port_rate_bps(
            link.a.node, link.a.port, now, window_s
        ) + self.port_rate_bps(link.b.node, link.b.port, now, window_s)

    def snapshot(self) -> dict:
        """Point-in-time copy, detached from live counters."""
        return {
            f"{sw}:{port}": ps.as_dict() for (sw, port), ps in sorted(self.ports.items())
        }
