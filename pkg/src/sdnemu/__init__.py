"""In-process SDN testbed: flow-table switches, a centralized controller
with a REST rule-pushing API, a live firewall, and pluggable
load-balancing algorithms."""

from .emulator import Emulator
from .topology import Topology, build_reference_topology

__version__ = "0.1.0"

__all__ = ["Emulator", "Topology", "build_reference_topology", "__version__"]
