"""Server entry point: run the REST API under uvicorn."""

from __future__ import annotations

import argparse
import json
from pathlib import Path

import uvicorn

from .api import create_app
from .emulator import Emulator
from .topology import Topology


def main(argv=None):
    parser = argparse.ArgumentParser(prog="sdnemu-server")
    parser.add_argument(
        "--listen",
        default="127.0.0.1:8000",
        help="bind address as host:port (default 127.0.0.1:8000)",
    )
    parser.add_argument(
        "--topology",
        type=Path,
        default=None,
        help="topology JSON file (default: built-in reference topology)",
    )
    parser.add_argument(
        "--config",
        type=Path,
        default=None,
        help="JSON config file; keys: listen, topology, strict_firewall",
    )
    args = parser.parse_args(argv)

    listen = args.listen
    topo_file = args.topology
    strict = False
    if args.config:
        conf = json.loads(args.config.read_text())
        listen = conf.get("listen", listen)
        if "topology" in conf:
            topo_file = Path(conf["topology"])
        strict = conf.get("strict_firewall", False)

    topology = Topology.from_json(topo_file.read_text()) if topo_file else None
    app = create_app(Emulator(topology, strict_firewall=strict))
    host, _, port = listen.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))


if __name__ == "__main__":
    main()
