"""sdnctl: thin HTTP client for the emulator's REST API.

Exit codes: 0 success, 1 usage error or 4xx from the server,
2 connection failure.
"""

from __future__ import annotations

import json
import sys

import click
import requests

DEFAULT_URL = "http://127.0.0.1:8000"


@click.group()
@click.option(
    "--url",
    envvar="SDNCTL_URL",
    default=DEFAULT_URL,
    show_default=True,
    help="server base URL (env: SDNCTL_URL)",
)
@click.pass_context
def main(ctx, url):
    ctx.obj = url.rstrip("/")


def _request(url, method, path, **kwargs):
    try:
        resp = requests.request(method, url + path, timeout=30, **kwargs)
    except requests.ConnectionError as exc:
        click.echo(f"connection failed: {exc}", err=True)
        sys.exit(2)
    if resp.status_code >= 400:
        click.echo(resp.text, err=True)
        sys.exit(1)
    return resp.json()


@main.command()
@click.option("--src_ip", "--src-ip", "src_ip", required=True)
@click.option("--dst_ip", "--dst-ip", "dst_ip", required=True)
@click.option("--allow", type=click.IntRange(0, 1), required=True)
@click.pass_obj
def firewall(url, src_ip, dst_ip, allow):
    """Enable (--allow=1) or disable (--allow=0) a src->dst flow."""
    body = {"src_ip": src_ip, "dst_ip": dst_ip, "allow": allow}
    out = _request(url, "POST", "/api/v1/firewall", json=body)
    for _name in out["entries"]:
        click.echo(json.dumps({"status": out["status"]}))


@main.command()
@click.option("--src", required=True, help="source host, e.g. h1")
@click.option("--dst", required=True, help="destination host or address")
@click.option("--count", type=click.IntRange(min=1), default=4, show_default=True)
@click.pass_obj
def ping(url, src, dst, count):
    """Ping-style reachability check through the emulated network."""
    body = {"src": src, "dst": dst, "count": count}
    report = _request(url, "POST", "/api/v1/traffic/ping", json=body)
    dst_ip = report["dst_ip"]
    click.echo(f"PING {dst_ip} ({dst_ip}) 56(84) bytes of data.")
    for probe in report["probes"]:
        if probe["replied"]:
            ms = probe["rtt_s"] * 1000.0
            click.echo(
                f"64 bytes from {dst_ip}: icmp_seq={probe['seq']} ttl=64 "
                f"time={ms:.3f} ms"
            )
    tx, rx = report["transmitted"], report["received"]
    loss = 100.0 * (tx - rx) / tx if tx else 0.0
    click.echo(f"--- {dst_ip} ping statistics ---")
    click.echo(f"{tx} packets transmitted, {rx} received, {loss:.0f}% packet loss")


@main.group()
def lb():
    """Load balancer configuration."""


@lb.command("set")
@click.option("--file", "file_", type=click.Path(exists=True), required=True)
@click.pass_obj
def lb_set(url, file_):
    """Apply a pool/algorithm config document."""
    try:
        with open(file_) as fh:
            body = json.load(fh)
    except json.JSONDecodeError as exc:
        click.echo(f"bad JSON in {file_}: line {exc.lineno} col {exc.colno}", err=True)
        sys.exit(1)
    out = _request(url, "POST", "/api/v1/lb/config", json=body)
    click.echo(out["status"])


@main.command("run-scenario")
@click.option("--file", "file_", type=click.Path(exists=True), required=True)
@click.pass_obj
def run_scenario(url, file_):
    """Run a flow scenario file and print per-flow assignments."""
    try:
        with open(file_) as fh:
            body = json.load(fh)
    except json.JSONDecodeError as exc:
        click.echo(f"bad JSON in {file_}: line {exc.lineno} col {exc.colno}", err=True)
        sys.exit(1)
    results = _request(url, "POST", "/api/v1/traffic/run-scenario", json=body)
    click.echo(f"{'flow':<16}{'assignment':<32}{'delivered_bytes':>16}")
    for r in results:
        assignment = r["assignment"]
        if "server" in assignment:
            shown = f"server={assignment['server']}"
        elif "path" in assignment:
            shown = "path=" + "-".join(assignment["path"])
        elif "error" in assignment:
            shown = f"error={assignment['error']}"
        else:
            shown = "-"
        click.echo(f"{r['id']:<16}{shown:<32}{r['delivered_bytes']:>16}")


@main.group()
def topo():
    """Topology inspection."""


@topo.command("show")
@click.pass_obj
def topo_show(url):
    """Print the server's topology as JSON."""
    out = _request(url, "GET", "/api/v1/topology")
    click.echo(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
