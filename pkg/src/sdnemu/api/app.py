"""HTTP/JSON control surface over one emulator instance.

Handlers may run concurrently; every mutation takes the engine lock so
state changes observe a total order.  Reads serve snapshots.
"""

from __future__ import annotations

import json
import queue
import threading
from pathlib import Path as FsPath

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, StreamingResponse
from fastapi.staticfiles import StaticFiles

from ..emulator import Emulator
from ..errors import (
    EmulatorError,
    InvalidPort,
    NoAliveServer,
    NoFeasiblePath,
    NoRoute,
    UnknownFlow,
    UnknownHost,
    UnknownNode,
    UnknownSwitch,
)
from ..dataplane import FlowAction, FlowMatch
from ..loadbalancer import Server, ServerPool
from ..traffic import FlowSpec, run_flows, run_ping
from .models import (
    FirewallRequest,
    FirewallResponse,
    LbConfigRequest,
    PingRequest,
    ScenarioRequest,
    StaticFlowRequest,
    StatusResponse,
)

NOT_FOUND_CODES = {
    UnknownHost.code,
    UnknownSwitch.code,
    UnknownNode.code,
    NoRoute.code,
    UnknownFlow.code,
}


class EventBus:
    """Fan-out of engine trace events to SSE subscribers."""

    def __init__(self):
        self.buffer: list[dict] = []
        self.subscribers: list[queue.Queue] = []
        self.lock = threading.Lock()

    def publish(self, event: dict):
        with self.lock:
            self.buffer.append(event)
            for q in self.subscribers:
                q.put(event)

    def subscribe(self) -> tuple[list[dict], queue.Queue]:
        q: queue.Queue = queue.Queue()
        with self.lock:
            replay = list(self.buffer)
            self.subscribers.append(q)
        return replay, q

    def unsubscribe(self, q: queue.Queue):
        with self.lock:
            if q in self.subscribers:
                self.subscribers.remove(q)


def create_app(emulator: Emulator | None = None) -> FastAPI:
    emu = emulator or Emulator()
    app = FastAPI(title="sdnemu", version="0.1.0")
    app.state.emulator = emu
    bus = EventBus()
    emu.engine.listeners.append(bus.publish)
    lock = threading.Lock()

    def error_response(exc: EmulatorError) -> JSONResponse:
        status = 404 if exc.code in NOT_FOUND_CODES else 400
        return JSONResponse(
            status_code=status, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(EmulatorError)
    async def on_emulator_error(_request: Request, exc: EmulatorError):
        return error_response(exc)

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400, content={"code": "BadRequest", "message": str(exc)}
        )

    @app.exception_handler(ValueError)
    async def on_value_error(_request: Request, exc: ValueError):
        return JSONResponse(
            status_code=400, content={"code": "BadRequest", "message": str(exc)}
        )

    # -- firewall -----------------------------------------------------

    @app.post("/api/v1/firewall", response_model=FirewallResponse)
    def set_firewall(body: FirewallRequest):
        with lock:
            statuses = emu.firewall.set_flow_permission(
                body.src_ip, body.dst_ip, body.allow
            )
            rule = emu.firewall.rules[(body.src_ip, body.dst_ip)]
        # statuses are all the literal "Entry pushed"
        return {"status": statuses[0], "entries": list(rule.entry_names)}

    @app.get("/api/v1/firewall")
    def list_firewall():
        with lock:
            rules = emu.firewall.list_permissions()
        return [
            {
                "src_ip": r.src_ip,
                "dst_ip": r.dst_ip,
                "allow": int(r.allow),
                "entries": r.entry_names,
            }
            for r in rules
        ]

    @app.delete("/api/v1/firewall")
    def clear_firewall(src_ip: str, dst_ip: str):
        with lock:
            result = emu.firewall.clear_permission(src_ip, dst_ip)
        if result == "not_found":
            return JSONResponse(
                status_code=404,
                content={"code": "NotFound", "message": "no such permission"},
            )
        return {"status": result}

    # -- static flows -------------------------------------------------

    @app.post("/api/v1/staticflow", response_model=StatusResponse)
    def push_staticflow(body: StaticFlowRequest):
        match = FlowMatch(
            src_ip=body.match.src_ip,
            dst_ip=body.match.dst_ip,
            src_port=body.match.src_port,
            dst_port=body.match.dst_port,
            protocol=body.match.protocol,
        )
        if body.action.type == "forward":
            if body.action.port is None:
                raise InvalidPort("forward action needs a port")
            action = FlowAction.forward(body.action.port)
        elif body.action.type == "drop":
            action = FlowAction.drop()
        elif body.action.type == "allow":
            action = FlowAction.allow()
        else:
            raise ValueError(f"unknown action {body.action.type!r}")
        with lock:
            status = emu.controller.push_static_flow(
                body.name, body.switch, match, action, body.priority
            )
        return {"status": status}

    @app.get("/api/v1/staticflow")
    def list_staticflows():
        with lock:
            return emu.controller.list_flows()

    @app.delete("/api/v1/staticflow/{name}")
    def delete_staticflow(name: str):
        with lock:
            result = emu.controller.delete_static_flow(name)
        if result == "not_found":
            return JSONResponse(
                status_code=404,
                content={"code": "NotFound", "message": f"no flow named {name!r}"},
            )
        return {"status": result}

    # -- topology and stats -------------------------------------------

    @app.get("/api/v1/topology")
    def get_topology():
        return emu.topology.to_dict()

    @app.get("/api/v1/stats/ports")
    def get_port_stats():
        with lock:
            snap = emu.stats.snapshot()
        return [
            {"port": port, **counters} for port, counters in snap.items()
        ]

    @app.get("/api/v1/stats/flows")
    def get_flow_stats():
        with lock:
            out = []
            for sw_name, sw in sorted(emu.engine.switches.items()):
                for entry in sw.entries.values():
                    out.append(
                        {
                            "switch": sw_name,
                            "name": entry.name,
                            "priority": entry.priority,
                            "packets": entry.packets,
                            "bytes": entry.bytes,
                            "first_matched": entry.first_matched,
                            "last_matched": entry.last_matched,
                        }
                    )
        return out

    # -- load balancer ------------------------------------------------

    @app.post("/api/v1/lb/config", response_model=StatusResponse)
    def set_lb_config(body: LbConfigRequest):
        pool = None
        if body.servers:
            if body.vip is None:
                raise ValueError("pool config needs a vip")
            pool = ServerPool(
                body.vip,
                [Server(s.host, s.address, s.weight) for s in body.servers],
            )
        with lock:
            emu.loadbalancer.configure(body.algorithm, pool, body.params)
            emu.engine.emit_event("lb-config", body.algorithm)
        return {"status": "ok"}

    # -- traffic ------------------------------------------------------

    @app.post("/api/v1/traffic/ping")
    def post_ping(body: PingRequest):
        with lock:
            report = run_ping(emu.engine, body.src, body.dst, body.count)
        return report.as_dict()

    @app.post("/api/v1/traffic/run-scenario")
    def post_scenario(body: ScenarioRequest):
        specs = [FlowSpec.from_dict(f.model_dump()) for f in body.flows]
        with lock:
            results = run_flows(emu.engine, emu.loadbalancer, specs)
        return [r.as_dict() for r in results]

    # -- event stream -------------------------------------------------

    @app.get("/api/v1/events")
    def get_events(replay: int = 0):
        def sse(name: str, payload: dict) -> str:
            return f"event: {name}\ndata: {json.dumps(payload)}\n\n"

        replay_events, q = bus.subscribe()

        def generate():
            try:
                yield sse("hello", {"topology_hash": emu.topology_hash()})
                for event in replay_events:
                    yield sse(event["event"], event)
                if replay:
                    return
                while True:
                    try:
                        event = q.get(timeout=15.0)
                    except queue.Empty:
                        yield ": keepalive\n\n"
                        continue
                    yield sse(event["event"], event)
            finally:
                bus.unsubscribe(q)

        return StreamingResponse(generate(), media_type="text/event-stream")

    # console bundle, when built
    dist = FsPath(__file__).resolve().parents[3] / "frontend" / "dist"
    if dist.is_dir():
        app.mount("/", StaticFiles(directory=dist, html=True), name="console")

    return app
