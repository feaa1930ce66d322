"""Request/response schemas for the REST control surface."""

from __future__ import annotations

from pydantic import BaseModel, Field


class FirewallRequest(BaseModel):
    src_ip: str
    dst_ip: str
    allow: int = Field(ge=0, le=1)


class FirewallResponse(BaseModel):
    status: str
    entries: list[str]


class MatchBody(BaseModel):
    src_ip: str | None = None
    dst_ip: str | None = None
    src_port: int | None = None
    dst_port: int | None = None
    protocol: str | None = None


class ActionBody(BaseModel):
    type: str  # "forward" | "drop" | "allow"
    port: int | None = None


class StaticFlowRequest(BaseModel):
    name: str
    switch: str
    match: MatchBody = MatchBody()
    action: ActionBody
    priority: int = Field(default=100, ge=0, le=65535)


class StatusResponse(BaseModel):
    status: str


class ServerBody(BaseModel):
    host: str
    address: str
    weight: int = Field(default=1, ge=1)


class LbConfigRequest(BaseModel):
    algorithm: str
    vip: str | None = None
    servers: list[ServerBody] = []
    params: dict = {}


class PingRequest(BaseModel):
    src: str
    dst: str
    count: int = Field(default=4, ge=1)


class FlowSpecBody(BaseModel):
    id: str
    src: str
    dst_ip: str
    protocol: str = "tcp"
    src_port: int = 0
    dst_port: int = 80
    rate_bps: float = Field(default=8000.0, gt=0)
    size_hint: int = Field(default=0, ge=0)
    start: float = 0.0
    duration: float = Field(default=1.0, gt=0)


class ScenarioRequest(BaseModel):
    flows: list[FlowSpecBody] = []


class ApiError(BaseModel):
    code: str
    message: str
