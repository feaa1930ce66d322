// Typed client for the emulator's REST API.  The fetch implementation is
// injected so tests can run without a server.

import type {
  FirewallRequest,
  FirewallResponse,
  FirewallRule,
  LbConfigRequest,
  PingReport,
  PortStatsRow,
  TopologyDoc,
} from "./types.js";

export type FetchLike = (
  url: string,
  init?: RequestInit
) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface FlowSpecInput {
  id: string;
  src: string;
  dst_ip: string;
  src_port?: number;
  dst_port?: number;
  protocol?: string;
  rate_bps?: number;
  duration?: number;
  start?: number;
  size_hint?: number;
}

export interface FlowResultRow {
  id: string;
  assignment: Record<string, unknown>;
  delivered_bytes: number;
}

export class ApiClient {
  constructor(
    private base: string = "",
    private fetchImpl: FetchLike = (url, init) => fetch(url, init)
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown
  ): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const res = await this.fetchImpl(this.base + path, init);
    const payload = await res.json();
    if (!res.ok) {
      throw new ApiError(
        res.status,
        String(payload.code ?? "Error"),
        String(payload.message ?? res.statusText)
      );
    }
    return payload as T;
  }

  getTopology(): Promise<TopologyDoc> {
    return this.request("GET", "/api/v1/topology");
  }

  setFirewall(body: FirewallRequest): Promise<FirewallResponse> {
    return this.request("POST", "/api/v1/firewall", body);
  }

  listFirewall(): Promise<FirewallRule[]> {
    return this.request("GET", "/api/v1/firewall");
  }

  clearFirewall(srcIp: string, dstIp: string): Promise<{ status: string }> {
    const q = `src_ip=${encodeURIComponent(srcIp)}&dst_ip=${encodeURIComponent(dstIp)}`;
    return this.request("DELETE", `/api/v1/firewall?${q}`);
  }

  ping(src: string, dst: string, count: number): Promise<PingReport> {
    return this.request("POST", "/api/v1/traffic/ping", { src, dst, count });
  }

  setLbConfig(body: LbConfigRequest): Promise<{ status: string }> {
    return this.request("POST", "/api/v1/lb/config", body);
  }

  runScenario(flows: FlowSpecInput[]): Promise<FlowResultRow[]> {
    return this.request("POST", "/api/v1/traffic/run-scenario", { flows });
  }

  getPortStats(): Promise<PortStatsRow[]> {
    return this.request("GET", "/api/v1/stats/ports");
  }
}
