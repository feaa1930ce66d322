// Wire types for the emulator's REST API.

export interface TopologyNode {
  name: string;
  kind: "host" | "switch";
}

export interface TopologyLink {
  a: string; // "name:port"
  b: string;
  capacity_bps: number;
  latency_s: number;
}

export interface TopologyDoc {
  nodes: TopologyNode[];
  links: TopologyLink[];
  host_addrs: Record<string, string>;
}

export interface FirewallRequest {
  src_ip: string;
  dst_ip: string;
  allow: 0 | 1;
}

export interface FirewallResponse {
  status: string;
  entries: string[];
}

export interface FirewallRule {
  src_ip: string;
  dst_ip: string;
  allow: number;
  entries: string[];
}

export interface PingProbe {
  seq: number;
  replied: boolean;
  rtt_s: number | null;
}

export interface PingReport {
  src: string;
  dst_ip: string;
  transmitted: number;
  received: number;
  probes: PingProbe[];
}

export interface ServerConfig {
  host: string;
  address: string;
  weight: number;
}

export interface LbConfigRequest {
  algorithm: string;
  vip?: string;
  servers?: ServerConfig[];
  params?: Record<string, unknown>;
}

export interface PortStatsRow {
  port: string; // "switch:port"
  tx_packets: number;
  tx_bytes: number;
  rx_packets: number;
  rx_bytes: number;
}

export interface TraceEvent {
  time: number;
  event: string;
  where: string;
  detail: string;
}
