import type { TopologyDoc } from "../src/types.js";

// Mirrors the emulator's built-in reference topology: four hosts on two
// edge switches, two aggregation switches, one core switch.
export const REFERENCE_TOPOLOGY: TopologyDoc = {
  nodes: [
    { name: "h1", kind: "host" },
    { name: "h2", kind: "host" },
    { name: "h3", kind: "host" },
    { name: "h4", kind: "host" },
    { name: "s1", kind: "switch" },
    { name: "s2", kind: "switch" },
    { name: "s3", kind: "switch" },
    { name: "s4", kind: "switch" },
    { name: "s5", kind: "switch" },
  ],
  links: [
    { a: "h1:1", b: "s4:1", capacity_bps: 10_000_000, latency_s: 2e-5 },
    { a: "h2:1", b: "s4:2", capacity_bps: 10_000_000, latency_s: 2e-5 },
    { a: "h3:1", b: "s5:1", capacity_bps: 10_000_000, latency_s: 2e-5 },
    { a: "h4:1", b: "s5:2", capacity_bps: 10_000_000, latency_s: 2e-5 },
    { a: "s1:1", b: "s2:1", capacity_bps: 10_000_000, latency_s: 2e-5 },
    { a: "s1:2", b: "s3:1", capacity_bps: 10_000_000, latency_s: 2e-5 },
    { a: "s2:2", b: "s4:3", capacity_bps: 10_000_000, latency_s: 2e-5 },
    { a: "s2:3", b: "s5:3", capacity_bps: 10_000_000, latency_s: 2e-5 },
    { a: "s3:2", b: "s4:4", capacity_bps: 10_000_000, latency_s: 2e-5 },
    { a: "s3:3", b: "s5:4", capacity_bps: 10_000_000, latency_s: 2e-5 },
  ],
  host_addrs: {
    h1: "10.0.0.1",
    h2: "10.0.0.2",
    h3: "10.0.0.3",
    h4: "10.0.0.4",
  },
};
