// Integration test against a real server process: the console's client
// drives the firewall workflow end to end and checks that the event
// stream describes the same path the packets took.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { linkKey, linksFromTrace, switchesFromTrace } from "../src/graph.js";
import type { TopologyDoc, TraceEvent } from "../src/types.js";

const PORT = 8765 + (process.pid % 1000);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let api: ApiClient;
let topo: TopologyDoc;

async function waitForServer(timeoutMs = 20_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${BASE}/api/v1/topology`);
      if (res.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error("server did not come up");
}

function parseSse(text: string): TraceEvent[] {
  const events: TraceEvent[] = [];
  for (const block of text.split("\n\n")) {
    let name = "";
    let data = "";
    for (const line of block.split("\n")) {
      if (line.startsWith("event: ")) name = line.slice(7);
      if (line.startsWith("data: ")) data = line.slice(6);
    }
    if (name && name !== "hello" && data) {
      events.push(JSON.parse(data) as TraceEvent);
    }
  }
  return events;
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "sdnemu.server", "--listen", `127.0.0.1:${PORT}`],
    { stdio: "ignore" }
  );
  await waitForServer();
  api = new ApiClient(BASE);
  topo = await api.getTopology();
}, 30_000);

afterAll(() => {
  server?.kill();
});

describe("live server", () => {
  it("serves the reference topology", () => {
    const hosts = topo.nodes.filter((n) => n.kind === "host");
    const switches = topo.nodes.filter((n) => n.kind === "switch");
    expect(hosts).toHaveLength(4);
    expect(switches).toHaveLength(5);
    expect(topo.links).toHaveLength(10);
    expect(topo.host_addrs.h1).toBe("10.0.0.1");
  });

  it("runs the firewall workflow: full reach, full block, restored", async () => {
    const before = await api.ping("h1", "10.0.0.3", 17);
    expect(before.received).toBe(17);

    const deny = await api.setFirewall({
      src_ip: "10.0.0.1",
      dst_ip: "10.0.0.3",
      allow: 0,
    });
    expect(deny.status).toBe("Entry pushed");
    expect(deny.entries.length).toBeGreaterThan(0);

    const blocked = await api.ping("h1", "10.0.0.3", 17);
    expect(blocked.received).toBe(0);

    const restore = await api.setFirewall({
      src_ip: "10.0.0.1",
      dst_ip: "10.0.0.3",
      allow: 1,
    });
    expect(restore.status).toBe("Entry pushed");

    const after = await api.ping("h1", "10.0.0.3", 17);
    expect(after.received).toBe(17);
  }, 20_000);

  it("rejects a ping to an unknown destination with a structured error", async () => {
    await expect(api.ping("h1", "10.0.0.99", 1)).rejects.toMatchObject({
      status: 404,
      code: "UnknownHost",
    });
  });

  it("streams trace events that recolor exactly the links the packet used", async () => {
    const res = await fetch(`${BASE}/api/v1/events?replay=1`);
    const events = parseSse(await res.text());
    expect(events.length).toBeGreaterThan(0);

    // Every link the console would highlight must exist in the topology.
    const knownKeys = new Set(
      topo.links.map((l) => {
        const node = (e: string) => e.slice(0, e.lastIndexOf(":"));
        return linkKey(node(l.a), node(l.b));
      })
    );
    const used = linksFromTrace(events, topo);
    expect(used.length).toBeGreaterThan(0);
    for (const key of used) expect(knownKeys.has(key)).toBe(true);

    // h1 -> h3 default route: edge s4, one aggregation switch, edge s5.
    const visited = switchesFromTrace(
      events.filter((e) => e.event === "forward")
    );
    expect(visited[0]).toBe("s4");
    expect(visited).toContain("s5");
    expect(used).toContain(linkKey("h3", "s5"));
    expect(used).toContain(linkKey("h1", "s4"));
  }, 20_000);
});
