import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, type FetchLike } from "../src/api.js";

interface Recorded {
  url: string;
  init?: RequestInit;
}

function makeFetch(
  status: number,
  body: unknown,
  log: Recorded[]
): FetchLike {
  return (url, init) => {
    log.push({ url, init });
    return Promise.resolve(
      new Response(JSON.stringify(body), {
        status,
        headers: { "content-type": "application/json" },
      })
    );
  };
}

describe("ApiClient", () => {
  it("posts a firewall rule with the exact wire shape", async () => {
    const log: Recorded[] = [];
    const api = new ApiClient(
      "",
      makeFetch(200, { status: "Entry pushed", entries: ["a", "b", "c"] }, log)
    );
    const res = await api.setFirewall({
      src_ip: "10.0.0.1",
      dst_ip: "10.0.0.3",
      allow: 0,
    });
    expect(res.status).toBe("Entry pushed");
    expect(res.entries).toHaveLength(3);
    expect(log).toHaveLength(1);
    expect(log[0].url).toBe("/api/v1/firewall");
    expect(log[0].init?.method).toBe("POST");
    expect(JSON.parse(String(log[0].init?.body))).toEqual({
      src_ip: "10.0.0.1",
      dst_ip: "10.0.0.3",
      allow: 0,
    });
  });

  it("sends pings to the traffic endpoint", async () => {
    const log: Recorded[] = [];
    const report = {
      src: "h1",
      dst_ip: "10.0.0.3",
      transmitted: 4,
      received: 4,
      probes: [],
    };
    const api = new ApiClient("", makeFetch(200, report, log));
    await api.ping("h1", "10.0.0.3", 4);
    expect(log[0].url).toBe("/api/v1/traffic/ping");
    expect(JSON.parse(String(log[0].init?.body))).toEqual({
      src: "h1",
      dst: "10.0.0.3",
      count: 4,
    });
  });

  it("encodes firewall deletion as query parameters", async () => {
    const log: Recorded[] = [];
    const api = new ApiClient("", makeFetch(200, { status: "deleted" }, log));
    await api.clearFirewall("10.0.0.1", "10.0.0.3");
    expect(log[0].url).toBe(
      "/api/v1/firewall?src_ip=10.0.0.1&dst_ip=10.0.0.3"
    );
    expect(log[0].init?.method).toBe("DELETE");
  });

  it("prefixes the configured base URL", async () => {
    const log: Recorded[] = [];
    const api = new ApiClient(
      "http://127.0.0.1:9999",
      makeFetch(200, { nodes: [], links: [], host_addrs: {} }, log)
    );
    await api.getTopology();
    expect(log[0].url).toBe("http://127.0.0.1:9999/api/v1/topology");
  });

  it("raises ApiError carrying the server's error code", async () => {
    const api = new ApiClient(
      "",
      makeFetch(404, { code: "UnknownHost", message: "unknown host 'h9'" }, [])
    );
    await expect(api.ping("h9", "10.0.0.3", 1)).rejects.toMatchObject({
      name: "ApiError",
      status: 404,
      code: "UnknownHost",
    });
  });

  it("falls back to a generic code when the body is not structured", async () => {
    const api = new ApiClient("", makeFetch(500, { oops: true }, []));
    try {
      await api.getTopology();
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).code).toBe("Error");
    }
  });
});
