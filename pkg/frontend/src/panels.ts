// Control panels: firewall toggles, ping runner, load-balancer config,
// scenario runner.  Request construction is kept in pure functions so
// the wiring code stays trivial.

import type { FirewallRequest, LbConfigRequest, ServerConfig } from "./types.js";
import type { ApiClient, FlowSpecInput } from "./api.js";
import { ApiError } from "./api.js";
import { formatFlowResult, formatPingReport } from "./format.js";

export function buildFirewallRequest(
  srcIp: string,
  dstIp: string,
  allow: boolean
): FirewallRequest {
  return { src_ip: srcIp.trim(), dst_ip: dstIp.trim(), allow: allow ? 1 : 0 };
}

export function parseServerLines(text: string): ServerConfig[] {
  // one server per line: "host address [weight]"
  const out: ServerConfig[] = [];
  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (line === "") continue;
    const parts = line.split(/\s+/);
    if (parts.length < 2) throw new Error(`bad server line: ${line}`);
    const weight = parts.length > 2 ? Number(parts[2]) : 1;
    if (!Number.isFinite(weight) || weight <= 0) {
      throw new Error(`bad weight in: ${line}`);
    }
    out.push({ host: parts[0], address: parts[1], weight });
  }
  return out;
}

export function buildLbConfig(
  algorithm: string,
  vip: string,
  serverText: string
): LbConfigRequest {
  const servers = parseServerLines(serverText);
  const body: LbConfigRequest = { algorithm };
  if (servers.length > 0) {
    body.vip = vip.trim();
    body.servers = servers;
  }
  return body;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  return String(err);
}

export function mountFirewallPanel(
  root: HTMLElement,
  api: ApiClient,
  onChanged: () => void
): void {
  const src = el("input", { placeholder: "src ip", value: "10.0.0.1" });
  const dst = el("input", { placeholder: "dst ip", value: "10.0.0.3" });
  const deny = el("button", {}, "Deny");
  const allow = el("button", {}, "Allow");
  const status = el("pre", { class: "status" });
  const rules = el("ul", { class: "rules" });

  async function refresh() {
    rules.replaceChildren();
    for (const rule of await api.listFirewall()) {
      rules.append(
        el(
          "li",
          {},
          `${rule.src_ip} -> ${rule.dst_ip}: ${rule.allow ? "allow" : "deny"}`
        )
      );
    }
  }

  async function submit(allowFlag: boolean) {
    try {
      const res = await api.setFirewall(
        buildFirewallRequest(src.value, dst.value, allowFlag)
      );
      status.textContent = `${res.status} (${res.entries.length} entries)`;
      await refresh();
      onChanged();
    } catch (err) {
      status.textContent = describeError(err);
    }
  }

  deny.addEventListener("click", () => void submit(false));
  allow.addEventListener("click", () => void submit(true));
  root.append(el("h2", {}, "Firewall"), src, dst, deny, allow, status, rules);
  void refresh();
}

export function mountPingPanel(root: HTMLElement, api: ApiClient): void {
  const src = el("input", { placeholder: "src host", value: "h1" });
  const dst = el("input", { placeholder: "dst host or ip", value: "10.0.0.3" });
  const count = el("input", { type: "number", value: "4", min: "1" });
  const run = el("button", {}, "Ping");
  const out = el("pre", { class: "transcript" });

  run.addEventListener("click", () => {
    void (async () => {
      try {
        const report = await api.ping(src.value, dst.value, Number(count.value));
        out.textContent = formatPingReport(report).join("\n");
      } catch (err) {
        out.textContent = describeError(err);
      }
    })();
  });
  root.append(el("h2", {}, "Ping"), src, dst, count, run, out);
}

export const ALGORITHMS = [
  "static_rules",
  "round_robin",
  "weighted_round_robin",
  "random",
  "hash",
  "global_first_fit",
  "flow_based",
  "least_rate_path",
];

export function mountLbPanel(root: HTMLElement, api: ApiClient): void {
  const algo = el("select");
  for (const name of ALGORITHMS) algo.append(el("option", { value: name }, name));
  const vip = el("input", { placeholder: "vip", value: "10.0.0.100" });
  const servers = el("textarea", {
    rows: "4",
    placeholder: "host address [weight], one per line",
  });
  servers.value = "h3 10.0.0.3\nh4 10.0.0.4";
  const apply = el("button", {}, "Apply");
  const status = el("pre", { class: "status" });

  apply.addEventListener("click", () => {
    void (async () => {
      try {
        const res = await api.setLbConfig(
          buildLbConfig(algo.value, vip.value, servers.value)
        );
        status.textContent = res.status;
      } catch (err) {
        status.textContent = describeError(err);
      }
    })();
  });
  root.append(el("h2", {}, "Load balancer"), algo, vip, servers, apply, status);
}

export function mountScenarioPanel(root: HTMLElement, api: ApiClient): void {
  const spec = el("textarea", { rows: "8", placeholder: "flow specs (JSON array)" });
  spec.value = JSON.stringify(
    [
      {
        id: "f1",
        src: "h1",
        dst_ip: "10.0.0.100",
        src_port: 10001,
        rate_bps: 8000,
        duration: 0.5,
        start: 0.0,
      },
    ],
    null,
    2
  );
  const run = el("button", {}, "Run scenario");
  const out = el("pre", { class: "transcript" });

  run.addEventListener("click", () => {
    void (async () => {
      try {
        const flows = JSON.parse(spec.value) as FlowSpecInput[];
        const results = await api.runScenario(flows);
        out.textContent = results.map(formatFlowResult).join("\n");
      } catch (err) {
        out.textContent = describeError(err);
      }
    })();
  });
  root.append(el("h2", {}, "Traffic scenario"), spec, run, out);
}
