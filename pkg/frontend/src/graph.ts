// Pure layout and styling helpers for the topology view.  Everything here
// is data-in/data-out so it can be unit tested without a DOM.

import type { TopologyDoc, TraceEvent } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export const VIEW_WIDTH = 720;
export const VIEW_HEIGHT = 420;

function endpointNode(endpoint: string): string {
  return endpoint.slice(0, endpoint.lastIndexOf(":"));
}

/** Direction-independent identity for a link between two nodes. */
export function linkKey(a: string, b: string): string {
  return a < b ? `${a}|${b}` : `${b}|${a}`;
}

export function linkKeyOf(link: { a: string; b: string }): string {
  return linkKey(endpointNode(link.a), endpointNode(link.b));
}

/**
 * Hop distance of every node from the nearest host.  Hosts are 0, their
 * edge switches 1, and so on up the fabric; unreachable nodes get
 * Infinity.
 */
export function hostDistances(topo: TopologyDoc): Map<string, number> {
  const adj = new Map<string, string[]>();
  for (const node of topo.nodes) adj.set(node.name, []);
  for (const link of topo.links) {
    const a = endpointNode(link.a);
    const b = endpointNode(link.b);
    adj.get(a)?.push(b);
    adj.get(b)?.push(a);
  }
  const dist = new Map<string, number>();
  const queue: string[] = [];
  for (const node of topo.nodes) {
    if (node.kind === "host") {
      dist.set(node.name, 0);
      queue.push(node.name);
    } else {
      dist.set(node.name, Infinity);
    }
  }
  while (queue.length > 0) {
    const cur = queue.shift() as string;
    const d = dist.get(cur) as number;
    for (const next of adj.get(cur) ?? []) {
      if ((dist.get(next) ?? Infinity) > d + 1) {
        dist.set(next, d + 1);
        queue.push(next);
      }
    }
  }
  return dist;
}

/**
 * Layered coordinates: hosts along the bottom row, switches stacked by
 * their distance from the hosts, each layer spread evenly and sorted by
 * name so the drawing is stable.
 */
export function computePositions(topo: TopologyDoc): Map<string, Point> {
  const dist = hostDistances(topo);
  const finite = [...dist.values()].filter((d) => Number.isFinite(d));
  const layerCount = Math.max(...finite, 0) + 1;
  const layers: string[][] = Array.from({ length: layerCount }, () => []);
  for (const node of topo.nodes) {
    const d = dist.get(node.name) ?? Infinity;
    const layer = Number.isFinite(d) ? d : 0;
    layers[layer].push(node.name);
  }
  const positions = new Map<string, Point>();
  const rowGap = VIEW_HEIGHT / (layerCount + 1);
  layers.forEach((names, layer) => {
    names.sort();
    const colGap = VIEW_WIDTH / (names.length + 1);
    names.forEach((name, i) => {
      positions.set(name, {
        x: colGap * (i + 1),
        y: VIEW_HEIGHT - rowGap * (layer + 1),
      });
    });
  });
  return positions;
}

/** Transmit rate as a fraction of link capacity, clamped to [0, 1]. */
export function linkUtilization(bps: number, capacityBps: number): number {
  if (capacityBps <= 0) return 0;
  return Math.min(Math.max(bps / capacityBps, 0), 1);
}

/** Idle links grey; then green, orange, red as utilization climbs. */
export function linkColor(bps: number, capacityBps: number): string {
  if (bps <= 0) return "#8a8f98";
  const u = linkUtilization(bps, capacityBps);
  if (u < 0.3) return "#2e9e44";
  if (u < 0.7) return "#d9822b";
  return "#d13438";
}

/**
 * Link keys touched by `forward` events in a trace, in observed order.
 * Each forward event names the switch (`where`) and its egress port in
 * the detail, so consecutive forwards between switches identify the
 * inter-switch links a packet actually took.
 */
export function linksFromTrace(
  events: TraceEvent[],
  topo: TopologyDoc
): string[] {
  const portToFar = new Map<string, string>();
  for (const link of topo.links) {
    portToFar.set(link.a, endpointNode(link.b));
    portToFar.set(link.b, endpointNode(link.a));
  }
  const seen: string[] = [];
  for (const ev of events) {
    if (ev.event !== "forward") continue;
    const m = /port=(\d+)/.exec(ev.detail);
    if (!m) continue;
    const far = portToFar.get(`${ev.where}:${m[1]}`);
    if (far === undefined) continue;
    const key = linkKey(ev.where, far);
    if (!seen.includes(key)) seen.push(key);
  }
  return seen;
}

/** Switch names visited by forward events, deduplicated, in order. */
export function switchesFromTrace(events: TraceEvent[]): string[] {
  const out: string[] = [];
  for (const ev of events) {
    if (ev.event === "forward" && !out.includes(ev.where)) out.push(ev.where);
  }
  return out;
}
