// SVG rendering of the topology graph.  Geometry and colors come from
// graph.ts; this module only touches the DOM.

import type { PortStatsRow, TopologyDoc } from "./types.js";
import {
  computePositions,
  linkColor,
  linkKeyOf,
  VIEW_HEIGHT,
  VIEW_WIDTH,
} from "./graph.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface GraphView {
  /** Recolor links from fresh per-port counters and a rate estimate. */
  updateRates(rates: Map<string, number>): void;
  /** Highlight a set of link keys (e.g. a traced packet path). */
  highlight(keys: string[]): void;
}

/**
 * Per-link transmit rate estimate from two port-stats snapshots taken
 * `dt` seconds apart: bits moved on either end port divided by dt.
 */
export function ratesFromSnapshots(
  topo: TopologyDoc,
  before: PortStatsRow[],
  after: PortStatsRow[],
  dt: number
): Map<string, number> {
  const prev = new Map(before.map((r) => [r.port, r.tx_bytes]));
  const moved = new Map<string, number>();
  for (const row of after) {
    moved.set(row.port, row.tx_bytes - (prev.get(row.port) ?? 0));
  }
  const rates = new Map<string, number>();
  for (const link of topo.links) {
    const bytes = (moved.get(link.a) ?? 0) + (moved.get(link.b) ?? 0);
    rates.set(linkKeyOf(link), dt > 0 ? (bytes * 8) / dt : 0);
  }
  return rates;
}

export function renderGraph(root: HTMLElement, topo: TopologyDoc): GraphView {
  const positions = computePositions(topo);
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${VIEW_WIDTH} ${VIEW_HEIGHT}`);
  svg.setAttribute("class", "topology");

  const linkLines = new Map<string, SVGLineElement>();
  for (const link of topo.links) {
    const key = linkKeyOf(link);
    const [a, b] = key.split("|");
    const pa = positions.get(a);
    const pb = positions.get(b);
    if (!pa || !pb) continue;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(pa.x));
    line.setAttribute("y1", String(pa.y));
    line.setAttribute("x2", String(pb.x));
    line.setAttribute("y2", String(pb.y));
    line.setAttribute("stroke", linkColor(0, link.capacity_bps));
    line.setAttribute("stroke-width", "2");
    line.dataset.capacity = String(link.capacity_bps);
    svg.append(line);
    linkLines.set(key, line);
  }

  for (const node of topo.nodes) {
    const p = positions.get(node.name);
    if (!p) continue;
    const group = document.createElementNS(SVG_NS, "g");
    const shape = document.createElementNS(SVG_NS, "circle");
    shape.setAttribute("cx", String(p.x));
    shape.setAttribute("cy", String(p.y));
    shape.setAttribute("r", node.kind === "switch" ? "16" : "12");
    shape.setAttribute("class", `node ${node.kind}`);
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(p.x));
    label.setAttribute("y", String(p.y + 4));
    label.setAttribute("text-anchor", "middle");
    label.textContent = node.name;
    group.append(shape, label);
    svg.append(group);
  }
  root.append(svg);

  return {
    updateRates(rates) {
      for (const [key, line] of linkLines) {
        const bps = rates.get(key) ?? 0;
        const capacity = Number(line.dataset.capacity);
        line.setAttribute("stroke", linkColor(bps, capacity));
        line.setAttribute("stroke-width", bps > 0 ? "4" : "2");
      }
    },
    highlight(keys) {
      const wanted = new Set(keys);
      for (const [key, line] of linkLines) {
        line.classList.toggle("highlight", wanted.has(key));
      }
    },
  };
}
