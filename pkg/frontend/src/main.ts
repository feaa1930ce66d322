// Console entry point: fetch the topology, draw it, open the live event
// stream, and mount the control panels.

import { ApiClient } from "./api.js";
import { linksFromTrace } from "./graph.js";
import {
  mountFirewallPanel,
  mountLbPanel,
  mountPingPanel,
  mountScenarioPanel,
} from "./panels.js";
import { openEventStream } from "./sse.js";
import type { TraceEvent } from "./types.js";
import { ratesFromSnapshots, renderGraph } from "./view.js";

const POLL_INTERVAL_MS = 2000;
const RECENT_WINDOW = 200;

async function boot() {
  const api = new ApiClient();
  const topo = await api.getTopology();

  const graphRoot = document.getElementById("graph") as HTMLElement;
  const view = renderGraph(graphRoot, topo);
  const log = document.getElementById("event-log") as HTMLElement;

  const recent: TraceEvent[] = [];
  openEventStream("/api/v1/events", (ev) => {
    recent.push(ev);
    if (recent.length > RECENT_WINDOW) recent.shift();
    const line = document.createElement("div");
    line.textContent = `${ev.time.toFixed(6)}  ${ev.event}  ${ev.where}  ${ev.detail}`;
    log.prepend(line);
    while (log.childElementCount > 50) log.lastElementChild?.remove();
    view.highlight(linksFromTrace(recent.slice(-20), topo));
  });

  let last = await api.getPortStats();
  setInterval(() => {
    void (async () => {
      const next = await api.getPortStats();
      view.updateRates(
        ratesFromSnapshots(topo, last, next, POLL_INTERVAL_MS / 1000)
      );
      last = next;
    })();
  }, POLL_INTERVAL_MS);

  const refreshHighlights = () => view.highlight([]);
  mountFirewallPanel(
    document.getElementById("firewall-panel") as HTMLElement,
    api,
    refreshHighlights
  );
  mountPingPanel(document.getElementById("ping-panel") as HTMLElement, api);
  mountLbPanel(document.getElementById("lb-panel") as HTMLElement, api);
  mountScenarioPanel(
    document.getElementById("scenario-panel") as HTMLElement,
    api
  );
}

void boot();
