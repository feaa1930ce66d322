// Thin wrapper over EventSource: one callback for every trace event the
// server publishes, with automatic reconnection handled by the browser.

import type { TraceEvent } from "./types.js";

export const EVENT_NAMES = [
  "inject",
  "forward",
  "deliver",
  "allow",
  "drop",
  "drop-no-rule",
  "packet-in",
  "loop-killed",
  "rules-changed",
  "lb-assigned",
  "lb-config",
] as const;

export interface StreamHandle {
  close(): void;
}

export function openEventStream(
  url: string,
  onEvent: (ev: TraceEvent) => void,
  onHello?: (topologyHash: string) => void
): StreamHandle {
  const source = new EventSource(url);
  source.addEventListener("hello", (ev) => {
    const payload = JSON.parse((ev as MessageEvent).data);
    onHello?.(String(payload.topology_hash));
  });
  for (const name of EVENT_NAMES) {
    source.addEventListener(name, (ev) => {
      onEvent(JSON.parse((ev as MessageEvent).data) as TraceEvent);
    });
  }
  return { close: () => source.close() };
}
