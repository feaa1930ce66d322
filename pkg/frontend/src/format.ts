// Text shaping for the console panels: ping transcripts, stats tables,
// scenario assignment summaries.  Pure string functions.

import type { PingReport, PortStatsRow } from "./types.js";
import type { FlowResultRow } from "./api.js";

/** Classic ping-style transcript for a ping report. */
export function formatPingReport(report: PingReport): string[] {
  const lines = [
    `PING ${report.dst_ip} (${report.dst_ip}) 56(84) bytes of data.`,
  ];
  for (const probe of report.probes) {
    if (probe.replied && probe.rtt_s !== null) {
      const ms = (probe.rtt_s * 1000).toFixed(3);
      lines.push(
        `64 bytes from ${report.dst_ip}: icmp_seq=${probe.seq} ttl=64 time=${ms} ms`
      );
    }
  }
  const loss =
    report.transmitted === 0
      ? 0
      : Math.round(
          (100 * (report.transmitted - report.received)) / report.transmitted
        );
  lines.push(`--- ${report.dst_ip} ping statistics ---`);
  lines.push(
    `${report.transmitted} packets transmitted, ${report.received} received, ${loss}% packet loss`
  );
  return lines;
}

export function formatRate(bps: number): string {
  if (bps >= 1_000_000) return `${(bps / 1_000_000).toFixed(2)} Mbit/s`;
  if (bps >= 1_000) return `${(bps / 1_000).toFixed(1)} kbit/s`;
  return `${Math.round(bps)} bit/s`;
}

export function formatPortRow(row: PortStatsRow): string {
  return (
    `${row.port}  tx ${row.tx_packets} pkts / ${row.tx_bytes} B` +
    `  rx ${row.rx_packets} pkts / ${row.rx_bytes} B`
  );
}

export function formatFlowResult(row: FlowResultRow): string {
  const a = row.assignment;
  let assigned: string;
  if (typeof a.server === "string") assigned = `server=${a.server}`;
  else if (Array.isArray(a.path)) assigned = `path=${a.path.join("-")}`;
  else if (typeof a.error === "string") assigned = `error=${a.error}`;
  else assigned = "unassigned";
  return `${row.id}  ${assigned}  delivered=${row.delivered_bytes} B`;
}
