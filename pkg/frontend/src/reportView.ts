import { METRIC_ORDER, SYSTEM_LABELS } from "./types.js";
import type { ReportDoc } from "./types.js";
import { escapeHtml } from "./traceView.js";

/** Table-style report view. Percentage cells reuse the server's renderings
 *  character-for-character; nothing is re-rounded client-side. */
export function renderReportTable(doc: ReportDoc): string {
  if (!doc || !Array.isArray(doc.reports)) {
    return `<div class="banner error">malformed report document</div>`;
  }
  const rows: string[] = [];
  rows.push(
    `<tr><th></th>${METRIC_ORDER.map((m) => `<th>${m}</th>`).join("")}</tr>`
  );
  for (const report of doc.reports) {
    const label = SYSTEM_LABELS[report.system] ?? report.system;
    const cells = METRIC_ORDER.map((metric) => {
      const rate = report.rates?.[metric];
      if (!rate || typeof rate.pct !== "string") {
        return `<td class="missing">–</td>`;
      }
      return `<td class="pct">${escapeHtml(rate.pct)}</td>`;
    });
    rows.push(`<tr class="system" data-system="${escapeHtml(report.system)}"><td>${escapeHtml(label)}</td>${cells.join("")}</tr>`);
    const marks = doc.significance?.[report.system];
    if (marks && marks.length > 0) {
      const byMetric = new Map(marks.map((m) => [m.metric, m.mark]));
      const markCells = METRIC_ORDER.map(
        (metric) => `<td class="mark">${escapeHtml(byMetric.get(metric) ?? "")}</td>`
      );
      rows.push(`<tr class="marks" data-system="${escapeHtml(report.system)}"><td></td>${markCells.join("")}</tr>`);
    }
  }
  return `<table class="report">${rows.join("")}</table>`;
}

/** The five percentage cells of one system's row, in column order. */
export function reportRowCells(doc: ReportDoc, system: string): string[] {
  const entry = doc.reports.find((r) => r.system === system);
  if (!entry) return [];
  return METRIC_ORDER.map((metric) => entry.rates[metric]?.pct ?? "");
}
