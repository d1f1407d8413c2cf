import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";
import { renderReportTable, reportRowCells } from "../src/reportView.js";
import type { ReportDoc } from "../src/types.js";

// produced by the server's eval command (report_document) and frozen here
const FIXTURE = JSON.parse(
  readFileSync(new URL("./fixtures/report.json", import.meta.url), "utf-8")
) as ReportDoc;

describe("report view", () => {
  it("renders the reference row character-identically to the server JSON", () => {
    const cells = reportRowCells(FIXTURE, "kg2data");
    expect(cells).toEqual(["0.00%", "1.43%", "2.86%", "0.00%", "88.57%"]);
    const html = renderReportTable(FIXTURE);
    for (const cell of cells) {
      expect(html).toContain(`<td class="pct">${cell}</td>`);
    }
    // cell text comes from the server verbatim; no client-side re-rounding
    const served = FIXTURE.reports[0]!.rates["FRNR"]!.pct;
    expect(html).toContain(served);
  });

  it("orders rows kg, rag, chat with significance rows beneath compared systems", () => {
    const html = renderReportTable(FIXTURE);
    const kg = html.indexOf('data-system="kg2data"');
    const rag = html.indexOf('data-system="rag2data"');
    const chat = html.indexOf('data-system="chat2data"');
    expect(kg).toBeGreaterThan(-1);
    expect(kg).toBeLessThan(rag);
    expect(rag).toBeLessThan(chat);
    const ragMarks = html.indexOf('class="marks" data-system="rag2data"');
    expect(ragMarks).toBeGreaterThan(rag);
    expect(ragMarks).toBeLessThan(chat);
    expect(html).toContain('<td class="mark">**</td>');
  });

  it("renders header columns in the fixed metric order", () => {
    const html = renderReportTable(FIXTURE);
    const headers = [...html.matchAll(/<th>(\w+)<\/th>/g)].map((m) => m[1]);
    expect(headers).toEqual(["FRIR", "FRNR", "FRPR", "FRHR", "ACAR"]);
  });

  it("reports without marks get no significance rows", () => {
    const solo: ReportDoc = { reports: [FIXTURE.reports[0]!], significance: {}, table: "" };
    const html = renderReportTable(solo);
    expect(html).not.toContain('class="marks"');
  });

  it("malformed documents produce an error panel", () => {
    expect(renderReportTable(null as unknown as ReportDoc)).toContain("banner error");
    expect(renderReportTable({} as ReportDoc)).toContain("banner error");
  });
});
