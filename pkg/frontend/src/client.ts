import type { ReportDoc } from "./types.js";

export class AgentBusyError extends Error {}
export class ValidationError extends Error {}

async function asJson(response: Response): Promise<Record<string, unknown>> {
  return (await response.json()) as Record<string, unknown>;
}

export async function createSession(
  baseUrl: string,
  memoryKind: "kg" | "vector" | "null",
  fetchImpl: typeof fetch = fetch
): Promise<string> {
  const response = await fetchImpl(`${baseUrl}/v1/sessions`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ memory_kind: memoryKind }),
  });
  if (!response.ok) throw new Error(`session creation failed: HTTP ${response.status}`);
  return String((await asJson(response))["id"]);
}

/** Post one user query. Empty input is blocked client-side; 409 maps to
 *  AgentBusyError and 400 to ValidationError so the UI can show notices. */
export async function submitQuery(
  baseUrl: string,
  sessionId: string,
  text: string,
  fetchImpl: typeof fetch = fetch
): Promise<string> {
  if (!text.trim()) throw new ValidationError("query must not be empty");
  const response = await fetchImpl(`${baseUrl}/v1/sessions/${encodeURIComponent(sessionId)}/messages`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ text }),
  });
  if (response.status === 409) throw new AgentBusyError("agent busy");
  if (response.status === 400) throw new ValidationError("query rejected");
  if (!response.ok) throw new Error(`message failed: HTTP ${response.status}`);
  return String((await asJson(response))["trace_id"]);
}

export async function fetchLatestReport(
  baseUrl: string,
  fetchImpl: typeof fetch = fetch
): Promise<ReportDoc | null> {
  const response = await fetchImpl(`${baseUrl}/v1/reports/latest`);
  if (response.status === 404) return null;
  if (!response.ok) throw new Error(`report fetch failed: HTTP ${response.status}`);
  return (await response.json()) as ReportDoc;
}

export async function fetchKnownTools(
  baseUrl: string,
  apiBaseUrl: string | null,
  fetchImpl: typeof fetch = fetch
): Promise<Set<string>> {
  // tool names equal the API names; the catalog server publishes them
  if (!apiBaseUrl) return new Set();
  const response = await fetchImpl(`${apiBaseUrl}/apis`);
  if (!response.ok) return new Set();
  const doc = (await response.json()) as { apis: { name: string }[] };
  return new Set(doc.apis.map((a) => a.name));
}
