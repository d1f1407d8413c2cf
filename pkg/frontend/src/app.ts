import { AgentBusyError, ValidationError, createSession, fetchKnownTools, fetchLatestReport, submitQuery } from "./client.js";
import { renderReportTable } from "./reportView.js";
import { applyEvent, initialTraceView, renderCards } from "./traceView.js";
import { streamEvents } from "./stream.js";
import type { TraceViewState } from "./types.js";

const SERVICE_URL = (window as unknown as { KG2DATA_SERVICE_URL?: string }).KG2DATA_SERVICE_URL ?? "";
const APIS_URL = (window as unknown as { KG2DATA_APIS_URL?: string }).KG2DATA_APIS_URL ?? null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function main(): Promise<void> {
  const kindSelect = el<HTMLSelectElement>("memory-kind");
  const startButton = el<HTMLButtonElement>("start-session");
  const queryInput = el<HTMLInputElement>("query");
  const sendButton = el<HTMLButtonElement>("send");
  const cardsBox = el<HTMLDivElement>("cards");
  const notice = el<HTMLDivElement>("notice");
  const badge = el<HTMLSpanElement>("session-badge");
  const reportBox = el<HTMLDivElement>("report");

  let sessionId: string | null = null;
  let knownTools = new Set<string>();
  let state: TraceViewState = initialTraceView();

  const redraw = () => {
    cardsBox.innerHTML = renderCards(state, knownTools);
    if (state.answer !== null) {
      notice.textContent = `final answer: ${state.answer}`;
    }
  };

  startButton.addEventListener("click", async () => {
    const kind = kindSelect.value as "kg" | "vector" | "null";
    sessionId = await createSession(SERVICE_URL, kind);
    knownTools = await fetchKnownTools(SERVICE_URL, APIS_URL);
    badge.textContent = `${kind} session ${sessionId}`;
    state = initialTraceView();
    notice.textContent = "";
    redraw();
  });

  sendButton.addEventListener("click", async () => {
    if (!sessionId) {
      notice.textContent = "create a session first";
      return;
    }
    const text = queryInput.value;
    if (!text.trim()) {
      notice.textContent = "type a question first";
      return;
    }
    sendButton.disabled = true;
    queryInput.disabled = true;
    state = initialTraceView();
    notice.textContent = "";
    try {
      const traceId = await submitQuery(SERVICE_URL, sessionId, text);
      await streamEvents(SERVICE_URL, sessionId, {
        traceId,
        onEvent: (event) => {
          state = applyEvent(state, event);
          redraw();
        },
        onSessionGone: () => {
          notice.textContent = "session is gone; start a new one";
        },
      });
    } catch (err) {
      if (err instanceof AgentBusyError) {
        notice.textContent = "agent busy: one query at a time";
      } else if (err instanceof ValidationError) {
        notice.textContent = "query rejected by the server";
      } else {
        notice.textContent = `stream error: ${String(err)}`;
      }
    } finally {
      sendButton.disabled = false;
      queryInput.disabled = false;
    }
  });

  el<HTMLButtonElement>("load-report").addEventListener("click", async () => {
    const doc = await fetchLatestReport(SERVICE_URL);
    reportBox.innerHTML = doc
      ? renderReportTable(doc)
      : `<div class="banner">no report yet; run the eval command first</div>`;
  });
}

main().catch((err) => console.error(err));
