import type { Card, TraceEvent, TraceViewState } from "./types.js";

export function initialTraceView(): TraceViewState {
  return { cards: [], lastSeq: 0, done: false, status: null, answer: null, errorBanner: null };
}

function cardText(event: TraceEvent): string {
  const payload = event.step.payload;
  switch (event.step.kind) {
    case "thought":
      return String(payload["text"] ?? "");
    case "action":
      return String(payload["tool_name"] ?? "");
    case "action_input":
      return String(payload["params_text"] ?? "");
    case "observation":
      return String(payload["text"] ?? "");
    case "final_answer":
      return String(payload["text"] ?? "");
    default:
      return "";
  }
}

/** Pure reducer: identical event sequences always produce identical states.
 *  Duplicate or stale seqs (replays after reconnect) are ignored. */
export function applyEvent(state: TraceViewState, event: TraceEvent): TraceViewState {
  if (event.seq <= state.lastSeq) return state;
  const next: TraceViewState = { ...state, cards: [...state.cards], lastSeq: event.seq };
  const kind = event.step.kind;
  if (kind === "final") {
    next.done = true;
    next.status = String(event.step.payload["status"] ?? "completed");
    next.answer = String(event.step.payload["answer"] ?? "");
    return next;
  }
  if (kind === "error") {
    next.done = true;
    next.status = String(event.step.payload["status"] ?? "error");
    next.errorBanner = `episode ended with status ${next.status}`;
    return next;
  }
  const card: Card = {
    seq: event.seq,
    kind,
    text: cardText(event),
    durationMs: event.duration_ms,
  };
  if (kind === "action") card.toolName = String(event.step.payload["tool_name"] ?? "");
  next.cards.push(card);
  return next;
}

export function applyEvents(state: TraceViewState, events: TraceEvent[]): TraceViewState {
  return events.reduce(applyEvent, state);
}

const CARD_TITLES: Record<Card["kind"], string> = {
  thought: "Thought",
  action: "Action",
  action_input: "Action Input",
  observation: "Observation",
  final_answer: "Final Answer",
};

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

/** Render the step cards as HTML. Action cards naming a tool outside
 *  `knownTools` get the hallucination highlight. */
export function renderCards(state: TraceViewState, knownTools: ReadonlySet<string>): string {
  const pieces: string[] = [];
  for (const card of state.cards) {
    const classes = ["card", `kind-${card.kind}`];
    if (card.kind === "action" && card.toolName !== undefined && !knownTools.has(card.toolName)) {
      classes.push("hallucination");
    }
    if (card.kind === "final_answer") classes.push("answer");
    const duration = card.durationMs > 0 ? `<span class="duration">${card.durationMs.toFixed(0)} ms</span>` : "";
    pieces.push(
      `<div class="${classes.join(" ")}" data-seq="${card.seq}">` +
        `<span class="label">${CARD_TITLES[card.kind]}</span>` +
        duration +
        `<pre>${escapeHtml(card.text)}</pre>` +
        `</div>`
    );
  }
  if (state.errorBanner) {
    pieces.push(`<div class="banner error">${escapeHtml(state.errorBanner)}</div>`);
  }
  return pieces.join("\n");
}
