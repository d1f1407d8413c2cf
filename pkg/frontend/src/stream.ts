import type { TraceEvent } from "./types.js";

export interface StreamOptions {
  after?: number;
  traceId?: string;
  onEvent: (event: TraceEvent) => void;
  onSessionGone?: () => void;
  fetchImpl?: typeof fetch;
  maxReconnects?: number;
  backoffMs?: number;
  sleep?: (ms: number) => Promise<void>;
}

const defaultSleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

function parseFrames(buffer: string): { frames: string[]; rest: string } {
  const frames = buffer.split(/\r?\n\r?\n/);
  const rest = frames.pop() ?? "";
  return { frames: frames.filter((f) => f.trim().length > 0), rest };
}

function eventFromFrame(frame: string): TraceEvent | null {
  const dataLines: string[] = [];
  for (const rawLine of frame.split(/\r?\n/)) {
    if (rawLine.startsWith("data:")) dataLines.push(rawLine.slice(5).trim());
  }
  if (dataLines.length === 0) return null;
  try {
    return JSON.parse(dataLines.join("\n")) as TraceEvent;
  } catch {
    return null;
  }
}

/** Consume the session event stream, auto-reconnecting from the last seen seq.
 *  Resolves once a terminal (final/error) event arrives. Delivery is
 *  exactly-once: replayed events below the cursor are dropped. */
export async function streamEvents(
  baseUrl: string,
  sessionId: string,
  options: StreamOptions
): Promise<number> {
  const fetchImpl = options.fetchImpl ?? fetch;
  const sleep = options.sleep ?? defaultSleep;
  const maxReconnects = options.maxReconnects ?? 20;
  let cursor = options.after ?? 0;
  let attempts = 0;

  while (attempts <= maxReconnects) {
    const trace = options.traceId ? `&trace=${encodeURIComponent(options.traceId)}` : "";
    const url = `${baseUrl}/v1/sessions/${encodeURIComponent(sessionId)}/events?after=${cursor}${trace}`;
    let response: Response;
    try {
      response = await fetchImpl(url, { headers: { Accept: "text/event-stream" } });
    } catch {
      attempts += 1;
      await sleep((options.backoffMs ?? 250) * attempts);
      continue;
    }
    if (response.status === 404) {
      options.onSessionGone?.();
      throw new Error("session gone");
    }
    if (!response.ok || !response.body) {
      attempts += 1;
      await sleep((options.backoffMs ?? 250) * attempts);
      continue;
    }

    const reader = response.body.getReader();
    const decoder = new TextDecoder("utf-8");
    let buffer = "";
    try {
      while (true) {
        const { value, done } = await reader.read();
        if (done) break;
        buffer += decoder.decode(value, { stream: true });
        const { frames, rest } = parseFrames(buffer);
        buffer = rest;
        for (const frame of frames) {
          const event = eventFromFrame(frame);
          if (event === null || event.seq <= cursor) continue;
          cursor = event.seq;
          options.onEvent(event);
          if (event.step.kind === "final" || event.step.kind === "error") {
            return cursor;
          }
        }
      }
    } catch {
      // stream dropped mid-read; fall through to reconnect
    }
    attempts += 1;
    await sleep((options.backoffMs ?? 250) * attempts);
  }
  throw new Error(`stream did not finish after ${maxReconnects} reconnects`);
}
