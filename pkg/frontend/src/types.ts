export type StepKind =
  | "thought"
  | "action"
  | "action_input"
  | "observation"
  | "final_answer"
  | "final"
  | "error";

export interface TraceEvent {
  session_id: string;
  trace_id: string;
  seq: number;
  step: { kind: StepKind; payload: Record<string, unknown> };
  duration_ms: number;
}

export interface Card {
  seq: number;
  kind: Exclude<StepKind, "final" | "error">;
  text: string;
  toolName?: string;
  durationMs: number;
}

export interface TraceViewState {
  cards: Card[];
  lastSeq: number;
  done: boolean;
  status: string | null; // completed | step_limit | parse_error | gateway_error
  answer: string | null;
  errorBanner: string | null;
}

export interface MetricRate {
  numerator: number;
  denominator: number;
  pct: string;
}

export interface ReportEntry {
  system: string;
  n: number;
  counts: Record<string, number>;
  rates: Record<string, MetricRate>;
  corpus_hash: string;
  seed: number;
}

export interface SignificanceMark {
  metric: string;
  p_value: string;
  mark: string;
}

export interface ReportDoc {
  reports: ReportEntry[];
  significance: Record<string, SignificanceMark[]>;
  table: string;
}

export const METRIC_ORDER = ["FRIR", "FRNR", "FRPR", "FRHR", "ACAR"] as const;

export const SYSTEM_LABELS: Record<string, string> = {
  kg2data: "KG2data",
  rag2data: "RAG2data",
  chat2data: "chat2data",
};
