// Payload shapes of the reduction service API.

export interface LedgerState {
  [token: string]: number | Record<string, number>;
  waste: Record<string, number>;
  mintCount: number;
}

export interface CostStep {
  costIn: number;
  costOut: number;
  net: number;
}

export interface CostReport {
  perStep: CostStep[];
  cumulativeIn: number;
  cumulativeOut: number;
  cumulativeNet: number;
  netSeries: number[];
  blockedRewrites: number;
  residual: number | null;
}

export interface SessionState {
  id: string;
  mol: string;
  nodes: number;
  ledger: LedgerState;
  costReport: CostReport;
  stepCount: number;
  rewriteCount: number;
  decodedTerm: string | null;
  outcome: string | null;
  weight: number;
  seed: number;
  tokenMode: string;
}

export interface StepRecord {
  step: number;
  rewrite: string;
  anchor: number;
  tokensIn: Record<string, number>;
  tokensOut: Record<string, number>;
  minted: string[];
  costIn: number;
  costOut: number;
  nodes: number;
}

export interface PassStats {
  pass: number;
  candidates: Record<string, number>;
  accepted: Record<string, number>;
  applied: number;
  rejected: number;
  blocked: number;
  comb: number;
  loopArrows: number;
  nodes: number;
}

export interface StepResponse {
  records: StepRecord[];
  passStats: PassStats[];
  state: SessionState;
}

export interface CreateResponse {
  id: string;
  state: SessionState;
}

export interface SessionParams {
  term?: string;
  mol?: string;
  seed?: number;
  weight?: number;
  tokenMode?: string;
  prefund?: number;
}

// Rewrite kinds, mirroring the service's schema table; used only to color
// and summarize the log, never to decide anything.
export const REWRITE_KINDS: Record<string, string> = {
  "K-A": "BETA",
  "I-A": "TERMINATION",
  "I-S": "TERMINATION",
  "K-S": "TERMINATION",
  "S-K": "TERMINATION",
  "S-K2": "TERMINATION",
  "A-K": "TERMINATION",
  "A-S": "DIST",
  "S-S": "DIST",
  "S-A": "DIST",
  COMB: "COMPOSE",
};
