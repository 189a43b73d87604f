// Session state machine.  Owns the client calls and guarantees at most
// one in-flight step request; the run loop re-issues steps at a cadence
// until paused or the session reaches normal form.  All numbers shown in
// the UI come from the last service response kept here.

import { ApiError, Client } from "./api.js";
import type {
  PassStats,
  SessionParams,
  SessionState,
  StepRecord,
} from "./types.js";
import { REWRITE_KINDS } from "./types.js";

export type Listener = () => void;

const LOG_LIMIT = 400;

export class SessionStore {
  state: SessionState | null = null;
  log: StepRecord[] = [];
  passStats: PassStats[] = [];
  running = false;
  busy = false;
  error: string | null = null;

  private listeners: Listener[] = [];
  private runTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    readonly client: Client,
    readonly cadenceMs = 120,
    readonly passesPerStep = 1,
  ) {}

  onChange(fn: Listener): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  private fail(err: unknown): void {
    this.error =
      err instanceof ApiError ? `${err.status}: ${err.message}` : String(err);
    this.running = false;
    this.emit();
  }

  async create(params: SessionParams): Promise<void> {
    this.pause();
    if (this.state) {
      this.client.deleteSession(this.state.id).catch(() => {});
    }
    this.state = null;
    this.log = [];
    this.passStats = [];
    this.error = null;
    this.emit();
    try {
      const created = await this.client.createSession(params);
      this.state = created.state;
      this.emit();
    } catch (err) {
      this.fail(err);
    }
  }

  /** One step request; no-op while another one is in flight. */
  async step(passes = this.passesPerStep): Promise<boolean> {
    if (this.busy || !this.state || this.state.outcome) return false;
    this.busy = true;
    this.emit();
    try {
      const resp = await this.client.step(this.state.id, passes);
      this.state = resp.state;
      this.log = this.log.concat(resp.records).slice(-LOG_LIMIT);
      this.passStats = this.passStats.concat(resp.passStats);
      this.error = null;
      return true;
    } catch (err) {
      this.fail(err);
      return false;
    } finally {
      this.busy = false;
      this.emit();
    }
  }

  run(): void {
    if (this.running) return;
    this.running = true;
    this.error = null;
    this.emit();
    const tick = async () => {
      if (!this.running) return;
      const ok = await this.step();
      if (!ok || !this.state || this.state.outcome) {
        this.running = false;
        this.emit();
        return;
      }
      this.runTimer = setTimeout(tick, this.cadenceMs);
    };
    void tick();
  }

  pause(): void {
    this.running = false;
    if (this.runTimer) {
      clearTimeout(this.runTimer);
      this.runTimer = null;
    }
    this.emit();
  }

  async setWeight(weight: number): Promise<void> {
    if (!this.state) return;
    try {
      const resp = await this.client.setWeight(this.state.id, weight);
      this.state = resp.state;
      this.emit();
    } catch (err) {
      this.fail(err);
    }
  }

  /** Share of found growing-kind candidates that were accepted. */
  distAcceptanceRate(stats: PassStats[] = this.passStats): number {
    let candidates = 0;
    let accepted = 0;
    for (const p of stats) {
      candidates += p.candidates["DIST"] ?? 0;
      accepted += p.accepted["DIST"] ?? 0;
    }
    return candidates ? accepted / candidates : 0;
  }

  /** Applied-rewrite counts by kind, for the log summary. */
  kindCounts(): Record<string, number> {
    const counts: Record<string, number> = {};
    for (const rec of this.log) {
      const kind = REWRITE_KINDS[rec.rewrite] ?? "OTHER";
      counts[kind] = (counts[kind] ?? 0) + 1;
    }
    return counts;
  }
}
