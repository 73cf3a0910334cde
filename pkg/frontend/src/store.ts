/** Session state for the workbench.
 *
 * The store never re-derives engine math: steps, circles, metrics and
 * patterns are stored exactly as the server sent them.  Comparison mode
 * keeps one extra session per method, stepped in lockstep with the primary.
 */

import type { SessionClient } from "./api.js";
import type { Method, Pattern, StepSummary } from "./types.js";

export interface SessionView {
  id: string;
  method: Method;
  theta0Deg: number;
  steps: StepSummary[];
  pattern: Pattern | null;
}

export interface Marker {
  thetaDeg: number;
  rhoDb: number;
}

/** Prescribed-level markers for every step of a session. */
export function markers(view: SessionView): Marker[] {
  return view.steps.map((s) => ({ thetaDeg: s.theta_deg, rhoDb: s.rho_db }));
}

export class WorkbenchStore {
  primary: SessionView | null = null;
  overlays: SessionView[] = [];
  pending = false;
  lastError: string | null = null;

  constructor(
    private readonly client: SessionClient,
    private readonly arraySource: string | object = "table1",
  ) {}

  get sessions(): SessionView[] {
    return this.primary ? [this.primary, ...this.overlays] : [];
  }

  private async fetchView(id: string, method: Method, theta0Deg: number): Promise<SessionView> {
    return {
      id,
      method,
      theta0Deg,
      steps: [],
      pattern: await this.client.pattern(id),
    };
  }

  /** Start a fresh single-method session (drops any existing ones). */
  async start(theta0Deg: number, method: Method): Promise<void> {
    const { id } = await this.client.createSession(this.arraySource, theta0Deg, method);
    this.primary = await this.fetchView(id, method, theta0Deg);
    this.overlays = [];
    this.lastError = null;
  }

  /** Add lockstep comparison sessions for the remaining methods. */
  async enableComparison(methods: Method[]): Promise<void> {
    if (!this.primary) throw new Error("no active session");
    const extra = methods.filter((m) => m !== this.primary!.method);
    this.overlays = [];
    for (const method of extra) {
      const { id } = await this.client.createSession(
        this.arraySource, this.primary.theta0Deg, method);
      const view = await this.fetchView(id, method, this.primary.theta0Deg);
      // replay the primary's history so the overlay is in lockstep
      for (const step of this.primary.steps) {
        view.steps.push(await this.client.step(id, step.theta_deg, step.rho_db));
      }
      view.pattern = await this.client.pattern(id);
      this.overlays.push(view);
    }
  }

  disableComparison(): void {
    this.overlays = [];
  }

  /** Step every live session; the server summary is the source of truth. */
  async step(thetaDeg: number, rhoDb: number): Promise<StepSummary> {
    if (!this.primary) throw new Error("no active session");
    if (this.pending) throw new Error("a step is already in flight");
    this.pending = true;
    try {
      const summary = await this.client.step(this.primary.id, thetaDeg, rhoDb);
      this.primary.steps.push(summary);
      this.primary.pattern = await this.client.pattern(this.primary.id);
      for (const view of this.overlays) {
        view.steps.push(await this.client.step(view.id, thetaDeg, rhoDb));
        view.pattern = await this.client.pattern(view.id);
      }
      this.lastError = null;
      return summary;
    } catch (err) {
      this.lastError = err instanceof Error ? err.message : String(err);
      throw err;
    } finally {
      this.pending = false;
    }
  }

  /** Truncate the chain by one step everywhere. */
  async undo(): Promise<void> {
    if (!this.primary || this.primary.steps.length === 0) return;
    await this.client.undo(this.primary.id);
    this.primary.steps.pop();
    this.primary.pattern = await this.client.pattern(this.primary.id);
    for (const view of this.overlays) {
      await this.client.undo(view.id);
      view.steps.pop();
      view.pattern = await this.client.pattern(view.id);
    }
  }
}
