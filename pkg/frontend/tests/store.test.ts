import { describe, expect, it } from "vitest";

import type { SessionClient } from "../src/api.js";
import { WorkbenchStore, markers } from "../src/store.js";
import type { Method, Pattern, StepSummary } from "../src/types.js";

/** Deterministic in-memory stand-in for the HTTP client. */
class FakeClient {
  private sessions = new Map<string, { method: Method; theta0: number; steps: StepSummary[] }>();
  private counter = 0;
  calls: string[] = [];

  async createSession(_array: unknown, theta0Deg: number, method: Method) {
    const id = `s${++this.counter}`;
    this.sessions.set(id, { method, theta0: theta0Deg, steps: [] });
    this.calls.push(`create:${id}:${method}`);
    return { id };
  }

  async step(id: string, thetaDeg: number, rhoDb: number): Promise<StepSummary> {
    if (rhoDb > 0) throw new Error("desired linear level must lie in (0, 1]");
    const session = this.sessions.get(id)!;
    const summary: StepSummary = {
      index: session.steps.length + 1,
      method: session.method,
      theta_deg: thetaDeg,
      rho_db: rhoDb,
      achieved_level_db: rhoDb,
      gain_db: 10,
      metrics: { d_db: session.steps.length ? 1 : null, j_rms: session.steps.length ? 0.01 : null },
      circles: { gamma: { center: [-0.1, 0], radius: 0.05 } },
      gamma: [-0.1, -0.02],
      beta: 1.2,
    };
    session.steps.push(summary);
    this.calls.push(`step:${id}:${thetaDeg}:${rhoDb}`);
    return summary;
  }

  async undo(id: string) {
    const session = this.sessions.get(id)!;
    session.steps.pop();
    this.calls.push(`undo:${id}`);
    return { id, steps: session.steps.length };
  }

  async pattern(id: string): Promise<Pattern> {
    const session = this.sessions.get(id)!;
    return {
      angles_deg: [-90, 0, 90],
      levels_db: [-30 - session.steps.length, 0, -40],
      meta: { theta0_deg: session.theta0, method: session.method, step: session.steps.length },
    };
  }

  async describe() {
    throw new Error("unused");
  }

  async deleteSession() {
    throw new Error("unused");
  }
}

function makeStore() {
  const fake = new FakeClient();
  return { fake, store: new WorkbenchStore(fake as unknown as SessionClient) };
}

describe("WorkbenchStore", () => {
  it("starts a session and fetches the quiescent pattern", async () => {
    const { store } = makeStore();
    await store.start(20, "oparc");
    expect(store.primary?.method).toBe("oparc");
    expect(store.primary?.pattern?.meta.step).toBe(0);
    expect(markers(store.primary!)).toEqual([]);
  });

  it("appends server summaries and refreshes the pattern on step", async () => {
    const { store } = makeStore();
    await store.start(20, "oparc");
    const summary = await store.step(-45, -40);
    expect(summary.index).toBe(1);
    expect(store.primary?.steps).toHaveLength(1);
    expect(store.primary?.pattern?.meta.step).toBe(1);
    expect(markers(store.primary!)).toEqual([{ thetaDeg: -45, rhoDb: -40 }]);
  });

  it("steps comparison sessions in lockstep", async () => {
    const { fake, store } = makeStore();
    await store.start(20, "oparc");
    await store.step(-45, -40);
    await store.enableComparison(["oparc", "parc", "a2rc"]);
    expect(store.overlays.map((v) => v.method)).toEqual(["parc", "a2rc"]);
    // overlays replayed the existing history
    for (const view of store.overlays) expect(view.steps).toHaveLength(1);
    await store.step(-5, -30);
    for (const view of store.sessions) expect(view.steps).toHaveLength(2);
    const stepCalls = fake.calls.filter((c) => c.startsWith("step:"));
    expect(stepCalls).toHaveLength(2 + 3 + 1); // replay(2) + lockstep(3) + primary first step
  });

  it("undo truncates every session", async () => {
    const { store } = makeStore();
    await store.start(20, "oparc");
    await store.step(-45, -40);
    await store.enableComparison(["parc"]);
    await store.step(-5, -30);
    await store.undo();
    for (const view of store.sessions) expect(view.steps).toHaveLength(1);
    await store.undo();
    for (const view of store.sessions) expect(view.steps).toHaveLength(0);
    await store.undo(); // no-op on empty chain
    expect(store.primary?.steps).toHaveLength(0);
  });

  it("surfaces server rejections verbatim and recovers", async () => {
    const { store } = makeStore();
    await store.start(20, "oparc");
    await expect(store.step(-45, 3)).rejects.toThrow("desired linear level");
    expect(store.lastError).toContain("desired linear level");
    expect(store.primary?.steps).toHaveLength(0);
    await store.step(-45, -40);
    expect(store.lastError).toBeNull();
  });
});
