import type { Method, Pattern, SessionInfo, StepSummary } from "./types.js";

export class ApiError extends Error {
  constructor(public readonly status: number, detail: string) {
    super(detail);
    this.name = "ApiError";
  }
}

async function parseError(resp: Response): Promise<never> {
  let detail = `${resp.status} ${resp.statusText}`;
  try {
    const body = await resp.json();
    if (typeof body.detail === "string") detail = body.detail;
    else if (body.detail) detail = JSON.stringify(body.detail);
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(resp.status, detail);
}

/** Thin typed client for the session endpoints. */
export class SessionClient {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(this.baseUrl + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (!resp.ok) await parseError(resp);
    return (await resp.json()) as T;
  }

  createSession(array: string | object, theta0Deg: number, method: Method): Promise<{ id: string }> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify({ array, theta0_deg: theta0Deg, method }),
    });
  }

  describe(id: string): Promise<SessionInfo> {
    return this.request(`/sessions/${id}`);
  }

  deleteSession(id: string): Promise<{ deleted: string }> {
    return this.request(`/sessions/${id}`, { method: "DELETE" });
  }

  step(id: string, thetaDeg: number, rhoDb: number): Promise<StepSummary> {
    return this.request(`/sessions/${id}/steps`, {
      method: "POST",
      body: JSON.stringify({ theta_deg: thetaDeg, rho_db: rhoDb }),
    });
  }

  undo(id: string): Promise<{ id: string; steps: number }> {
    return this.request(`/sessions/${id}/undo`, { method: "POST" });
  }

  pattern(id: string, fromDeg = -90, toDeg = 90, stepDeg = 0.2): Promise<Pattern> {
    const params = new URLSearchParams({
      from_deg: String(fromDeg),
      to_deg: String(toDeg),
      step_deg: String(stepDeg),
    });
    return this.request(`/sessions/${id}/pattern?${params}`);
  }
}
