// Typed client for the session service. Mutations carry the expected
// revision (If-Match) so concurrent facilitator tabs surface conflicts
// instead of silently interleaving rounds.

import type {
  ApiErrorBody,
  Grid,
  Report,
  RoundFeedback,
  SessionDefinition,
  SessionState,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
    public readonly details: string[] = [],
  ) {
    super(message);
  }

  get isConflict(): boolean {
    return this.status === 409;
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let res: Response;
    try {
      res = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    } catch (err) {
      throw new ApiError(0, "network", `cannot reach ${this.baseUrl}: ${err}`);
    }
    if (!res.ok) {
      let body: Partial<ApiErrorBody> = {};
      try {
        body = await res.json();
      } catch {
        // non-JSON error body; fall through to the generic message
      }
      throw new ApiError(
        res.status,
        body.code ?? "http_error",
        body.message ?? `request failed with status ${res.status}`,
        body.details ?? [],
      );
    }
    return res.json() as Promise<T>;
  }

  private post<T>(path: string, payload: unknown, headers?: Record<string, string>): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json", ...headers },
      body: JSON.stringify(payload),
    });
  }

  createSession(definition: SessionDefinition): Promise<{ id: string }> {
    return this.post("/sessions", definition);
  }

  getSession(id: string): Promise<SessionState> {
    return this.request(`/sessions/${id}`);
  }

  submitRound(id: string, entries: Grid, revision?: number): Promise<RoundFeedback> {
    const headers = revision === undefined ? undefined : { "If-Match": String(revision) };
    return this.post(`/sessions/${id}/rounds`, { entries }, headers);
  }

  getFeedback(id: string): Promise<RoundFeedback> {
    return this.request(`/sessions/${id}/feedback`);
  }

  finalize(id: string, overrides: { eta?: number; alpha?: number } = {}): Promise<Report> {
    return this.post(`/sessions/${id}/finalize`, overrides);
  }

  getReport(id: string): Promise<Report> {
    return this.request(`/sessions/${id}/report`);
  }
}
