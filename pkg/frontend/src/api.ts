import type {
  CohortSummary,
  JobState,
  OptimizationOutcome,
  OptimizeIn,
  Ratings,
  RatingsResponse,
  SessionSummary,
  SyntheticSpecIn,
  TradeoffFilters,
  TradeoffPage,
  AhpOutcome,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Error body the service attaches to every non-2xx response. */
export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly detail: unknown = null,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

async function raiseForStatus(res: Response): Promise<void> {
  if (res.ok) return;
  let code = "http_error";
  let message = `${res.status} ${res.statusText}`;
  let detail: unknown = null;
  try {
    const body = (await res.json()) as Record<string, unknown>;
    if (typeof body.code === "string") code = body.code;
    if (typeof body.message === "string") message = body.message;
    if ("detail" in body) detail = body.detail;
  } catch {
    // Non-JSON error body; keep the HTTP status line as the message.
  }
  throw new ServiceError(res.status, code, message, detail);
}

function tradeoffQuery(filters: TradeoffFilters): string {
  const q = new URLSearchParams();
  if (filters.min_utility !== undefined) q.set("min_utility", String(filters.min_utility));
  if (filters.max_abs_spd !== undefined) q.set("max_abs_spd", String(filters.max_abs_spd));
  if (filters.max_abs_waod !== undefined) q.set("max_abs_waod", String(filters.max_abs_waod));
  if (filters.feasible_only) q.set("feasible_only", "true");
  if (filters.page !== undefined) q.set("page", String(filters.page));
  if (filters.page_size !== undefined) q.set("page_size", String(filters.page_size));
  const s = q.toString();
  return s ? `?${s}` : "";
}

export class ApiClient {
  private readonly inflight = new Map<string, Promise<unknown>>();

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, init: RequestInit = {}): Promise<T> {
    const res = await this.fetchImpl(this.baseUrl + path, { method, ...init });
    await raiseForStatus(res);
    return (await res.json()) as T;
  }

  private postJson<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>("POST", path, {
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  /** GETs to the same path share one in-flight request. */
  private getJson<T>(path: string): Promise<T> {
    const pending = this.inflight.get(path);
    if (pending) return pending as Promise<T>;
    const promise = this.request<T>("GET", path).finally(() => {
      this.inflight.delete(path);
    });
    this.inflight.set(path, promise);
    return promise;
  }

  createSession(body: Record<string, unknown> = {}): Promise<SessionSummary> {
    return this.postJson("/sessions", body);
  }

  getSession(id: string): Promise<SessionSummary> {
    return this.getJson(`/sessions/${id}`);
  }

  uploadCohortFile(id: string, file: File): Promise<CohortSummary> {
    const form = new FormData();
    form.append("file", file);
    return this.request("POST", `/sessions/${id}/dataset`, { body: form });
  }

  generateSyntheticCohort(id: string, spec: SyntheticSpecIn = {}): Promise<CohortSummary> {
    return this.postJson(`/sessions/${id}/dataset`, spec);
  }

  sampleTradeoff(
    id: string,
    body: { n?: number; seed?: number; keep_infeasible?: boolean } = {},
  ): Promise<{ sample_count: number; kept_count: number; n_points: number }> {
    return this.postJson(`/sessions/${id}/tradeoff`, body);
  }

  getTradeoff(id: string, filters: TradeoffFilters = {}): Promise<TradeoffPage> {
    return this.getJson(`/sessions/${id}/tradeoff${tradeoffQuery(filters)}`);
  }

  submitRatings(id: string, ratings: Ratings | Ratings[]): Promise<RatingsResponse> {
    return this.postJson(`/sessions/${id}/ratings`, ratings);
  }

  getWeights(id: string): Promise<AhpOutcome> {
    return this.getJson(`/sessions/${id}/weights`);
  }

  startOptimization(id: string, body: OptimizeIn = {}): Promise<JobState> {
    return this.postJson(`/sessions/${id}/optimize`, body);
  }

  getJob(id: string): Promise<JobState> {
    return this.getJson(`/sessions/${id}/job`);
  }

  getResult(id: string): Promise<OptimizationOutcome> {
    return this.getJson(`/sessions/${id}/result`);
  }
}
