import type { FetchLike } from "../src/api.js";
import type {
  JobState,
  OptimizationOutcome,
  SessionSummary,
  TradeoffPoint,
  TrialOut,
} from "../src/types.js";

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export interface RecordedRequest {
  method: string;
  path: string;
  body: unknown;
}

export type Route = (req: RecordedRequest) => Response | undefined;

/** fetch stand-in that routes by method + path and records every request. */
export function mockFetch(route: Route): { fetch: FetchLike; requests: RecordedRequest[] } {
  const requests: RecordedRequest[] = [];
  const fetch: FetchLike = async (input, init) => {
    const method = init?.method ?? "GET";
    let body: unknown = null;
    if (typeof init?.body === "string") body = JSON.parse(init.body);
    else if (init?.body !== undefined) body = init.body;
    const req = { method, path: input, body };
    requests.push(req);
    const res = route(req);
    if (res === undefined) {
      return jsonResponse({ code: "not_found", message: `no route: ${method} ${input}`, detail: null }, 404);
    }
    return res;
  };
  return { fetch, requests };
}

export function fakeSummary(overrides: Partial<SessionSummary> = {}): SessionSummary {
  return {
    id: "s1",
    created: "2026-01-01T00:00:00Z",
    updated: "2026-01-01T00:00:00Z",
    costs: { expected_profit: 2000, expected_cost: 10000, w_fp: 5, w_tp: 1 },
    di_bounds: [0.8, 1.25],
    cohort: { n_priv: 810, n_unp: 190, positive_rate_priv: 0.7249, positive_rate_unp: 0.5726 },
    cloud: null,
    scales: { s_util: 100, s_spd: 0.1, s_waod: 0.1, source: "default" },
    weights: null,
    job: null,
    ...overrides,
  };
}

export function point(overrides: Partial<TradeoffPoint> = {}): TradeoffPoint {
  return {
    t_unp: 0.5,
    t_priv: 0.55,
    spd: -0.02,
    waod: -0.03,
    di_ratio: 0.95,
    utility_total: 500_000,
    utility_per_applicant: 500,
    feasible: true,
    ...overrides,
  };
}

export function tradeoffPage(points: TradeoffPoint[], sampleCount = points.length) {
  return {
    points,
    page: 1,
    page_size: 2000,
    page_count: 1,
    total_points: points.length,
    kept_count: points.length,
    sample_count: sampleCount,
  };
}

export function job(overrides: Partial<JobState> = {}): JobState {
  return { job_id: "j1", status: "running", completed: 0, total: 500, error: null, ...overrides };
}

export function trial(overrides: Partial<TrialOut> = {}): TrialOut {
  return {
    index: 0,
    t_unp: 0.51,
    t_priv: 0.685,
    spd: -0.012,
    waod: -0.089,
    di_ratio: 0.982,
    utility_total: 1_035_120,
    utility_per_applicant: 1035.12,
    feasible: true,
    objective: -3.8567,
    status: "feasible",
    ...overrides,
  };
}

export function outcome(overrides: Partial<OptimizationOutcome> = {}): OptimizationOutcome {
  return {
    best: trial({ index: 37 }),
    config: {
      method: "tpe",
      n_trials: 500,
      n_startup: 20,
      gamma: 0.25,
      n_candidates: 24,
      seed: 6,
      bandwidth_floor_divisor: 100,
    },
    n_trials: 500,
    n_feasible: 320,
    trials: [trial(), trial({ index: 1, t_unp: 0.3, feasible: false, objective: null, status: "infeasible" })],
    objective: { weights: [0.4, 0.4, 0.2], scales: [100, 0.1, 0.1], di_bounds: [0.8, 1.25] },
    ...overrides,
  };
}

export async function flushMicrotasks(times = 4): Promise<void> {
  for (let i = 0; i < times; i++) await Promise.resolve();
}
