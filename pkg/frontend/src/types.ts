/** JSON payload shapes of the threshold-optimization service.
 *
 * The browser never computes metrics itself; every number shown in the UI
 * arrives through one of these payloads.
 */

export interface CostModel {
  expected_profit: number;
  expected_cost: number;
  w_fp: number;
  w_tp: number;
}

export interface CohortSummary {
  n_priv: number;
  n_unp: number;
  positive_rate_priv: number;
  positive_rate_unp: number;
}

export interface MetricRanges {
  spd: [number, number];
  waod: [number, number];
  utility_per_applicant: [number, number];
}

export interface CloudSummary {
  sample_count: number;
  kept_count: number;
  n_points: number;
  seed: number;
  keep_infeasible: boolean;
  ranges: MetricRanges | null;
}

export interface Scales {
  s_util: number;
  s_spd: number;
  s_waod: number;
  source: "cloud" | "default";
}

export interface AhpOutcome {
  weights: [number, number, number];
  lambda_max: number;
  ci: number;
  cr: number;
  consistent: boolean;
  matrix_upper: [number, number, number];
}

export interface RatingsResponse extends AhpOutcome {
  message: string;
  persisted: boolean;
  directive: "re_rate" | null;
}

export type JobStatus = "pending" | "running" | "done" | "failed";

export interface JobState {
  job_id: string;
  status: JobStatus;
  completed: number;
  total: number;
  error: string | null;
}

export interface SessionSummary {
  id: string;
  created: string;
  updated: string;
  costs: CostModel;
  di_bounds: [number, number];
  cohort: CohortSummary | null;
  cloud: CloudSummary | null;
  scales: Scales;
  weights: AhpOutcome | null;
  job: JobState | null;
}

export interface TradeoffPoint {
  t_unp: number;
  t_priv: number;
  spd: number;
  waod: number;
  /** null when the privileged selection rate is zero and DI is undefined. */
  di_ratio: number | null;
  utility_total: number;
  utility_per_applicant: number;
  feasible: boolean;
}

export interface TradeoffPage {
  points: TradeoffPoint[];
  page: number;
  page_size: number;
  page_count: number;
  total_points: number;
  kept_count: number;
  sample_count: number;
}

export interface TradeoffFilters {
  min_utility?: number;
  max_abs_spd?: number;
  max_abs_waod?: number;
  feasible_only?: boolean;
  page?: number;
  page_size?: number;
}

export interface Ratings {
  util_vs_spd: number;
  util_vs_waod: number;
  spd_vs_waod: number;
}

export interface SyntheticSpecIn {
  n_total?: number;
  unprivileged_fraction?: number;
  positive_rate_priv?: number;
  positive_rate_unp?: number;
  seed?: number;
}

export interface OptimizeIn {
  n_trials?: number;
  n_startup?: number;
  gamma?: number;
  n_candidates?: number;
  seed?: number;
}

export interface TrialOut {
  index: number;
  t_unp: number;
  t_priv: number;
  spd: number;
  waod: number;
  di_ratio: number | null;
  utility_total: number;
  utility_per_applicant: number;
  feasible: boolean;
  objective: number | null;
  status: "feasible" | "infeasible";
}

export interface OptimizationOutcome {
  best: TrialOut;
  config: {
    method: string;
    n_trials: number;
    n_startup: number;
    gamma: number;
    n_candidates: number;
    seed: number;
    bandwidth_floor_divisor: number;
  };
  n_trials: number;
  n_feasible: number;
  trials: TrialOut[];
  objective: {
    weights: [number, number, number];
    scales: [number, number, number];
    di_bounds: [number, number];
  };
}
