import type { ApiClient } from "./api.js";
import type { JobState } from "./types.js";

export interface PollOptions {
  /** Interval between successful polls. */
  intervalMs?: number;
  /** Multiplier applied to the delay after each consecutive error. */
  backoffFactor?: number;
  maxIntervalMs?: number;
  /** Consecutive errors tolerated before giving up. */
  maxErrors?: number;
  onTick?: (job: JobState) => void;
  sleep?: (ms: number) => Promise<void>;
}

const defaultSleep = (ms: number) => new Promise<void>((r) => setTimeout(r, ms));

/** Polls the job endpoint until the job is done or failed.
 *
 * Transient errors back off exponentially and reset on the next success;
 * persistent errors (maxErrors in a row) rethrow the last one.
 */
export async function pollJob(
  client: ApiClient,
  sessionId: string,
  options: PollOptions = {},
): Promise<JobState> {
  const interval = options.intervalMs ?? 500;
  const factor = options.backoffFactor ?? 2;
  const maxInterval = options.maxIntervalMs ?? 10_000;
  const maxErrors = options.maxErrors ?? 5;
  const sleep = options.sleep ?? defaultSleep;

  let delay = interval;
  let errors = 0;
  for (;;) {
    try {
      const job = await client.getJob(sessionId);
      errors = 0;
      delay = interval;
      options.onTick?.(job);
      if (job.status === "done" || job.status === "failed") return job;
    } catch (err) {
      errors += 1;
      if (errors >= maxErrors) throw err;
      delay = Math.min(delay * factor, maxInterval);
    }
    await sleep(delay);
  }
}
