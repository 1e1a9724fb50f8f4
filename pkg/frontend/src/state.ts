import type { SessionSummary } from "./types.js";

/** Workflow steps, in prerequisite order. */
export enum Step {
  NeedData = "need-data",
  Explore = "explore",
  Elicit = "elicit",
  Optimizing = "optimizing",
  Review = "review",
}

export const STEP_ORDER: readonly Step[] = [
  Step.NeedData,
  Step.Explore,
  Step.Elicit,
  Step.Optimizing,
  Step.Review,
];

export const STEP_LABELS: Record<Step, string> = {
  [Step.NeedData]: "1. Data",
  [Step.Explore]: "2. Explore",
  [Step.Elicit]: "3. Preferences",
  [Step.Optimizing]: "4. Optimize",
  [Step.Review]: "5. Review",
};

/** The step is a pure function of the session summary, so a page refresh
 * lands back where the service says the session is. */
export function stepFromSummary(summary: SessionSummary): Step {
  if (summary.cohort === null) return Step.NeedData;
  if (summary.job !== null) {
    if (summary.job.status === "done" || summary.job.status === "failed") return Step.Review;
    return Step.Optimizing;
  }
  if (summary.weights !== null) return Step.Elicit;
  if (summary.cloud === null) return Step.Explore;
  return Step.Elicit;
}

/** Steps the user may navigate to, given what the service has stored. */
export function reachableSteps(summary: SessionSummary): Step[] {
  const steps: Step[] = [Step.NeedData];
  if (summary.cohort !== null) steps.push(Step.Explore, Step.Elicit);
  if (summary.job !== null) {
    steps.push(summary.job.status === "done" || summary.job.status === "failed"
      ? Step.Review
      : Step.Optimizing);
  }
  return steps;
}
