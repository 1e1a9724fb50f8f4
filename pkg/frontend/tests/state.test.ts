import { describe, expect, test } from "vitest";

import { Step, reachableSteps, stepFromSummary } from "../src/state.js";
import { fakeSummary, job } from "./helpers.js";

describe("stepFromSummary", () => {
  test("fresh session needs data", () => {
    expect(stepFromSummary(fakeSummary({ cohort: null }))).toBe(Step.NeedData);
  });

  test("cohort without a cloud suggests exploring", () => {
    expect(stepFromSummary(fakeSummary())).toBe(Step.Explore);
  });

  test("cloud without weights moves to elicitation", () => {
    const summary = fakeSummary({
      cloud: {
        sample_count: 10000,
        kept_count: 800,
        n_points: 800,
        seed: 42,
        keep_infeasible: false,
        ranges: null,
      },
    });
    expect(stepFromSummary(summary)).toBe(Step.Elicit);
  });

  test("stored weights land on elicitation with launch available", () => {
    const summary = fakeSummary({
      weights: {
        weights: [0.4, 0.4, 0.2],
        lambda_max: 3,
        ci: 0,
        cr: 0,
        consistent: true,
        matrix_upper: [1, 2, 2],
      },
    });
    expect(stepFromSummary(summary)).toBe(Step.Elicit);
  });

  test("active job shows the optimizing step, terminal job the review step", () => {
    expect(stepFromSummary(fakeSummary({ job: job({ status: "pending" }) }))).toBe(Step.Optimizing);
    expect(stepFromSummary(fakeSummary({ job: job({ status: "running" }) }))).toBe(Step.Optimizing);
    expect(stepFromSummary(fakeSummary({ job: job({ status: "done" }) }))).toBe(Step.Review);
    expect(stepFromSummary(fakeSummary({ job: job({ status: "failed", error: "x" }) }))).toBe(
      Step.Review,
    );
  });
});

describe("reachableSteps", () => {
  test("without a cohort only the data step is reachable", () => {
    expect(reachableSteps(fakeSummary({ cohort: null }))).toEqual([Step.NeedData]);
  });

  test("a cohort unlocks exploring and elicitation but not review", () => {
    const steps = reachableSteps(fakeSummary());
    expect(steps).toContain(Step.Explore);
    expect(steps).toContain(Step.Elicit);
    expect(steps).not.toContain(Step.Review);
  });

  test("a finished job unlocks review", () => {
    expect(reachableSteps(fakeSummary({ job: job({ status: "done" }) }))).toContain(Step.Review);
  });
});
