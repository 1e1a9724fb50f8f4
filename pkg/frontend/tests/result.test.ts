import { beforeEach, describe, expect, test } from "vitest";

import { ApiClient } from "../src/api.js";
import { renderResult } from "../src/views/result.js";
import { flushMicrotasks, job, jsonResponse, mockFetch, outcome, trial } from "./helpers.js";

describe("result view", () => {
  let container: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = "";
    container = document.createElement("div");
    document.body.append(container);
  });

  test("a half-finished job renders a 50% progress bar", async () => {
    let releaseSleep: (() => void) | null = null;
    const sleep = () =>
      new Promise<void>((resolve) => {
        releaseSleep = resolve;
      });
    const responses = [
      job({ status: "running", completed: 250, total: 500 }),
      job({ status: "done", completed: 500, total: 500 }),
    ];
    let call = 0;
    const { fetch } = mockFetch((req) => {
      if (req.path.endsWith("/job")) {
        return jsonResponse(responses[Math.min(call++, responses.length - 1)]);
      }
      if (req.path.endsWith("/result")) return jsonResponse(outcome());
      return undefined;
    });
    const view = renderResult(container, {
      client: new ApiClient("", fetch),
      sessionId: "s1",
      onRestart: () => {},
      pollSleep: sleep,
    });

    // First poll answered; the loop is now parked in our sleep.
    while (releaseSleep === null) await flushMicrotasks();
    const bar = container.querySelector<HTMLElement>(".progress-inner");
    expect(bar?.style.width).toBe("50%");
    expect(container.querySelector('[data-testid="job-status"]')?.textContent).toBe(
      "running: 250/500 trials",
    );

    (releaseSleep as () => void)();
    await view.settled;
    expect(bar?.style.width).toBe("100%");
  });

  test("a finished run renders the optimal model row with percent thresholds", async () => {
    const done = outcome({
      best: trial({ t_unp: 0.51, t_priv: 0.685, utility_per_applicant: 1035.12 }),
    });
    const { fetch } = mockFetch((req) => {
      if (req.path.endsWith("/job")) return jsonResponse(job({ status: "done", completed: 500 }));
      if (req.path.endsWith("/result")) return jsonResponse(done);
      return undefined;
    });
    const view = renderResult(container, {
      client: new ApiClient("", fetch),
      sessionId: "s1",
      onRestart: () => {},
      pollSleep: async () => {},
    });
    await view.settled;

    const row = container.querySelector('[data-testid="result-row"]');
    const cells = [...(row?.querySelectorAll("td") ?? [])].map((td) => td.textContent);
    expect(cells).toContain("51.0%");
    expect(cells).toContain("68.5%");
    expect(cells).toContain("$1,035.12");
    expect(cells).toContain("0.40 / 0.40 / 0.20");
    expect(cells).toContain("-0.0120");
    expect(cells).toContain("0.982");
    expect(container.querySelector('[data-testid="result-scatter"]')).not.toBeNull();
    const links = [...container.querySelectorAll("a.download")].map((a) => a.textContent);
    expect(links).toEqual(["Download JSON", "Download best row CSV"]);
  });

  test("a failed job shows the error and a restart affordance", async () => {
    let restarted = false;
    const { fetch } = mockFetch((req) =>
      req.path.endsWith("/job")
        ? jsonResponse(job({ status: "failed", error: "no feasible trial in 500 evaluations" }))
        : undefined,
    );
    const view = renderResult(container, {
      client: new ApiClient("", fetch),
      sessionId: "s1",
      onRestart: () => {
        restarted = true;
      },
      pollSleep: async () => {},
    });
    await view.settled;

    expect(container.querySelector(".error")?.textContent).toContain("no feasible trial");
    const restart = [...container.querySelectorAll("button")].find(
      (b) => b.textContent === "Back to preferences",
    );
    expect(restart).toBeDefined();
    restart?.click();
    expect(restarted).toBe(true);
  });

  test("persistent polling errors surface as a failure state", async () => {
    const { fetch } = mockFetch(() =>
      jsonResponse({ code: "not_found", message: "no optimization job for session", detail: null }, 404),
    );
    const view = renderResult(container, {
      client: new ApiClient("", fetch),
      sessionId: "s1",
      onRestart: () => {},
      pollSleep: async () => {},
    });
    await view.settled;
    expect(container.querySelector(".error")?.textContent).toContain("no optimization job");
  });
});
