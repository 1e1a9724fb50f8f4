// @vitest-environment happy-dom
// @vitest-environment-options { "url": "http://127.0.0.1:8901" }
//
// One scripted end-to-end pass: the real views drive the real service over
// HTTP, from an empty session to a rendered optimal model. The window origin
// matches the service address so the browser fetch is same-origin.

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { connect } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, test } from "vitest";

import { ApiClient } from "../src/api.js";
import type { SessionSummary } from "../src/types.js";
import { renderDataset } from "../src/views/dataset.js";
import { renderElicit } from "../src/views/elicit.js";
import { renderExplore } from "../src/views/explore.js";
import { renderResult } from "../src/views/result.js";

const BASE = "http://127.0.0.1:8901";
let server: ChildProcess;
let dataDir: string;

function portOpen(): Promise<boolean> {
  return new Promise((resolve) => {
    const socket = connect({ host: "127.0.0.1", port: 8901 });
    socket.once("connect", () => {
      socket.destroy();
      resolve(true);
    });
    socket.once("error", () => resolve(false));
  });
}

async function waitForService(): Promise<void> {
  // Raw socket probes first: the DOM fetch would log refused connections.
  for (let attempt = 0; attempt < 120; attempt++) {
    if (await portOpen()) {
      const res = await fetch(`${BASE}/healthz`);
      if (res.ok) return;
    }
    await new Promise((r) => setTimeout(r, 500));
  }
  throw new Error("service did not come up on " + BASE);
}

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "fairthresh-e2e-"));
  server = spawn(
    "python3",
    ["-m", "fairthresh.cli", "serve", "--addr", "127.0.0.1:8901", "--data-dir", dataDir],
    { stdio: "ignore" },
  );
  await waitForService();
}, 90_000);

afterAll(async () => {
  server.kill();
  await new Promise((resolve) => {
    server.once("exit", resolve);
    setTimeout(resolve, 3000);
  });
  rmSync(dataDir, { recursive: true, force: true });
});

describe("full workflow against a live service", () => {
  test(
    "data upload, exploration, elicitation, optimization, review",
    async () => {
      const client = new ApiClient(BASE);
      let summary: SessionSummary = await client.createSession({});
      expect(summary.cohort).toBeNull();

      // Step 1: generate the synthetic cohort through the dataset view.
      const container = document.createElement("div");
      document.body.append(container);
      let updated: SessionSummary | null = null;
      const dataset = renderDataset(container, {
        client,
        sessionId: summary.id,
        onUpdated: (next) => {
          updated = next;
        },
      });
      const generate = [...container.querySelectorAll("button")].find(
        (b) => b.textContent === "Generate synthetic cohort",
      );
      generate?.click();
      await dataset.pending;
      expect(updated).not.toBeNull();
      summary = updated as unknown as SessionSummary;
      expect(summary.cohort).toEqual(
        expect.objectContaining({ n_priv: 810, n_unp: 190 }),
      );

      // Step 2: sample a cloud, then flip the positive-utility filter.
      const explore = renderExplore(container, {
        client,
        sessionId: summary.id,
        summary,
        onSampled: () => {},
      });
      const inputs = [...container.querySelectorAll('input[type="number"]')] as HTMLInputElement[];
      const nInput = inputs[0];
      if (nInput) nInput.value = "3000";
      const sampleBtn = [...container.querySelectorAll("button")].find(
        (b) => b.textContent === "Sample cloud",
      );
      sampleBtn?.click();
      await explore.pending;
      const fullCount = explore.points.length;
      expect(fullCount).toBeGreaterThan(50);
      expect(explore.points.every((p) => p.feasible)).toBe(true);

      const toggle = container.querySelector<HTMLInputElement>('[data-testid="positive-only"]');
      if (!toggle) throw new Error("positive-utility toggle missing");
      toggle.checked = true;
      toggle.dispatchEvent(new Event("change"));
      await explore.pending;
      expect(explore.filters.min_utility).toBe(0);
      expect(explore.points.length).toBeGreaterThan(0);
      expect(explore.points.length).toBeLessThan(fullCount);
      expect(explore.points.every((p) => p.utility_per_applicant > 0)).toBe(true);

      // Step 3: balanced ratings; the service answers 0.4 / 0.4 / 0.2.
      summary = await client.getSession(summary.id);
      expect(summary.scales.source).toBe("cloud");
      let jobStarted = false;
      const elicit = renderElicit(container, {
        client,
        sessionId: summary.id,
        summary,
        onJobStarted: () => {
          jobStarted = true;
        },
      });
      const magView = (key: string) =>
        container.querySelector<HTMLSelectElement>(`[data-testid="${key}-magnitude"]`);
      const m1 = magView("util_vs_spd");
      const m2 = magView("util_vs_waod");
      const m3 = magView("spd_vs_waod");
      if (!m1 || !m2 || !m3) throw new Error("magnitude selects missing");
      m1.value = "1";
      m2.value = "2";
      m3.value = "2";
      const compute = [...container.querySelectorAll("button")].find(
        (b) => b.textContent === "Compute weights",
      );
      compute?.click();
      await elicit.pending;
      const weights = container.querySelector('[data-testid="weights"]');
      expect(weights?.textContent).toContain("utility 0.40");
      expect(weights?.textContent).toContain("SPD 0.40");
      expect(weights?.textContent).toContain("WAOD 0.20");

      // Step 4: launch and poll to completion.
      const launch = [...container.querySelectorAll("button")].find(
        (b) => b.textContent === "Start optimization",
      );
      launch?.click();
      await elicit.pending;
      expect(jobStarted).toBe(true);

      const result = renderResult(container, {
        client,
        sessionId: summary.id,
        onRestart: () => {},
        pollIntervalMs: 100,
      });
      await result.settled;

      // Step 5: the review table shows percent thresholds and in-band DI.
      const row = container.querySelector('[data-testid="result-row"]');
      expect(row).not.toBeNull();
      const cells = [...(row?.querySelectorAll("td") ?? [])].map((td) => td.textContent ?? "");
      expect(cells[0]).toBe("0.40 / 0.40 / 0.20");
      expect(cells[1]).toMatch(/^\d+(\.\d)?%$/);
      expect(cells[2]).toMatch(/^\d+(\.\d)?%$/);
      expect(cells[3]).toMatch(/^-?\$[\d,]+\.\d{2}$/);
      const di = Number(cells[6]);
      expect(di).toBeGreaterThanOrEqual(0.8);
      expect(di).toBeLessThanOrEqual(1.25);
      expect(container.querySelector('[data-testid="result-scatter"]')).not.toBeNull();
    },
    120_000,
  );
});
