import type { ApiClient } from "../api.js";
import { clear, el } from "../dom.js";
import { formatDollars, formatMetric, formatPercent, formatRatio, formatWeight } from "../format.js";
import { pollJob } from "../poll.js";
import { drawScatter, scatterLayout, type Canvas2D } from "../scatter.js";
import type { JobState, OptimizationOutcome, TradeoffPoint } from "../types.js";

export interface ResultDeps {
  client: ApiClient;
  sessionId: string;
  onRestart: () => void;
  pollIntervalMs?: number;
  pollSleep?: (ms: number) => Promise<void>;
}

export interface ResultView {
  element: HTMLElement;
  /** Resolves when the job reaches a terminal state and the view settled. */
  settled: Promise<void>;
}

function trialPoint(t: OptimizationOutcome["trials"][number]): TradeoffPoint {
  return {
    t_unp: t.t_unp,
    t_priv: t.t_priv,
    spd: t.spd,
    waod: t.waod,
    di_ratio: t.di_ratio,
    utility_total: t.utility_total,
    utility_per_applicant: t.utility_per_applicant,
    feasible: t.feasible,
  };
}

function resultRow(outcome: OptimizationOutcome): HTMLTableElement {
  const best = outcome.best;
  const [wU, wS, wW] = outcome.objective.weights;
  const table = el("table", { class: "result-table", "data-testid": "result-table" });
  const header = el("tr", {});
  const row = el("tr", { "data-testid": "result-row" });
  const cells: [string, string][] = [
    ["Weights (U/S/W)", `${formatWeight(wU)} / ${formatWeight(wS)} / ${formatWeight(wW)}`],
    ["t_unp", formatPercent(best.t_unp)],
    ["t_priv", formatPercent(best.t_priv)],
    ["Utility/applicant", formatDollars(best.utility_per_applicant)],
    ["SPD", formatMetric(best.spd)],
    ["WAOD", formatMetric(best.waod)],
    ["DI ratio", formatRatio(best.di_ratio)],
    ["Objective", best.objective === null ? "n/a" : best.objective.toFixed(4)],
  ];
  for (const [name, value] of cells) {
    header.append(el("th", { text: name }));
    row.append(el("td", { text: value }));
  }
  table.append(header, row);
  return table;
}

function downloadLink(filename: string, mime: string, content: string, label: string): HTMLAnchorElement {
  const link = el("a", { download: filename, text: label, class: "download" });
  link.href = URL.createObjectURL(new Blob([content], { type: mime }));
  return link;
}

function bestRowCsv(outcome: OptimizationOutcome): string {
  const b = outcome.best;
  const header = "t_unp,t_priv,spd,waod,di_ratio,utility_total,utility_per_applicant,objective";
  const di = b.di_ratio === null ? "" : String(b.di_ratio);
  const obj = b.objective === null ? "" : String(b.objective);
  return `${header}\n${b.t_unp},${b.t_priv},${b.spd},${b.waod},${di},${b.utility_total},${b.utility_per_applicant},${obj}\n`;
}

/** Steps 4-5: progress while the job runs, then the optimal model. */
export function renderResult(container: Element, deps: ResultDeps): ResultView {
  const root = el("section", { class: "view view-result" });
  const progressOuter = el("div", { class: "progress", "data-testid": "progress" });
  const progressInner = el("div", { class: "progress-inner" });
  progressOuter.append(progressInner);
  const statusLine = el("p", { class: "status", "data-testid": "job-status" });
  const body = el("div", { class: "result-body" });
  root.append(el("h2", { text: "Optimization" }), statusLine, progressOuter, body);
  clear(container);
  container.append(root);

  const showProgress = (job: JobState) => {
    const frac = job.total > 0 ? job.completed / job.total : 0;
    progressInner.style.width = `${Math.round(frac * 100)}%`;
    statusLine.textContent = `${job.status}: ${job.completed}/${job.total} trials`;
  };

  const showFailure = (text: string) => {
    statusLine.textContent = "failed";
    const restart = el("button", { type: "button", text: "Back to preferences" });
    restart.addEventListener("click", () => deps.onRestart());
    clear(body);
    body.append(el("p", { class: "error", role: "alert", text: text }), restart);
  };

  const showDone = (outcome: OptimizationOutcome) => {
    statusLine.textContent = `done: best of ${outcome.n_trials} trials (${outcome.n_feasible} feasible)`;
    progressInner.style.width = "100%";
    clear(body);
    const canvas = el("canvas", { width: "460", height: "360", "data-testid": "result-scatter" });
    const points = outcome.trials.filter((t) => t.feasible).map(trialPoint);
    const layout = scatterLayout(points, { width: 460, height: 360 });
    const ctx = canvas.getContext("2d") as Canvas2D | null;
    if (ctx) drawScatter(ctx, points, layout, {}, trialPoint(outcome.best));
    body.append(
      resultRow(outcome),
      el(
        "div",
        { class: "row" },
        downloadLink("result.json", "application/json", JSON.stringify(outcome, null, 1), "Download JSON"),
        downloadLink("best.csv", "text/csv", bestRowCsv(outcome), "Download best row CSV"),
      ),
      el("p", { class: "hint", text: "Feasible trials, best circled:" }),
      canvas,
    );
  };

  const settled = (async () => {
    try {
      const job = await pollJob(deps.client, deps.sessionId, {
        intervalMs: deps.pollIntervalMs ?? 500,
        onTick: showProgress,
        ...(deps.pollSleep ? { sleep: deps.pollSleep } : {}),
      });
      if (job.status === "failed") {
        showFailure(job.error ?? "optimization failed");
        return;
      }
      showDone(await deps.client.getResult(deps.sessionId));
    } catch (err) {
      showFailure(String(err instanceof Error ? err.message : err));
    }
  })();

  return { element: root, settled };
}
