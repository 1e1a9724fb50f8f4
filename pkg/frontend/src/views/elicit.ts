import type { ApiClient } from "../api.js";
import { clear, el } from "../dom.js";
import { formatCr, formatDollars, formatWeight } from "../format.js";
import type { JobState, Ratings, RatingsResponse, SessionSummary } from "../types.js";

export interface ElicitDeps {
  client: ApiClient;
  sessionId: string;
  summary: SessionSummary;
  onJobStarted: (job: JobState) => void;
}

export interface ElicitView {
  element: HTMLElement;
  pending: Promise<void> | null;
  /** Ratings as they would be submitted; exposed for tests. */
  currentRatings(): Ratings;
}

interface Question {
  key: keyof Ratings;
  first: string;
  second: string;
  prompt: string;
}

/** Loan-domain phrasing; the metric names stay in a hover hint only. */
function questions(summary: SessionSummary): Question[] {
  const { s_util, s_spd, s_waod } = summary.scales;
  const util = `${formatDollars(s_util, 0)} more profit per applicant`;
  const spdStep = `${s_spd.toFixed(3)} less approval-rate gap between groups`;
  const waodStep = `${s_waod.toFixed(3)} less error-rate gap between groups`;
  return [
    {
      key: "util_vs_spd",
      first: "Profit",
      second: "Approval parity",
      prompt: `Which matters more: ${util}, or ${spdStep}?`,
    },
    {
      key: "util_vs_waod",
      first: "Profit",
      second: "Error parity",
      prompt: `Which matters more: ${util}, or ${waodStep}?`,
    },
    {
      key: "spd_vs_waod",
      first: "Approval parity",
      second: "Error parity",
      prompt: `Which matters more: ${spdStep}, or ${waodStep}?`,
    },
  ];
}

const MAGNITUDES = ["1", "2", "3", "4", "5", "6", "7", "8", "9"];

/** Step 3: three pairwise questions with live consistency feedback. */
export function renderElicit(container: Element, deps: ElicitDeps): ElicitView {
  const root = el("section", { class: "view view-elicit" });

  const controls: Record<keyof Ratings, { direction: HTMLSelectElement; magnitude: HTMLSelectElement }> =
    {} as never;

  const questionBlocks = questions(deps.summary).map((q) => {
    const direction = el("select", { "data-testid": `${q.key}-direction` });
    direction.append(
      el("option", { value: "first", text: q.first }),
      el("option", { value: "second", text: q.second }),
    );
    const magnitude = el("select", { "data-testid": `${q.key}-magnitude` });
    for (const m of MAGNITUDES) magnitude.append(el("option", { value: m, text: m === "1" ? "1 (equal)" : m }));
    controls[q.key] = { direction, magnitude };
    return el(
      "fieldset",
      { class: "question" },
      el("legend", { text: q.prompt }),
      el("label", { text: "more important: " }, direction),
      el("label", { text: "by how much (1-9): " }, magnitude),
    );
  });

  const crBadge = el("span", { class: "cr-badge", "data-testid": "cr-badge", hidden: "" });
  const message = el("p", { class: "message", "data-testid": "elicit-message" });
  const weightsOut = el("div", { class: "weights", "data-testid": "weights", hidden: "" });
  const error = el("p", { class: "error", role: "alert", hidden: "" });
  const submitBtn = el("button", { type: "button", text: "Compute weights" });
  const launchBtn = el("button", { type: "button", text: "Start optimization", disabled: "" });
  const scaleNote =
    deps.summary.scales.source === "cloud"
      ? "Anchors derived from the sampled trade-off cloud."
      : "Anchors are defaults; sample a cloud for data-driven ones.";

  const view: ElicitView = {
    element: root,
    pending: null,
    currentRatings(): Ratings {
      const rating = (key: keyof Ratings): number => {
        const m = Number(controls[key].magnitude.value);
        // Preferring the second criterion inverts the rating to 1/x.
        return controls[key].direction.value === "first" ? m : 1 / m;
      };
      return {
        util_vs_spd: rating("util_vs_spd"),
        util_vs_waod: rating("util_vs_waod"),
        spd_vs_waod: rating("spd_vs_waod"),
      };
    },
  };

  function showOutcome(outcome: RatingsResponse): void {
    crBadge.removeAttribute("hidden");
    crBadge.textContent = formatCr(outcome.cr);
    crBadge.classList.toggle("cr-bad", !outcome.consistent);
    crBadge.classList.toggle("cr-ok", outcome.consistent);
    message.textContent = outcome.message;
    if (outcome.consistent) {
      weightsOut.removeAttribute("hidden");
      clear(weightsOut);
      const [wU, wS, wW] = outcome.weights;
      weightsOut.append(
        el("span", { class: "weight", text: `utility ${formatWeight(wU)}` }),
        el("span", { class: "weight", text: `SPD ${formatWeight(wS)}` }),
        el("span", { class: "weight", text: `WAOD ${formatWeight(wW)}` }),
      );
      launchBtn.removeAttribute("disabled");
    } else {
      weightsOut.setAttribute("hidden", "");
      launchBtn.setAttribute("disabled", "");
    }
  }

  submitBtn.addEventListener("click", () => {
    const ratings = view.currentRatings();
    view.pending = deps.client
      .submitRatings(deps.sessionId, ratings)
      .then((outcome) => {
        error.setAttribute("hidden", "");
        showOutcome(outcome);
      })
      .catch((err) => {
        // Network or validation failure: keep the entered ratings editable.
        error.removeAttribute("hidden");
        error.textContent = String(err instanceof Error ? err.message : err);
      });
  });

  launchBtn.addEventListener("click", () => {
    view.pending = deps.client
      .startOptimization(deps.sessionId, {})
      .then((job) => deps.onJobStarted(job))
      .catch((err) => {
        error.removeAttribute("hidden");
        error.textContent = String(err instanceof Error ? err.message : err);
      });
  });

  if (deps.summary.weights !== null) {
    showOutcome({
      ...deps.summary.weights,
      message: "stored weights from an earlier consistent rating",
      persisted: true,
      directive: null,
    });
  }

  root.append(
    el("h2", { text: "Preference elicitation" }),
    el("p", { class: "hint", text: scaleNote }),
    ...questionBlocks,
    el("div", { class: "row" }, submitBtn, crBadge),
    message,
    weightsOut,
    error,
    el("div", { class: "row" }, launchBtn),
  );
  clear(container);
  container.append(root);
  return view;
}
