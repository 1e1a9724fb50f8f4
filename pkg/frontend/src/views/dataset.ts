import type { ApiClient } from "../api.js";
import { ServiceError } from "../api.js";
import { clear, el } from "../dom.js";
import type { SessionSummary } from "../types.js";

export interface DatasetDeps {
  client: ApiClient;
  sessionId: string;
  onUpdated: (summary: SessionSummary) => void;
}

export interface DatasetView {
  element: HTMLElement;
  pending: Promise<void> | null;
}

/** Step 1: bring a cohort into the session, by CSV upload or by asking the
 * service to generate a synthetic one. */
export function renderDataset(container: Element, deps: DatasetDeps): DatasetView {
  const root = el("section", { class: "view view-dataset" });
  const view: DatasetView = { element: root, pending: null };

  const error = el("p", { class: "error", role: "alert", hidden: "" });
  const showError = (err: unknown) => {
    error.removeAttribute("hidden");
    if (err instanceof ServiceError) {
      const row =
        err.detail && typeof err.detail === "object" && "row" in err.detail
          ? ` (row ${(err.detail as { row: unknown }).row})`
          : "";
      error.textContent = `${err.message}${row}`;
    } else {
      error.textContent = String(err);
    }
  };

  // The dataset route answers with cohort counts only; the step change needs
  // the refreshed session summary.
  const finish = async () => {
    const summary = await deps.client.getSession(deps.sessionId);
    error.setAttribute("hidden", "");
    deps.onUpdated(summary);
  };

  const fileInput = el("input", { type: "file", accept: ".csv,text/csv" });
  const uploadBtn = el("button", { type: "button", text: "Upload CSV" });
  uploadBtn.addEventListener("click", () => {
    const file = fileInput.files?.[0];
    if (!file) {
      error.removeAttribute("hidden");
      error.textContent = "choose a CSV file first";
      return;
    }
    view.pending = deps.client
      .uploadCohortFile(deps.sessionId, file)
      .then(finish)
      .catch(showError);
  });

  const nInput = el("input", { type: "number", value: "1000", min: "2", "data-testid": "synthetic-n" });
  const seedInput = el("input", { type: "number", value: "7", min: "0", "data-testid": "synthetic-seed" });
  const generateBtn = el("button", { type: "button", text: "Generate synthetic cohort" });
  generateBtn.addEventListener("click", () => {
    view.pending = deps.client
      .generateSyntheticCohort(deps.sessionId, {
        n_total: Number(nInput.value),
        seed: Number(seedInput.value),
      })
      .then(finish)
      .catch(showError);
  });

  root.append(
    el("h2", { text: "Cohort data" }),
    el(
      "p",
      { class: "hint" },
      "Upload a scored cohort (columns: score, label, group) or generate the built-in synthetic cohort.",
    ),
    el("div", { class: "row" }, fileInput, uploadBtn),
    el(
      "div",
      { class: "row" },
      el("label", { text: "records " }, nInput),
      el("label", { text: "seed " }, seedInput),
      generateBtn,
    ),
    error,
  );
  clear(container);
  container.append(root);
  return view;
}
