import type { ApiClient } from "../api.js";
import { clear, el } from "../dom.js";
import { binThresholds, drawHeatmap, type HeatMetric } from "../heatmap.js";
import { drawScatter, hitTest, scatterLayout, type Canvas2D } from "../scatter.js";
import { formatDollars, formatMetric, formatRatio, formatPercent } from "../format.js";
import type { SessionSummary, TradeoffFilters, TradeoffPoint } from "../types.js";

export interface ExploreDeps {
  client: ApiClient;
  sessionId: string;
  summary: SessionSummary;
  onSampled: () => void;
}

export interface ExploreView {
  element: HTMLElement;
  pending: Promise<void> | null;
  /** Last filters sent to the service; exposed for tests. */
  filters: TradeoffFilters;
  points: TradeoffPoint[];
  refresh(): Promise<void>;
}

/** The browser renders at most this many points; the service keeps the rest. */
const POINT_CAP = 10_000;
const PAGE_SIZE = 2_000;

async function fetchPoints(
  client: ApiClient,
  sessionId: string,
  filters: TradeoffFilters,
): Promise<{ points: TradeoffPoint[]; total: number; sampled: number }> {
  const points: TradeoffPoint[] = [];
  let page = 1;
  let total = 0;
  let sampled = 0;
  for (;;) {
    const chunk = await client.getTradeoff(sessionId, {
      ...filters,
      page,
      page_size: PAGE_SIZE,
    });
    points.push(...chunk.points);
    total = chunk.total_points;
    sampled = chunk.sample_count;
    if (page >= chunk.page_count || points.length >= POINT_CAP) break;
    page += 1;
  }
  return { points: points.slice(0, POINT_CAP), total, sampled };
}

/** Step 2: sample the threshold cloud and explore it with metric filters. */
export function renderExplore(container: Element, deps: ExploreDeps): ExploreView {
  const root = el("section", { class: "view view-explore" });

  const status = el("p", { class: "status", "data-testid": "explore-status" });
  const empty = el("p", { class: "placeholder", hidden: "", text: "No models match the current filters." });
  const error = el("p", { class: "error", role: "alert", hidden: "" });
  const tooltip = el("div", { class: "tooltip", hidden: "", "data-testid": "tooltip" });

  const nInput = el("input", { type: "number", value: "10000", min: "1" });
  const seedInput = el("input", { type: "number", value: "0", min: "0" });
  const keepInput = el("input", { type: "checkbox" });
  const sampleBtn = el("button", { type: "button", text: "Sample cloud" });

  const minUtil = el("input", { type: "number", step: "any", "data-testid": "min-utility" });
  const positiveOnly = el("input", { type: "checkbox", "data-testid": "positive-only" });
  const maxSpd = el("input", { type: "number", step: "any", min: "0" });
  const maxWaod = el("input", { type: "number", step: "any", min: "0" });
  const feasibleOnly = el("input", { type: "checkbox", "data-testid": "feasible-only" });

  const scatterCanvas = el("canvas", { width: "460", height: "360", "data-testid": "scatter" });
  const heatCanvases: Record<HeatMetric, HTMLCanvasElement> = {
    spd: el("canvas", { width: "240", height: "240" }),
    waod: el("canvas", { width: "240", height: "240" }),
    utility_per_applicant: el("canvas", { width: "240", height: "240" }),
  };

  const view: ExploreView = {
    element: root,
    pending: null,
    filters: {},
    points: [],
    refresh: () => runRefresh(),
  };

  function currentFilters(): TradeoffFilters {
    const filters: TradeoffFilters = {};
    if (positiveOnly.checked) filters.min_utility = 0;
    else if (minUtil.value !== "") filters.min_utility = Number(minUtil.value);
    if (maxSpd.value !== "") filters.max_abs_spd = Number(maxSpd.value);
    if (maxWaod.value !== "") filters.max_abs_waod = Number(maxWaod.value);
    if (feasibleOnly.checked) filters.feasible_only = true;
    return filters;
  }

  function draw(points: TradeoffPoint[]): void {
    const layout = scatterLayout(points, { width: 460, height: 360 });
    const ctx = scatterCanvas.getContext("2d") as Canvas2D | null;
    if (ctx) drawScatter(ctx, points, layout, { xLabel: "SPD", yLabel: "WAOD" });
    for (const [metric, canvas] of Object.entries(heatCanvases) as [HeatMetric, HTMLCanvasElement][]) {
      const hctx = canvas.getContext("2d") as Canvas2D | null;
      if (hctx) drawHeatmap(hctx, binThresholds(points, metric), { title: metric });
    }
    scatterCanvas.onmousemove = (ev: MouseEvent) => {
      const rect = scatterCanvas.getBoundingClientRect();
      const hit = hitTest(points, layout, ev.clientX - rect.left, ev.clientY - rect.top);
      if (hit === null) {
        tooltip.setAttribute("hidden", "");
        return;
      }
      tooltip.removeAttribute("hidden");
      tooltip.textContent =
        `t_unp ${formatPercent(hit.t_unp)}  t_priv ${formatPercent(hit.t_priv)}  ` +
        `SPD ${formatMetric(hit.spd)}  WAOD ${formatMetric(hit.waod)}  ` +
        `DI ${formatRatio(hit.di_ratio)}  utility/applicant ${formatDollars(hit.utility_per_applicant)}`;
    };
  }

  async function runRefresh(): Promise<void> {
    const filters = currentFilters();
    try {
      const { points, total, sampled } = await fetchPoints(deps.client, deps.sessionId, filters);
      view.filters = filters;
      view.points = points;
      error.setAttribute("hidden", "");
      status.textContent =
        `showing ${points.length} of ${total} matching models (sampled ${sampled} threshold pairs)`;
      if (points.length === 0) empty.removeAttribute("hidden");
      else empty.setAttribute("hidden", "");
      draw(points);
    } catch (err) {
      error.removeAttribute("hidden");
      error.textContent = String(err instanceof Error ? err.message : err);
    }
  }

  sampleBtn.addEventListener("click", () => {
    view.pending = (async () => {
      try {
        await deps.client.sampleTradeoff(deps.sessionId, {
          n: Number(nInput.value),
          seed: Number(seedInput.value),
          keep_infeasible: keepInput.checked,
        });
        await runRefresh();
        deps.onSampled();
      } catch (err) {
        error.removeAttribute("hidden");
        error.textContent = String(err instanceof Error ? err.message : err);
      }
    })();
  });
  for (const input of [minUtil, positiveOnly, maxSpd, maxWaod, feasibleOnly]) {
    input.addEventListener("change", () => {
      view.pending = runRefresh();
    });
  }

  root.append(
    el("h2", { text: "Fairness-utility trade-off" }),
    el(
      "div",
      { class: "row controls-sample" },
      el("label", { text: "pairs " }, nInput),
      el("label", { text: "seed " }, seedInput),
      el("label", { text: "keep infeasible " }, keepInput),
      sampleBtn,
    ),
    el(
      "div",
      { class: "row controls-filter" },
      el("label", { text: "min utility/applicant ($) " }, minUtil),
      el("label", { text: "positive utility only " }, positiveOnly),
      el("label", { text: "max |SPD| " }, maxSpd),
      el("label", { text: "max |WAOD| " }, maxWaod),
      el("label", { text: "feasible only " }, feasibleOnly),
    ),
    status,
    empty,
    error,
    el("div", { class: "plots" }, scatterCanvas, tooltip),
    el(
      "div",
      { class: "plots heatmaps" },
      heatCanvases.spd,
      heatCanvases.waod,
      heatCanvases.utility_per_applicant,
    ),
  );
  clear(container);
  container.append(root);

  if (deps.summary.cloud !== null) view.pending = runRefresh();
  return view;
}
