import { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";
import { STEP_LABELS, STEP_ORDER, Step, reachableSteps, stepFromSummary } from "./state.js";
import type { SessionSummary } from "./types.js";
import { renderDataset } from "./views/dataset.js";
import { renderElicit } from "./views/elicit.js";
import { renderExplore } from "./views/explore.js";
import { renderResult } from "./views/result.js";

function sessionIdFromHash(): string | null {
  const match = /#s=([0-9a-f-]+)/.exec(location.hash);
  return match?.[1] ?? null;
}

export async function startApp(root: Element, client = new ApiClient("")): Promise<void> {
  let summary: SessionSummary;
  const existing = sessionIdFromHash();
  if (existing !== null) {
    summary = await client.getSession(existing);
  } else {
    summary = await client.createSession({});
    location.hash = `#s=${summary.id}`;
  }

  const nav = el("nav", { class: "steps" });
  const main = el("main", { class: "content" });
  clear(root);
  root.append(el("h1", { text: "Group-threshold fairness optimizer" }), nav, main);

  let active: Step = stepFromSummary(summary);

  const refresh = async (): Promise<void> => {
    summary = await client.getSession(summary.id);
    render();
  };

  function renderNav(): void {
    clear(nav);
    const reachable = new Set(reachableSteps(summary));
    for (const step of STEP_ORDER) {
      const button = el("button", {
        type: "button",
        text: STEP_LABELS[step],
        class: step === active ? "step active" : "step",
      });
      if (!reachable.has(step)) button.setAttribute("disabled", "");
      button.addEventListener("click", () => {
        active = step;
        render();
      });
      nav.append(button);
    }
  }

  function render(): void {
    renderNav();
    switch (active) {
      case Step.NeedData:
        renderDataset(main, {
          client,
          sessionId: summary.id,
          onUpdated: (next) => {
            summary = next;
            active = stepFromSummary(summary);
            render();
          },
        });
        break;
      case Step.Explore:
        renderExplore(main, {
          client,
          sessionId: summary.id,
          summary,
          onSampled: () => {
            void refresh();
          },
        });
        break;
      case Step.Elicit:
        renderElicit(main, {
          client,
          sessionId: summary.id,
          summary,
          onJobStarted: () => {
            active = Step.Optimizing;
            render();
          },
        });
        break;
      case Step.Optimizing:
      case Step.Review:
        renderResult(main, {
          client,
          sessionId: summary.id,
          onRestart: () => {
            active = Step.Elicit;
            void refresh().then(() => {
              active = Step.Elicit;
              render();
            });
          },
        });
        break;
    }
  }

  render();
}

if (typeof document !== "undefined" && document.getElementById("app") !== null) {
  const root = document.getElementById("app");
  if (root) {
    startApp(root).catch((err) => {
      root.textContent = `failed to start: ${err}`;
    });
  }
}
