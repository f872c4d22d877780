// Boot: fetch the model, assemble the three panels, poll the model etag
// and flag results computed against a replaced model as stale.

import { ApiClient } from "./api.js";
import { CostDashboard } from "./dashboard.js";
import { el } from "./dom.js";
import { FcmExplorer } from "./explorer.js";
import { ScenarioPanel } from "./scenario.js";
import {
  ETAG_POLL_MS,
  StalenessTracker,
  WorkbenchState,
  metricSpecs,
} from "./state.js";

export async function boot(root: HTMLElement, api = new ApiClient()): Promise<void> {
  let model;
  try {
    model = await api.model();
  } catch {
    const banner = el("div", { class: "retry-banner" });
    banner.append(el("span", { text: "cannot reach the service — " }));
    const retry = el("button", { text: "retry" });
    retry.addEventListener("click", () => {
      root.textContent = "";
      void boot(root, api);
    });
    banner.append(retry);
    root.append(banner);
    return;
  }

  const { document: doc, etag } = model;
  const frm = doc.frms.find((f) => f.name === "itil") ?? doc.frms[0];
  const ruleBase = doc.rule_bases[0];
  const state = new WorkbenchState(
    metricSpecs(doc.variables),
    frm?.domain ?? [],
  );
  state.modelEtag = etag;
  const staleness = new StalenessTracker();
  staleness.updateLiveEtag(etag);

  const outputVariable = doc.variables.find((v) => v.name === ruleBase?.output);
  const dashboard = new CostDashboard(api, state, staleness, outputVariable);
  const scenario = new ScenarioPanel(api, state, staleness);
  dashboard.onMetricsChanged(() => void scenario.refresh());

  root.append(dashboard.root, scenario.root);

  const binaryFcm = doc.fcms.find((f) => f.mode === "binary") ?? doc.fcms[0];
  if (binaryFcm) {
    root.append(new FcmExplorer(api, state, binaryFcm).root);
  }

  await dashboard.evaluate();
  await scenario.refresh();

  setInterval(async () => {
    try {
      const liveEtag = await api.modelEtag();
      staleness.updateLiveEtag(liveEtag);
      for (const [panel, host] of [
        ["dashboard", dashboard.root],
        ["scenario", scenario.root],
      ] as const) {
        host.classList.toggle("stale", staleness.isStale(panel));
      }
    } catch {
      // poll failures leave the last staleness flags in place
    }
  }, ETAG_POLL_MS);
}

declare global {
  interface Window {
    fcmgapBoot?: typeof boot;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  window.fcmgapBoot = boot;
  void boot(document.getElementById("app")!);
}
