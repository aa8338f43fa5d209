/** Page wiring: one screening form, one model dashboard. */

import { ApiClient } from "./api.js";
import { Dashboard } from "./dashboard.js";
import { ScreeningForm } from "./form.js";

declare global {
  interface Window {
    LIVERSCREEN_API?: string;
  }
}

async function start(): Promise<void> {
  const api = new ApiClient(window.LIVERSCREEN_API ?? "");
  const formRoot = document.getElementById("screening")!;
  const dashboardRoot = document.getElementById("dashboard")!;

  const dashboard = new Dashboard(api);
  dashboardRoot.appendChild(dashboard.element);
  await dashboard.load();

  try {
    const models = await api.getModels();
    if (models.length === 0) {
      formRoot.textContent = "No models available; populate a store first.";
      return;
    }
    formRoot.appendChild(new ScreeningForm(api, models).element);
  } catch {
    formRoot.textContent = "Screening service unreachable.";
  }
}

void start();
