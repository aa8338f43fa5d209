// @vitest-environment jsdom
import { afterEach, describe, expect, test, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { Dashboard, sortRows, type DashboardRow } from "../src/dashboard.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function envelope(id: string, algorithm: string): Record<string, unknown> {
  return {
    model_id: id,
    algorithm,
    feature_names: [],
    hyperparameters: {},
    format_version: 1,
    created_at: "2025-01-01T00:00:00+00:00",
  };
}

function metricsBody(id: string, accuracy: number, rmse: number, mape: number) {
  return {
    model_id: id,
    report: { n: 10, accuracy, confusion: [[1, 0], [0, 1]], rmse, mape, roc: null, auc: null },
  };
}

const IDS = { nb: "1".repeat(64), svm: "2".repeat(64), rf: "3".repeat(64) };

function stubStore(withMetrics: boolean): void {
  vi.stubGlobal(
    "fetch",
    vi.fn(async (url: string) => {
      const path = String(url);
      if (path.endsWith("/models")) {
        return jsonResponse({
          models: [envelope(IDS.nb, "nb"), envelope(IDS.svm, "svm"), envelope(IDS.rf, "rf")],
        });
      }
      if (path.includes(`/models/${IDS.nb}/metrics`)) {
        return withMetrics
          ? jsonResponse(metricsBody(IDS.nb, 0.54, 0.68, 0.44))
          : jsonResponse({ errors: [] }, 404);
      }
      if (path.includes(`/models/${IDS.svm}/metrics`)) {
        return jsonResponse(metricsBody(IDS.svm, 0.75, 0.5, 0.13));
      }
      if (path.includes(`/models/${IDS.rf}/metrics`)) {
        return jsonResponse({ errors: [] }, 404);
      }
      return jsonResponse({ errors: [] }, 404);
    })
  );
}

describe("sortRows", () => {
  const rows: DashboardRow[] = [
    { model_id: "a", algorithm: "nb", created_at: "", accuracy: 0.54, rmse: 0.68, mape: 0.44 },
    { model_id: "b", algorithm: "svm", created_at: "", accuracy: 0.75, rmse: 0.5, mape: 0.13 },
    { model_id: "c", algorithm: "rf", created_at: "", accuracy: null, rmse: null, mape: null },
  ];

  test("accuracy descending puts the best model first and gaps last", () => {
    const sorted = sortRows(rows, "accuracy", true);
    expect(sorted.map((r) => r.model_id)).toEqual(["b", "a", "c"]);
  });

  test("ascending still keeps unevaluated rows last", () => {
    const sorted = sortRows(rows, "accuracy", false);
    expect(sorted.map((r) => r.model_id)).toEqual(["a", "b", "c"]);
  });

  test("rmse sorting works both ways", () => {
    expect(sortRows(rows, "rmse", false)[0]!.model_id).toBe("b");
    expect(sortRows(rows, "rmse", true)[0]!.model_id).toBe("a");
  });
});

describe("dashboard rendering", () => {
  afterEach(() => vi.unstubAllGlobals());

  test("empty store shows the empty state", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => jsonResponse({ models: [] })));
    const dash = new Dashboard(new ApiClient(""));
    document.body.replaceChildren(dash.element);
    await dash.load();
    expect(document.querySelector(".empty-state")!.textContent).toContain("No models stored yet");
  });

  test("rows render with metrics and not-evaluated markers", async () => {
    stubStore(true);
    const dash = new Dashboard(new ApiClient(""));
    document.body.replaceChildren(dash.element);
    await dash.load();
    const rows = [...document.querySelectorAll("tr[data-model]")];
    expect(rows).toHaveLength(3);
    // default sort: accuracy descending -> svm first
    expect(rows[0]!.getAttribute("data-model")).toBe(IDS.svm);
    expect(rows[0]!.textContent).toContain("75.00%");
    const unevaluated = rows.find((r) => r.getAttribute("data-model") === IDS.rf)!;
    expect(unevaluated.textContent).toContain("not evaluated");
  });

  test("clicking the accuracy header toggles the direction", async () => {
    stubStore(true);
    const dash = new Dashboard(new ApiClient(""));
    document.body.replaceChildren(dash.element);
    await dash.load();
    const accuracyButton = [...document.querySelectorAll("th button")].find((b) =>
      b.textContent!.startsWith("Accuracy")
    ) as HTMLButtonElement;
    accuracyButton.click();
    const rows = [...document.querySelectorAll("tr[data-model]")];
    expect(rows[0]!.getAttribute("data-model")).toBe(IDS.nb); // ascending now
  });
});
