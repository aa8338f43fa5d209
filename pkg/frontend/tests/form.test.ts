// @vitest-environment jsdom
import { afterEach, beforeEach, describe, expect, test, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { ScreeningForm } from "../src/form.js";
import type { ModelEnvelope } from "../src/types.js";
import { VALID } from "./payloads.js";

const MODEL: ModelEnvelope = {
  model_id: "a".repeat(64),
  algorithm: "neurosvm",
  feature_names: Object.keys(VALID),
  hyperparameters: {},
  format_version: 1,
  created_at: "2025-01-01T00:00:00+00:00",
};

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function mountForm(): ScreeningForm {
  const form = new ScreeningForm(new ApiClient(""), [MODEL]);
  document.body.replaceChildren(form.element);
  return form;
}

function setField(name: string, value: string): void {
  const input = document.getElementById(`field-${name}`) as HTMLInputElement | HTMLSelectElement;
  input.value = value;
  input.dispatchEvent(new Event("input", { bubbles: true }));
  input.dispatchEvent(new Event("change", { bubbles: true }));
}

function fillAllValid(): void {
  for (const [name, value] of Object.entries(VALID)) {
    setField(name, String(value));
  }
}

function submitButton(): HTMLButtonElement {
  return document.querySelector("button[type=submit]") as HTMLButtonElement;
}

describe("screening form", () => {
  beforeEach(() => {
    document.body.replaceChildren();
  });
  afterEach(() => {
    vi.unstubAllGlobals();
  });

  test("renders one control per attribute plus the model picker", () => {
    mountForm();
    for (const name of Object.keys(VALID)) {
      expect(document.getElementById(`field-${name}`)).toBeTruthy();
    }
    expect(document.getElementById("model")).toBeTruthy();
  });

  test("submit stays disabled until every field is valid", () => {
    mountForm();
    expect(submitButton().disabled).toBe(true);
    fillAllValid();
    expect(submitButton().disabled).toBe(false);
  });

  test("clearing a field disables submit and shows an inline message", () => {
    mountForm();
    fillAllValid();
    setField("Age", "");
    expect(submitButton().disabled).toBe(true);
    expect(document.getElementById("error-Age")!.textContent).toContain("required");
  });

  test("verdict renders with a patient-distinct style", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        jsonResponse({
          label: 1,
          label_text: "liver patient",
          score: 0.93,
          model_id: MODEL.model_id,
          algorithm: "neurosvm",
        })
      )
    );
    const form = mountForm();
    fillAllValid();
    await form.submit();
    const verdict = document.querySelector(".verdict") as HTMLElement;
    expect(verdict.hidden).toBe(false);
    expect(verdict.className).toContain("verdict--patient");
    expect(verdict.textContent).toContain("liver patient");
    expect(verdict.textContent).toContain("0.9300");
  });

  test("non-patient verdict uses the clear style", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        jsonResponse({
          label: 2,
          label_text: "non-patient",
          score: 0.31,
          model_id: MODEL.model_id,
          algorithm: "svm",
        })
      )
    );
    const form = mountForm();
    fillAllValid();
    await form.submit();
    expect((document.querySelector(".verdict") as HTMLElement).className).toContain(
      "verdict--clear"
    );
  });

  test("server 400 maps to the named field inline", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        jsonResponse(
          { errors: [{ field: "Alkphos", code: "out_of_range", message: "Alkphos must be >= 0" }] },
          400
        )
      )
    );
    const form = mountForm();
    fillAllValid();
    await form.submit();
    expect(document.getElementById("error-Alkphos")!.textContent).toContain(">= 0");
    expect((document.querySelector(".verdict") as HTMLElement).hidden).toBe(true);
  });

  test("network failure shows a retry banner and preserves entries", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => Promise.reject(new TypeError("fetch failed"))));
    const form = mountForm();
    fillAllValid();
    await form.submit();
    const banner = document.querySelector(".banner") as HTMLElement;
    expect(banner.hidden).toBe(false);
    expect(banner.className).toContain("banner--retry");
    expect(banner.querySelector("button")).toBeTruthy();
    expect((document.getElementById("field-Age") as HTMLInputElement).value).toBe("45");
  });

  test("only one request is in flight; submit disabled while pending", async () => {
    let release: (r: Response) => void = () => {};
    const gate = new Promise<Response>((resolve) => {
      release = resolve;
    });
    const fetchMock = vi.fn(() => gate);
    vi.stubGlobal("fetch", fetchMock);
    const form = mountForm();
    fillAllValid();
    const pending = form.submit();
    expect(submitButton().disabled).toBe(true);
    await form.submit(); // ignored: a request is already running
    expect(fetchMock).toHaveBeenCalledTimes(1);
    release(
      jsonResponse({
        label: 2,
        label_text: "non-patient",
        score: 0.2,
        model_id: MODEL.model_id,
        algorithm: "nb",
      })
    );
    await pending;
    expect(submitButton().disabled).toBe(false);
  });
});
