/**
 * The screening form: ten biomarker inputs, a model picker, one verdict.
 *
 * All decision logic lives on the server; this component only mirrors the
 * validation rules (so invalid submissions are blocked up front), posts the
 * request, and renders whatever comes back. One request is in flight at a
 * time; the submit button stays disabled while waiting.
 */

import { ApiClient, ApiRejection } from "./api.js";
import type { ApiFieldError, ModelEnvelope, PredictResponse } from "./types.js";
import { FIELDS, validateAttributes, validateField } from "./validation.js";

export class ScreeningForm {
  readonly element: HTMLFormElement;
  private readonly inputs = new Map<string, HTMLInputElement | HTMLSelectElement>();
  private readonly fieldErrors = new Map<string, HTMLElement>();
  private readonly modelSelect: HTMLSelectElement;
  private readonly submitButton: HTMLButtonElement;
  private readonly verdict: HTMLElement;
  private readonly banner: HTMLElement;
  private inFlight = false;

  constructor(private readonly api: ApiClient, models: ModelEnvelope[]) {
    this.element = document.createElement("form");
    this.element.className = "screening-form";
    this.element.noValidate = true;

    this.modelSelect = document.createElement("select");
    this.modelSelect.id = "model";
    for (const m of models) {
      const option = document.createElement("option");
      option.value = m.model_id;
      option.textContent = `${m.algorithm} (${m.model_id.slice(0, 12)})`;
      this.modelSelect.appendChild(option);
    }
    this.element.appendChild(labeled("Model", this.modelSelect));

    for (const field of FIELDS) {
      let input: HTMLInputElement | HTMLSelectElement;
      if (field.kind === "gender") {
        input = document.createElement("select");
        for (const value of ["", "Female", "Male"]) {
          const option = document.createElement("option");
          option.value = value;
          option.textContent = value === "" ? "choose" : value;
          input.appendChild(option);
        }
      } else {
        input = document.createElement("input");
        input.type = "number";
        input.min = "0";
        input.step = "any";
      }
      input.id = `field-${field.name}`;
      input.setAttribute("data-field", field.name);
      input.addEventListener("input", () => this.onFieldChange(field.name));
      input.addEventListener("change", () => this.onFieldChange(field.name));
      this.inputs.set(field.name, input);

      const hint = field.unit ? ` (${field.unit})` : "";
      const row = labeled(`${field.label}${hint}`, input);
      const error = document.createElement("span");
      error.className = "field-error";
      error.id = `error-${field.name}`;
      row.appendChild(error);
      this.fieldErrors.set(field.name, error);
      this.element.appendChild(row);
    }

    this.submitButton = document.createElement("button");
    this.submitButton.type = "submit";
    this.submitButton.textContent = "Screen patient";
    this.submitButton.disabled = true;
    this.element.appendChild(this.submitButton);

    this.banner = document.createElement("div");
    this.banner.className = "banner";
    this.banner.hidden = true;
    this.element.appendChild(this.banner);

    this.verdict = document.createElement("div");
    this.verdict.className = "verdict";
    this.verdict.hidden = true;
    this.element.appendChild(this.verdict);

    this.element.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });
  }

  private rawValue(name: string): unknown {
    const input = this.inputs.get(name)!;
    return input.value;
  }

  private attributes(): Record<string, unknown> {
    const out: Record<string, unknown> = {};
    for (const field of FIELDS) {
      out[field.name] = this.rawValue(field.name);
    }
    return out;
  }

  private onFieldChange(name: string): void {
    const error = validateField(name, this.rawValue(name));
    this.showFieldError(name, error ? error.message : "");
    this.refreshSubmitState();
  }

  private showFieldError(name: string, message: string): void {
    const slot = this.fieldErrors.get(name);
    if (slot) slot.textContent = message;
  }

  private allValid(): boolean {
    return validateAttributes(this.attributes()).errors.length === 0;
  }

  private refreshSubmitState(): void {
    this.submitButton.disabled = this.inFlight || !this.allValid() || !this.modelSelect.value;
  }

  async submit(): Promise<void> {
    if (this.inFlight || !this.allValid() || !this.modelSelect.value) return;
    this.inFlight = true;
    this.refreshSubmitState();
    this.banner.hidden = true;
    try {
      const response = await this.api.predict(this.modelSelect.value, this.attributes());
      this.renderVerdict(response);
    } catch (err) {
      this.verdict.hidden = true;
      if (err instanceof ApiRejection) {
        this.applyServerErrors(err.errors);
      } else {
        this.showRetryBanner();
      }
    } finally {
      this.inFlight = false;
      this.refreshSubmitState();
    }
  }

  private renderVerdict(response: PredictResponse): void {
    const isPatient = response.label === 1;
    this.verdict.hidden = false;
    this.verdict.className = `verdict ${isPatient ? "verdict--patient" : "verdict--clear"}`;
    this.verdict.replaceChildren();
    const headline = document.createElement("strong");
    headline.textContent = response.label_text;
    const detail = document.createElement("span");
    detail.textContent = ` score ${response.score.toFixed(4)} | model ${response.algorithm ?? "?"} ${response.model_id.slice(0, 12)}`;
    this.verdict.append(headline, detail);
  }

  private applyServerErrors(errors: ApiFieldError[]): void {
    let unattached = 0;
    for (const e of errors) {
      if (e.field && this.fieldErrors.has(e.field)) {
        this.showFieldError(e.field, e.message);
      } else {
        unattached += 1;
      }
    }
    if (unattached > 0 || errors.length === 0) {
      this.banner.hidden = false;
      this.banner.className = "banner banner--error";
      this.banner.textContent = "The server rejected the request.";
    }
  }

  private showRetryBanner(): void {
    this.banner.hidden = false;
    this.banner.className = "banner banner--retry";
    this.banner.replaceChildren();
    const note = document.createElement("span");
    note.textContent = "Could not reach the screening service. Your entries are preserved. ";
    const retry = document.createElement("button");
    retry.type = "button";
    retry.textContent = "Retry";
    retry.addEventListener("click", () => void this.submit());
    this.banner.append(note, retry);
  }
}

function labeled(text: string, control: HTMLElement): HTMLElement {
  const row = document.createElement("label");
  row.className = "form-row";
  const caption = document.createElement("span");
  caption.className = "caption";
  caption.textContent = text;
  row.append(caption, control);
  return row;
}
