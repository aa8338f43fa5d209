/** Thin fetch client over the prediction service. */

import type {
  ApiFieldError,
  AttributeMap,
  MetricsResponse,
  ModelEnvelope,
  PredictResponse,
} from "./types.js";

export class ApiRejection extends Error {
  constructor(
    public readonly status: number,
    public readonly errors: ApiFieldError[]
  ) {
    super(`request rejected with ${status}`);
  }
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private url(path: string): string {
    return `${this.base}${path}`;
  }

  async health(): Promise<boolean> {
    try {
      const r = await fetch(this.url("/health"));
      return r.ok;
    } catch {
      return false;
    }
  }

  async getModels(): Promise<ModelEnvelope[]> {
    const r = await fetch(this.url("/models"));
    if (!r.ok) throw new ApiRejection(r.status, await readErrors(r));
    const body = (await r.json()) as { models: ModelEnvelope[] };
    return body.models;
  }

  /** null when the model has no stored evaluation (404). */
  async getMetrics(modelId: string): Promise<MetricsResponse | null> {
    const r = await fetch(this.url(`/models/${modelId}/metrics`));
    if (r.status === 404) return null;
    if (!r.ok) throw new ApiRejection(r.status, await readErrors(r));
    return (await r.json()) as MetricsResponse;
  }

  async predict(modelId: string, attributes: AttributeMap): Promise<PredictResponse> {
    const r = await fetch(this.url("/predict"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ model_id: modelId, attributes }),
    });
    if (!r.ok) throw new ApiRejection(r.status, await readErrors(r));
    return (await r.json()) as PredictResponse;
  }
}

async function readErrors(r: Response): Promise<ApiFieldError[]> {
  try {
    const body = (await r.json()) as { errors?: ApiFieldError[] };
    return body.errors ?? [];
  } catch {
    return [];
  }
}
