/** Wire types for the liverscreen HTTP API. */

export interface ModelEnvelope {
  model_id: string;
  algorithm: string;
  feature_names: string[];
  hyperparameters: Record<string, unknown>;
  format_version: number;
  created_at: string;
}

export interface PredictResponse {
  label: 1 | 2;
  label_text: string;
  score: number;
  model_id: string;
  algorithm: string | null;
}

export interface ApiFieldError {
  field: string | null;
  code: string;
  message: string;
}

export interface EvaluationReport {
  n: number;
  accuracy: number;
  confusion: number[][];
  rmse: number;
  mape: number;
  roc: number[][] | null;
  auc: number | null;
}

export interface MetricsResponse {
  model_id: string;
  report: EvaluationReport;
}

/** One screening request as the form assembles it. */
export type AttributeMap = Record<string, unknown>;
