/**
 * Client-side validation, a literal mirror of the server's rules.
 *
 * The server accepts an attribute map when every required field is present,
 * Gender is the text Male/Female (case-insensitive), and every numeric
 * value parses to a finite number >= 0. Anything else is rejected with a
 * field-level error. The contract test drives both sides with the same
 * boundary payloads and requires 100% agreement, so any rule change here
 * must land on the server too.
 */

import type { ApiFieldError, AttributeMap } from "./types.js";

export interface FieldSpec {
  name: string;
  label: string;
  kind: "numeric" | "gender";
  unit: string;
}

/** The ten inputs, in dataset column order, with the unit hints shown in the form. */
export const FIELDS: FieldSpec[] = [
  { name: "Age", label: "Age", kind: "numeric", unit: "years" },
  { name: "Gender", label: "Gender", kind: "gender", unit: "" },
  { name: "TB", label: "Total bilirubin", kind: "numeric", unit: "mg/dL" },
  { name: "DB", label: "Direct bilirubin", kind: "numeric", unit: "mg/dL" },
  { name: "Alkphos", label: "Alkaline phosphatase", kind: "numeric", unit: "IU/L" },
  { name: "Sgpt", label: "Alanine aminotransferase (SGPT)", kind: "numeric", unit: "IU/L" },
  { name: "Sgot", label: "Aspartate aminotransferase (SGOT)", kind: "numeric", unit: "IU/L" },
  { name: "TP", label: "Total proteins", kind: "numeric", unit: "g/dL" },
  { name: "ALB", label: "Albumin", kind: "numeric", unit: "g/dL" },
  { name: "A/G Ratio", label: "Albumin/globulin ratio", kind: "numeric", unit: "" },
];

export const FIELD_NAMES = FIELDS.map((f) => f.name);

const KNOWN = new Set(FIELD_NAMES);

function parseNumeric(raw: unknown): number | null {
  if (typeof raw === "number") return raw;
  if (typeof raw === "boolean") return raw ? 1 : 0; // matches float(bool) server-side
  if (typeof raw === "string") {
    const t = raw.trim();
    if (t === "") return null;
    const v = Number(t);
    return Number.isNaN(v) && t.toLowerCase() !== "nan" ? null : v;
  }
  return null;
}

export interface ValidationResult {
  values: Record<string, number>;
  errors: ApiFieldError[];
}

export function validateAttributes(
  attributes: AttributeMap,
  required: string[] = FIELD_NAMES
): ValidationResult {
  const errors: ApiFieldError[] = [];
  const values: Record<string, number> = {};

  for (const name of Object.keys(attributes)) {
    if (!KNOWN.has(name)) {
      errors.push({ field: name, code: "unknown_field", message: `${name} is not an ILPD attribute` });
    }
  }
  for (const name of required) {
    const raw = attributes[name];
    if (!(name in attributes) || raw === null || raw === undefined || raw === "") {
      errors.push({ field: name, code: "missing", message: `${name} is required` });
    }
  }
  for (const [name, raw] of Object.entries(attributes)) {
    if (!KNOWN.has(name) || raw === null || raw === undefined || raw === "") continue;
    if (name === "Gender") {
      const g = typeof raw === "string" ? raw.trim().toLowerCase() : "";
      if (g === "male" || g === "female") {
        values[name] = g === "male" ? 1 : 0;
      } else {
        errors.push({ field: name, code: "invalid_value", message: "Gender must be 'Male' or 'Female'" });
      }
      continue;
    }
    const v = parseNumeric(raw);
    if (v === null) {
      errors.push({ field: name, code: "invalid_type", message: `${name} must be a number` });
    } else if (Number.isNaN(v) || !Number.isFinite(v)) {
      errors.push({ field: name, code: "invalid_type", message: `${name} must be finite` });
    } else if (v < 0) {
      errors.push({ field: name, code: "out_of_range", message: `${name} must be >= 0` });
    } else {
      values[name] = v;
    }
  }
  return { values, errors };
}

/** Validate a single form field; null when the value is acceptable. */
export function validateField(name: string, raw: unknown): ApiFieldError | null {
  if (raw === null || raw === undefined || raw === "") {
    return { field: name, code: "missing", message: `${name} is required` };
  }
  const { errors } = validateAttributes({ [name]: raw }, [name]);
  return errors.length > 0 ? (errors[0] ?? null) : null;
}

export function accepts(attributes: AttributeMap, required: string[] = FIELD_NAMES): boolean {
  return validateAttributes(attributes, required).errors.length === 0;
}
