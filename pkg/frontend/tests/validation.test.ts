import { describe, expect, test } from "vitest";

import { FIELD_NAMES, accepts, validateAttributes, validateField } from "../src/validation.js";
import { VALID, boundaryCases } from "./payloads.js";

describe("validateAttributes", () => {
  test("accepts the reference payload", () => {
    const { values, errors } = validateAttributes(VALID);
    expect(errors).toEqual([]);
    expect(values["Gender"]).toBe(1); // Male encodes to 1
    expect(values["Age"]).toBe(45);
  });

  test("female encodes to 0", () => {
    const { values } = validateAttributes({ ...VALID, Gender: "female" });
    expect(values["Gender"]).toBe(0);
  });

  test("negative amount is out_of_range with the field named", () => {
    const { errors } = validateAttributes({ ...VALID, Alkphos: -1 });
    expect(errors).toHaveLength(1);
    expect(errors[0]).toMatchObject({ field: "Alkphos", code: "out_of_range" });
  });

  test("missing required fields are all reported", () => {
    const { errors } = validateAttributes({});
    expect(errors).toHaveLength(FIELD_NAMES.length);
    expect(new Set(errors.map((e) => e.code))).toEqual(new Set(["missing"]));
  });

  test("unknown field rejected", () => {
    const { errors } = validateAttributes({ ...VALID, Cholesterol: 210 });
    expect(errors.some((e) => e.code === "unknown_field")).toBe(true);
  });

  test("non-numeric string rejected", () => {
    const { errors } = validateAttributes({ ...VALID, TB: "high" });
    expect(errors[0]).toMatchObject({ field: "TB", code: "invalid_type" });
  });

  test("zero is inside every range", () => {
    for (const name of FIELD_NAMES) {
      if (name === "Gender") continue;
      expect(accepts({ ...VALID, [name]: 0 })).toBe(true);
    }
  });
});

describe("validateField", () => {
  test("empty value is missing", () => {
    expect(validateField("Age", "")).toMatchObject({ code: "missing" });
  });

  test("valid value passes", () => {
    expect(validateField("Age", "33")).toBeNull();
    expect(validateField("Gender", "Male")).toBeNull();
  });

  test("negative value fails", () => {
    expect(validateField("TB", "-2")).toMatchObject({ code: "out_of_range" });
  });
});

describe("boundary fixtures", () => {
  test("has at least 12 payloads covering at/below/above per field", () => {
    const cases = boundaryCases();
    expect(cases.length).toBeGreaterThanOrEqual(12);
    for (const name of FIELD_NAMES) {
      if (name === "Gender") continue;
      expect(cases.some((c) => c.name === `${name} at limit (0)`)).toBe(true);
      expect(cases.some((c) => c.name === `${name} below limit`)).toBe(true);
      expect(cases.some((c) => c.name === `${name} far above typical`)).toBe(true);
    }
  });

  test("client decisions match the recorded expectations", () => {
    for (const c of boundaryCases()) {
      expect(accepts(c.payload), c.name).toBe(c.expectAccept);
    }
  });
});
