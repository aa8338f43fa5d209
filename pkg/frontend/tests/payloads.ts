/** Boundary payloads shared by the unit suite and the live contract suite. */

import type { AttributeMap } from "../src/types.js";
import { FIELDS } from "../src/validation.js";

export const VALID: AttributeMap = {
  Age: 45,
  Gender: "Male",
  TB: 1.8,
  DB: 0.7,
  Alkphos: 208,
  Sgpt: 19,
  Sgot: 14,
  TP: 7.6,
  ALB: 4.4,
  "A/G Ratio": 1.3,
};

export interface BoundaryCase {
  name: string;
  payload: AttributeMap;
  /** what the mirrored rules say; the live suite asserts the server agrees */
  expectAccept: boolean;
}

const LARGE: Record<string, number> = { Age: 150, Alkphos: 5000 };

export function boundaryCases(): BoundaryCase[] {
  const cases: BoundaryCase[] = [
    { name: "all fields valid", payload: { ...VALID }, expectAccept: true },
  ];
  for (const field of FIELDS) {
    if (field.kind !== "numeric") continue;
    const f = field.name;
    cases.push({ name: `${f} at limit (0)`, payload: { ...VALID, [f]: 0 }, expectAccept: true });
    cases.push({ name: `${f} below limit`, payload: { ...VALID, [f]: -0.5 }, expectAccept: false });
    cases.push({
      name: `${f} far above typical`,
      payload: { ...VALID, [f]: LARGE[f] ?? 9999 },
      expectAccept: true,
    });
  }
  const noTb: AttributeMap = { ...VALID };
  delete noTb["TB"];
  cases.push(
    { name: "Gender Female", payload: { ...VALID, Gender: "Female" }, expectAccept: true },
    { name: "Gender lowercase male", payload: { ...VALID, Gender: "male" }, expectAccept: true },
    { name: "Gender unknown value", payload: { ...VALID, Gender: "Other" }, expectAccept: false },
    { name: "Gender empty", payload: { ...VALID, Gender: "" }, expectAccept: false },
    { name: "TB missing entirely", payload: noTb, expectAccept: false },
    { name: "TB null", payload: { ...VALID, TB: null }, expectAccept: false },
    { name: "Age as numeric string", payload: { ...VALID, Age: "45" }, expectAccept: true },
    { name: "Age as word", payload: { ...VALID, Age: "old" }, expectAccept: false },
    { name: "Sgot not-a-number string", payload: { ...VALID, Sgot: "nan" }, expectAccept: false },
    { name: "unknown extra field", payload: { ...VALID, Cholesterol: 200 }, expectAccept: false },
  );
  return cases;
}
