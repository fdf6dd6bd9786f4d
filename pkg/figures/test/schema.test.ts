import { describe, expect, it } from "vitest";

import {
  parseTable,
  SchemaMismatch,
  validateEmpirical,
  validateLadder,
  validateOverlayReference,
  validateProfile,
} from "../src/schema.js";

const SAMPLE = [
  "# dim = 1",
  "# n = 16",
  "x_1,exact_total,gaussian,exact_correction,delta_sum,delta_quadrature,delta_closed,psi_residual",
  "-2,0.5,0.4,0.1,0.09,0.08,0.07,0.02",
  "-1,0.25,0.2,0.05,0.04,0.03,0.02,0.02",
  "0,0.125,0.1,0.025,0.02,0.015,0.01,0.01",
].join("\n");

describe("parseTable", () => {
  it("splits metadata, header and column-major data", () => {
    const table = parseTable(SAMPLE);
    expect(table.meta).toEqual({ dim: "1", n: "16" });
    expect(table.header[0]).toBe("x_1");
    expect(table.rows).toBe(3);
    expect(table.columns["x_1"]).toEqual([-2, -1, 0]);
    expect(table.columns["exact_total"]).toEqual([0.5, 0.25, 0.125]);
  });

  it("keeps full float precision", () => {
    const table = parseTable("x_1,v\n0,0.00030939002564759607");
    expect(table.columns["v"]![0]).toBe(0.00030939002564759607);
  });

  it("rejects an empty file", () => {
    expect(() => parseTable("")).toThrow(SchemaMismatch);
    expect(() => parseTable("\n\n")).toThrow(/no header row/);
  });

  it("rejects a header with no data rows", () => {
    expect(() => parseTable("# dim = 1\nx_1,v")).toThrow(/no data rows/);
  });

  it("rejects ragged rows", () => {
    expect(() => parseTable("x_1,v\n0,1.0\n1")).toThrow(/row 2 has 1 fields/);
  });

  it("rejects non-numeric fields", () => {
    expect(() => parseTable("x_1,v\n0,abc")).toThrow(/not a number/);
    expect(() => parseTable("x_1,v\n0,")).toThrow(SchemaMismatch);
  });

  it("rejects duplicate and empty column names", () => {
    expect(() => parseTable("x_1,x_1\n0,1")).toThrow(/duplicate/);
    expect(() => parseTable("x_1,,v\n0,1,2")).toThrow(/empty column name/);
  });
});

describe("kind validators", () => {
  it("accepts the profile layout", () => {
    expect(() => validateProfile(parseTable(SAMPLE))).not.toThrow();
  });

  it("rejects a profile table missing a curve column", () => {
    const text = "x_1,exact_correction,delta_quadrature\n0,0.1,0.1";
    expect(() => validateProfile(parseTable(text))).toThrow(/delta_closed/);
  });

  it("rejects a two-dimensional profile that is not a transect", () => {
    const text = [
      "x_1,x_2,exact_correction,delta_quadrature,delta_closed",
      "0,0,0.1,0.1,0.1",
      "1,1,0.1,0.1,0.1",
    ].join("\n");
    expect(() => validateProfile(parseTable(text))).toThrow(/transect/);
  });

  it("accepts a transect with a constant second coordinate", () => {
    const text = [
      "x_1,x_2,exact_correction,delta_quadrature,delta_closed",
      "0,3,0.1,0.1,0.1",
      "1,3,0.1,0.1,0.1",
    ].join("\n");
    expect(() => validateProfile(parseTable(text))).not.toThrow();
  });

  it("checks ladder tables for positive n", () => {
    const good = "n,x_1,scaled_residual\n100,1,0.03\n200,1,0.02";
    expect(() => validateLadder(parseTable(good))).not.toThrow();
    const bad = "n,x_1,scaled_residual\n0,1,0.03";
    expect(() => validateLadder(parseTable(bad))).toThrow(/n > 0/);
    const missing = "n,x_1\n100,1";
    expect(() => validateLadder(parseTable(missing))).toThrow(/scaled_residual/);
  });

  it("checks sampled tables for value and stderr columns", () => {
    const good = "x_1,value,count,stderr\n0,0.5,50,0.05";
    expect(() => validateEmpirical(parseTable(good))).not.toThrow();
    const bad = "x_1,value,count\n0,0.5,50";
    expect(() => validateEmpirical(parseTable(bad))).toThrow(/stderr/);
  });

  it("checks overlay reference tables for exact_total", () => {
    expect(() => validateOverlayReference(parseTable(SAMPLE))).not.toThrow();
    const bad = "x_1,value\n0,0.5";
    expect(() => validateOverlayReference(parseTable(bad))).toThrow(/exact_total/);
  });
});
