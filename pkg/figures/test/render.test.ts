import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { parseTable, SchemaMismatch, Table } from "../src/schema.js";
import { renderLadder, renderOverlay, renderProfile } from "../src/render.js";

function shipped(name: string): Table {
  const path = fileURLToPath(new URL(`../data/${name}`, import.meta.url));
  return parseTable(readFileSync(path, "utf8"), name);
}

describe("renderProfile", () => {
  it.each(["profile_1d.csv", "profile_2d.csv", "profile_3d.csv"])(
    "renders the shipped %s without error",
    (name) => {
      const svg = renderProfile(shipped(name));
      expect(svg.startsWith("<svg ")).toBe(true);
      expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
      for (const label of ["exact_correction", "delta_quadrature", "delta_closed"]) {
        expect(svg).toContain(`>${label}</text>`);
      }
    },
  );

  it("draws one marker per row plus three curves", () => {
    const table = shipped("profile_1d.csv");
    const svg = renderProfile(table);
    expect(svg.match(/<circle /g)!.length).toBe(table.rows);
    expect(svg.match(/<polyline /g)!.length).toBe(3);
  });

  it("is deterministic", () => {
    const table = shipped("profile_2d.csv");
    expect(renderProfile(table)).toBe(renderProfile(table));
  });

  it("honours size and title options", () => {
    const svg = renderProfile(shipped("profile_1d.csv"), {
      width: 800,
      height: 500,
      title: "a < b",
    });
    expect(svg).toContain('width="800" height="500"');
    expect(svg).toContain("a &lt; b");
  });

  it("refuses a ladder table", () => {
    expect(() => renderProfile(shipped("ladder.csv"))).toThrow(SchemaMismatch);
  });
});

describe("renderLadder", () => {
  it("renders the shipped sweep with one legend entry per site", () => {
    const table = shipped("ladder.csv");
    const svg = renderLadder(table);
    const sites = new Set(table.columns["x_1"]);
    for (const site of sites) {
      expect(svg).toContain(`>x_1 = ${site}</text>`);
    }
    expect(svg.match(/<circle /g)!.length).toBe(table.rows);
  });

  it("is deterministic", () => {
    const table = shipped("ladder.csv");
    expect(renderLadder(table)).toBe(renderLadder(table));
  });

  it("refuses a table with nothing drawable on a log axis", () => {
    const table = parseTable("n,x_1,scaled_residual\n100,1,0\n200,1,-0.01");
    expect(() => renderLadder(table)).toThrow(/log axis/);
  });

  it("refuses a profile table", () => {
    expect(() => renderLadder(shipped("profile_1d.csv"))).toThrow(SchemaMismatch);
  });
});

describe("renderOverlay", () => {
  it("renders the sampled field over the exact distribution", () => {
    const sampled = shipped("mc_n16.csv");
    const exact = shipped("profile_n16.csv");
    const svg = renderOverlay(sampled, exact);
    expect(svg).toContain(">exact_total</text>");
    expect(svg).toContain("sampled");
    expect(svg.match(/<circle /g)!.length).toBe(sampled.rows);
  });

  it("is deterministic", () => {
    const sampled = shipped("mc_n16.csv");
    const exact = shipped("profile_n16.csv");
    expect(renderOverlay(sampled, exact)).toBe(renderOverlay(sampled, exact));
  });

  it("refuses swapped inputs", () => {
    expect(() => renderOverlay(shipped("profile_n16.csv"), shipped("mc_n16.csv"))).toThrow(
      SchemaMismatch,
    );
  });
});
