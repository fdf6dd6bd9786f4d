import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

const CLI = fileURLToPath(new URL("../dist/cli.js", import.meta.url));
const DATA = fileURLToPath(new URL("../data", import.meta.url));

interface Run {
  status: number;
  stdout: string;
  stderr: string;
}

function run(...args: string[]): Run {
  try {
    const stdout = execFileSync(process.execPath, [CLI, ...args], { encoding: "utf8" });
    return { status: 0, stdout, stderr: "" };
  } catch (error) {
    const failure = error as { status: number; stdout: string; stderr: string };
    return { status: failure.status, stdout: failure.stdout, stderr: failure.stderr };
  }
}

describe("command line", () => {
  it("renders every shipped figure and reruns byte-identically", () => {
    const out = mkdtempSync(join(tmpdir(), "pwfig-"));
    const jobs: [string, string[]][] = [
      ["profile_1d.svg", ["--kind", "profile", "--in", join(DATA, "profile_1d.csv")]],
      ["profile_2d.svg", ["--kind", "profile", "--in", join(DATA, "profile_2d.csv")]],
      ["profile_3d.svg", ["--kind", "profile", "--in", join(DATA, "profile_3d.csv")]],
      ["ladder.svg", ["--kind", "ladder", "--in", join(DATA, "ladder.csv")]],
      [
        "overlay.svg",
        [
          "--kind",
          "overlay",
          "--in",
          join(DATA, "mc_n16.csv"),
          "--in",
          join(DATA, "profile_n16.csv"),
        ],
      ],
    ];
    for (const [name, args] of jobs) {
      const target = join(out, name);
      const first = run(...args, "--out", target);
      expect(first.status, first.stderr).toBe(0);
      const bytes = readFileSync(target);
      const second = run(...args, "--out", target);
      expect(second.status).toBe(0);
      expect(readFileSync(target).equals(bytes)).toBe(true);
    }
  });

  it("exits 1 when the table does not match the figure kind", () => {
    const out = mkdtempSync(join(tmpdir(), "pwfig-"));
    const bad = join(out, "bad.csv");
    writeFileSync(bad, "x_1,value\n0,0.5\n");
    const result = run("--kind", "profile", "--in", bad, "--out", join(out, "x.svg"));
    expect(result.status).toBe(1);
    expect(result.stderr).toContain("missing required column");
  });

  it("exits 2 on a missing input file", () => {
    const out = mkdtempSync(join(tmpdir(), "pwfig-"));
    const result = run(
      "--kind", "profile",
      "--in", join(out, "absent.csv"),
      "--out", join(out, "x.svg"),
    );
    expect(result.status).toBe(2);
  });

  it("exits 2 on usage errors", () => {
    expect(run("--kind", "spiral", "--in", "a.csv", "--out", "b.svg").status).toBe(2);
    expect(run("--kind", "profile").status).toBe(2);
    expect(
      run("--kind", "overlay", "--in", join(DATA, "mc_n16.csv"), "--out", "b.svg").status,
    ).toBe(2);
    expect(run("--bogus-flag").status).toBe(2);
  });

  it("prints usage with --help", () => {
    const result = run("--help");
    expect(result.status).toBe(0);
    expect(result.stdout).toContain("usage:");
  });
});
