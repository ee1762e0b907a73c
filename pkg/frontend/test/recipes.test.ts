import { cpSync, existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";
import { readSummary } from "../src/io.js";
import { run } from "../src/main.js";
import { RECIPES } from "../src/recipes.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));

function fixture(name: string): string {
  return join(FIXTURES, name);
}

function have(name: string): boolean {
  return existsSync(fixture(name));
}

function markerValues(svg: string, marker: string): string[] {
  const out: string[] = [];
  const re = new RegExp(`data-marker="${marker}" data-value="([^"]+)"`, "g");
  for (const m of svg.matchAll(re)) out.push(m[1]);
  return out;
}

describe("recipes render from fixture data", () => {
  for (const name of Object.keys(RECIPES)) {
    it.skipIf(!have(name))(`${name} renders`, () => {
      const svg = RECIPES[name].render(fixture(name));
      expect(svg.startsWith("<svg")).toBe(true);
      expect(svg).toContain("</svg>");
      expect(svg).not.toMatch(/NaN/);
    });
  }
});

describe.skipIf(!have("fig1"))("fig1", () => {
  it("pins s* and s₊ to the written summary", () => {
    const svg = RECIPES.fig1.render(fixture("fig1"));
    const path = fixture("fig1/hx2_0.001/spectrum_summary.csv");
    const summary = readSummary(path);
    expect(markerValues(svg, "s_star")).toEqual([summary.values["s_star"]]);
    const crossings = summary.values["s_plus"].split(/\s+/);
    expect(markerValues(svg, "s_plus")).toEqual([crossings[crossings.length - 1]]);
  });

  it("fails by column name when a series is missing", () => {
    const dir = mkdtempSync(join(tmpdir(), "lstf-fig1-"));
    cpSync(fixture("fig1"), dir, { recursive: true });
    const broken = join(dir, "hx2_0.01", "spectrum.csv");
    const lines = readFileSync(broken, "utf8").split("\n");
    const header = lines.findIndex((l) => !l.startsWith("#"));
    lines[header] = lines[header].replace("mz_2", "mz_x");
    writeFileSync(broken, lines.join("\n"), "utf8");
    expect(() => RECIPES.fig1.render(dir)).toThrow(/mz_2/);
  });
});

describe.skipIf(!have("fig4"))("fig4", () => {
  it("draws four normalized histogram groups per row", () => {
    const svg = RECIPES.fig4.render(fixture("fig4"));
    const groups = new Map<string, number>();
    for (const m of svg.matchAll(/data-hist="([^"]+)"[^>]*>([\s\S]*?)<\/g>/g)) {
      let peak = groups.get(m[1]) ?? 0;
      for (const f of m[2].matchAll(/data-freq="([^"]+)"/g)) {
        peak = Math.max(peak, Number(f[1]));
      }
      groups.set(m[1], peak);
    }
    expect(groups.size).toBeGreaterThan(0);
    for (const [group, peak] of groups) {
      expect(peak, group).toBeCloseTo(1, 12);
    }
  });

  it("keeps the equal-success diagonal", () => {
    const svg = RECIPES.fig4.render(fixture("fig4"));
    expect(svg).toContain('stroke="#000"');
  });
});

describe.skipIf(!have("fig10"))("fig10", () => {
  it("annotates every swept frustration point with its crossing", () => {
    const svg = RECIPES.fig10.render(fixture("fig10"));
    const path = fixture("fig10/interval/frustration_sweep.csv");
    const body = readFileSync(path, "utf8").split("\n")
      .filter((l) => l !== "" && !l.startsWith("#"));
    const header = body[0].split(",");
    const col = header.indexOf("s_plus");
    const expected = body.slice(1).map((l) => l.split(",")[col]);
    expect(markerValues(svg, "s_plus")).toEqual(expected);
  });
});

describe("command line", () => {
  it.skipIf(!have("fig15"))("writes one SVG per figure", async () => {
    const out = mkdtempSync(join(tmpdir(), "lstf-out-"));
    const code = await run(["--figure", "fig15", "--in", fixture("fig15"), "--out", out]);
    expect(code).toBe(0);
    const svg = readFileSync(join(out, "fig15.svg"), "utf8");
    expect(svg).toContain('data-marker="s_x"');
  });

  it("rejects unknown figures", async () => {
    const out = mkdtempSync(join(tmpdir(), "lstf-out-"));
    const code = await run(["--figure", "fig99", "--in", FIXTURES, "--out", out]);
    expect(code).toBe(2);
  });

  it("reports a missing input file without crashing the batch", async () => {
    const out = mkdtempSync(join(tmpdir(), "lstf-out-"));
    const empty = mkdtempSync(join(tmpdir(), "lstf-in-"));
    const code = await run(["--figure", "fig12", "--in", empty, "--out", out]);
    expect(code).toBe(1);
  });
});
