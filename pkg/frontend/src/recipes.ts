/**
 * Figure recipes fig1..fig16. Each recipe lists the files it needs
 * below --in and builds one SVG. Recipes only restyle columns that
 * the CLI wrote; annotation values (s*, s_x, s₊, s₊′) are read from
 * the summary files and embedded verbatim in data-value attributes.
 */

import { join } from "node:path";
import {
  column, readCsv, readInstanceToml, readJsonl, readSummary,
  Summary, summaryValue, Table,
} from "./io.js";
import { COLORS, Figure, histogram, Panel } from "./plot.js";

export interface Recipe {
  inputs: string[];
  render: (inDir: string) => string;
}

function crossings(summary: Summary, path: string): string[] {
  return summaryValue(summary, "s_plus", path).split(/\s+/).filter((v) => v !== "");
}

/** All columns named like prefix1, prefix2, ... in numeric order. */
function numbered(table: Table, prefix: string): string[] {
  return table.header
    .filter((name) => name.startsWith(prefix) && /^\d+$/.test(name.slice(prefix.length)))
    .sort((a, b) => Number(a.slice(prefix.length)) - Number(b.slice(prefix.length)));
}

function qubitLines(panel: Panel, table: Table, prefix: string, path: string): void {
  const names = numbered(table, prefix);
  if (names.length === 0) throw new Error(`${path}: no ${prefix}* columns`);
  const s = column(table, "s", path);
  names.forEach((name, i) => {
    panel.line(s, column(table, name, path), {
      color: COLORS[i % COLORS.length], label: `q${name.slice(prefix.length)}`,
    });
  });
}

function gapLines(panel: Panel, table: Table, path: string): void {
  const s = column(table, "s", path);
  for (const name of numbered(table, "dE_")) {
    panel.line(s, column(table, name, path), { label: `ΔE${name.slice(3)}` });
  }
}

/** Markers for an LSTF spectrum summary: s_x plus later crossings. */
function lstfMarkers(panel: Panel, summary: Summary, path: string): void {
  panel.marker("s_x", summaryValue(summary, "s_x", path), "s_x");
  const cross = crossings(summary, path);
  if (cross.length > 1) panel.marker("s_plus", cross[1], "s₊");
  if (cross.length > 2) panel.marker("s_plus_prime", cross[2], "s₊′");
}

const fig1: Recipe = {
  inputs: ["hx2_0.001/spectrum.csv", "hx2_0.001/spectrum_summary.csv",
           "hx2_0.01/spectrum.csv", "hx2_0.1/spectrum.csv"],
  render(inDir) {
    const fig = new Figure(880, 330);
    const gapPanel = fig.panel(0, 0, 2, 1)
      .xAxis({ label: "s" }).yAxis({ label: "ΔE₁ (GHz)", log: true });
    const mzPanel = fig.panel(1, 0, 2, 1)
      .xAxis({ label: "s" }).yAxis({ label: "m^z_2", domain: [-1, 1] });
    ["0.001", "0.01", "0.1"].forEach((hx2, i) => {
      const path = join(inDir, `hx2_${hx2}`, "spectrum.csv");
      const t = readCsv(path);
      const s = column(t, "s", path);
      gapPanel.line(s, column(t, "dE_1", path), { color: COLORS[i], label: `h^x_2=${hx2}` });
      mzPanel.line(s, column(t, "mz_2", path), { color: COLORS[i], label: `h^x_2=${hx2}` });
    });
    const sumPath = join(inDir, "hx2_0.001", "spectrum_summary.csv");
    const summary = readSummary(sumPath);
    gapPanel.marker("s_star", summaryValue(summary, "s_star", sumPath), "s*");
    const cross = crossings(summary, sumPath);
    if (cross.length > 0) mzPanel.marker("s_plus", cross[cross.length - 1], "s₊");
    return fig.render();
  },
};

const fig2: Recipe = {
  inputs: ["minima_trace.csv", "line_profile.csv", "semiclassical_summary.csv"],
  render(inDir) {
    const sumPath = join(inDir, "semiclassical_summary.csv");
    const summary = readSummary(sumPath);
    const fig = new Figure(880, 330);
    const tracePath = join(inDir, "minima_trace.csv");
    const trace = readCsv(tracePath);
    const s = column(trace, "s", tracePath);
    fig.panel(0, 0, 2, 1)
      .xAxis({ label: "s" }).yAxis({ label: "minima energy (GHz)" })
      .line(s, column(trace, "e_min1", tracePath), { label: "branch 1" })
      .line(s, column(trace, "e_min2", tracePath), { label: "branch 2" })
      .marker("s_plus", summaryValue(summary, "s", sumPath), "s₊");
    const profPath = join(inDir, "line_profile.csv");
    const prof = readCsv(profPath);
    const th2 = column(prof, "theta2", profPath);
    fig.panel(1, 0, 2, 1)
      .xAxis({ label: "θ₂ (rad)" }).yAxis({ label: "V, D" })
      .line(th2, column(prof, "V", profPath), { label: "V" })
      .line(th2, column(prof, "D", profPath), { label: "D", dash: "4 2" })
      .marker("d_min_theta2", summaryValue(summary, "d_min_theta2", sumPath), "argmin D");
    return fig.render();
  },
};

const fig3: Recipe = {
  inputs: ["schedules.csv", "spectrum_summary.csv"],
  render(inDir) {
    const path = join(inDir, "schedules.csv");
    const t = readCsv(path);
    const s = column(t, "s", path);
    const fig = new Figure(520, 340);
    const panel = fig.panel(0, 0, 1, 1)
      .xAxis({ label: "s" }).yAxis({ label: "schedule coefficient" });
    for (const name of ["a_i", "a_k", "b_i", "b_k", "b_ij"]) {
      panel.line(s, column(t, name, path), { label: name });
    }
    const sumPath = join(inDir, "spectrum_summary.csv");
    panel.marker("s_x", summaryValue(readSummary(sumPath), "s_x", sumPath), "s_x");
    return fig.render();
  },
};

interface ProtocolOutcome { success: number; energy_residual: number }

const fig4: Recipe = {
  inputs: ["records.jsonl"],
  render(inDir) {
    const path = join(inDir, "records.jsonl");
    const records = readJsonl(path);
    const fig = new Figure(880, 930);
    const groups = [...new Set(records.map((r) => r.group as number))].sort((a, b) => a - b);
    groups.forEach((g, row) => {
      const recs = records.filter((r) => r.group === g);
      const label = `${Math.min(...recs.map((r) => r.edge_count as number))}-` +
        `${Math.max(...recs.map((r) => r.edge_count as number))} edges`;
      const scatter = fig.panel(0, row, 2, groups.length)
        .title(label)
        .xAxis({ label: "AQA success", domain: [0, 1] })
        .yAxis({ label: "DQA success", domain: [0, 1] })
        .line([0, 1], [0, 1], { color: "#000", width: 1 });
      const hist = fig.panel(1, row, 2, groups.length)
        .title(label)
        .xAxis({ label: "energy residual (GHz)" })
        .yAxis({ label: "normalized frequency", domain: [0, 1] });
      const best = (r: Record<string, unknown>): ProtocolOutcome => {
        const runs = r.lstf as ProtocolOutcome[];
        if (!runs || runs.length === 0) throw new Error(`${path}: record without lstf runs`);
        return runs.reduce((a, b) => (b.energy_residual < a.energy_residual ? b : a));
      };
      for (const cls of ["SG", "LG"] as const) {
        const sub = recs.filter((r) => r.classification === cls);
        if (sub.length === 0) continue;
        const color = cls === "SG" ? "#000" : "#d62728";
        scatter.points(
          sub.map((r) => (r.aqa as ProtocolOutcome).success),
          sub.map((r) => best(r).success),
          { color, label: cls, r: cls === "SG" ? 3.5 : 2.5 },
        );
        const aqaRes = sub.map((r) => (r.aqa as ProtocolOutcome).energy_residual);
        const dqaRes = sub.map((r) => best(r).energy_residual);
        const lo = Math.min(...aqaRes, ...dqaRes);
        const hi = Math.max(...aqaRes, ...dqaRes, lo + 1e-9);
        const hAqa = histogram(aqaRes, 24, lo, hi);
        const hDqa = histogram(dqaRes, 24, lo, hi);
        hist.bars(hAqa.edges, hAqa.freqs, { color, label: `AQA ${cls}`, group: `aqa_${cls.toLowerCase()}` });
        hist.bars(hDqa.edges, hDqa.freqs, {
          color: cls === "SG" ? "#1f77b4" : "#ff7f0e", label: `DQA ${cls}`, group: `dqa_${cls.toLowerCase()}`,
        });
      }
    });
    return fig.render();
  },
};

/** Two-panel magnetization comparison used by fig5 (and fig14's layout). */
function magnetizationPair(inDir: string, subA: string, subB: string): string {
  const fig = new Figure(880, 330);
  const pathA = join(inDir, subA, "spectrum.csv");
  const tableA = readCsv(pathA);
  const panelA = fig.panel(0, 0, 2, 1)
    .title("AQA").xAxis({ label: "s" }).yAxis({ label: "m^z", domain: [-1, 1] });
  qubitLines(panelA, tableA, "mz_", pathA);
  const sumAPath = join(inDir, subA, "spectrum_summary.csv");
  panelA.marker("s_star", summaryValue(readSummary(sumAPath), "s_star", sumAPath), "s*");

  const pathB = join(inDir, subB, "spectrum.csv");
  const tableB = readCsv(pathB);
  const panelB = fig.panel(1, 0, 2, 1)
    .title("LSTF-DQA").xAxis({ label: "s" }).yAxis({ label: "m^z", domain: [-1, 1] });
  qubitLines(panelB, tableB, "mz_", pathB);
  const sumBPath = join(inDir, subB, "spectrum_summary.csv");
  lstfMarkers(panelB, readSummary(sumBPath), sumBPath);
  return fig.render();
}

const fig5: Recipe = {
  inputs: ["aqa/spectrum.csv", "aqa/spectrum_summary.csv",
           "lstf/spectrum.csv", "lstf/spectrum_summary.csv"],
  render: (inDir) => magnetizationPair(inDir, "aqa", "lstf"),
};

const fig6: Recipe = {
  inputs: fig5.inputs,
  render(inDir) {
    const fig = new Figure(880, 330);
    for (const [i, sub] of (["aqa", "lstf"] as const).entries()) {
      const path = join(inDir, sub, "spectrum.csv");
      const table = readCsv(path);
      const panel = fig.panel(i, 0, 2, 1)
        .title(sub === "aqa" ? "AQA" : "LSTF-DQA")
        .xAxis({ label: "s" }).yAxis({ label: "ΔE_n (GHz)" });
      gapLines(panel, table, path);
      const sumPath = join(inDir, sub, "spectrum_summary.csv");
      const summary = readSummary(sumPath);
      if (sub === "aqa") {
        panel.marker("s_star", summaryValue(summary, "s_star", sumPath), "s*");
      } else {
        lstfMarkers(panel, summary, sumPath);
      }
    }
    return fig.render();
  },
};

const fig7: Recipe = {
  inputs: ["spectrum_aqa/spectrum.csv", "spectrum_aqa/spectrum_summary.csv",
           "spectrum_lstf/spectrum.csv", "spectrum_lstf/spectrum_summary.csv",
           "sweep_aqa/dynamics.csv", "sweep_lstf/dynamics.csv"],
  render(inDir) {
    const fig = new Figure(880, 660);
    for (const [i, sub] of (["spectrum_aqa", "spectrum_lstf"] as const).entries()) {
      const path = join(inDir, sub, "spectrum.csv");
      const panel = fig.panel(i, 0, 2, 2)
        .title(sub === "spectrum_aqa" ? "AQA" : "LSTF-DQA")
        .xAxis({ label: "s" }).yAxis({ label: "ΔE_n (GHz)" });
      gapLines(panel, readCsv(path), path);
      const sumPath = join(inDir, sub, "spectrum_summary.csv");
      const summary = readSummary(sumPath);
      if (sub === "spectrum_aqa") {
        panel.marker("s_star", summaryValue(summary, "s_star", sumPath), "s*");
      } else {
        lstfMarkers(panel, summary, sumPath);
      }
    }
    const pPanel = fig.panel(0, 1, 2, 2)
      .xAxis({ label: "t_an (ns)", log: true })
      .yAxis({ label: "success probability", domain: [0, 1] });
    const ttsPanel = fig.panel(1, 1, 2, 2)
      .xAxis({ label: "t_an (ns)", log: true })
      .yAxis({ label: "raw TTS (ns)", log: true });
    for (const [i, sub] of (["sweep_aqa", "sweep_lstf"] as const).entries()) {
      const path = join(inDir, sub, "dynamics.csv");
      const t = readCsv(path);
      const tAn = column(t, "t_an", path);
      const label = sub === "sweep_aqa" ? "AQA" : "LSTF-DQA";
      pPanel.line(tAn, column(t, "success_probability", path), { color: COLORS[i], label });
      ttsPanel.line(tAn, column(t, "tts_raw", path), { color: COLORS[i], label });
    }
    return fig.render();
  },
};

/** Open-system panels shared by fig8 (AQA) and fig9 (LSTF-DQA). */
function openSystemFigure(inDir: string, lstf: boolean): string {
  const fig = new Figure(880, 330);
  const pPanel = fig.panel(0, 0, 2, 1)
    .xAxis({ label: "t_an (ns)", log: true })
    .yAxis({ label: "success probability", domain: [0, 1] });
  const series: [string, string][] = [["closed", "closed"], ["ame_x", "X bath"], ["ame_z", "Z bath"]];
  series.forEach(([sub, label], i) => {
    const path = join(inDir, sub, "dynamics.csv");
    const t = readCsv(path);
    pPanel.line(column(t, "t_an", path), column(t, "success_probability", path), {
      color: i === 0 ? "#000" : COLORS[i], label, dash: i === 0 ? undefined : undefined,
    });
  });
  const popPath = join(inDir, "populations", "populations_t10.csv");
  const pops = readCsv(popPath);
  const popPanel = fig.panel(1, 0, 2, 1)
    .title("X bath, t_an = 10 ns")
    .xAxis({ label: "s" }).yAxis({ label: "eigenstate population", domain: [0, 1] });
  const s = column(pops, "s", popPath);
  for (const name of numbered(pops, "pop_").slice(0, 4)) {
    popPanel.line(s, column(pops, name, popPath), { label: `|E${name.slice(4)}⟩` });
  }
  const sumPath = join(inDir, "spectrum", "spectrum_summary.csv");
  const summary = readSummary(sumPath);
  if (lstf) {
    lstfMarkers(popPanel, summary, sumPath);
  } else {
    popPanel.marker("s_star", summaryValue(summary, "s_star", sumPath), "s*");
  }
  return fig.render();
}

const fig8: Recipe = {
  inputs: ["closed/dynamics.csv", "ame_x/dynamics.csv", "ame_z/dynamics.csv",
           "populations/populations_t10.csv", "spectrum/spectrum_summary.csv"],
  render: (inDir) => openSystemFigure(inDir, false),
};

const fig9: Recipe = {
  inputs: fig8.inputs,
  render: (inDir) => openSystemFigure(inDir, true),
};

const fig10: Recipe = {
  inputs: ["interval/frustration_sweep.csv", "curves/frustration_sweep.csv"],
  render(inDir) {
    const fig = new Figure(880, 330);
    const intPath = join(inDir, "interval", "frustration_sweep.csv");
    const interval = readCsv(intPath);
    const f = column(interval, "f", intPath);
    const intCols = interval.header.filter((n) => n.startsWith("interval_"));
    if (intCols.length === 0) throw new Error(`${intPath}: no interval_* columns`);
    const left = fig.panel(0, 0, 2, 1)
      .xAxis({ label: "f" })
      .yAxis({ label: `crossing interval, s₊` });
    left.line(f, column(interval, intCols[0], intPath), {
      label: `t_an(s₊−s_x), t=${intCols[0].slice(9)} ns`,
    });
    const sPlus = column(interval, "s_plus", intPath);
    left.line(f, sPlus, { label: "s₊", dash: "4 2" });
    f.forEach((fi, i) => {
      left.pointMarker("s_plus", fi, sPlus[i], interval.raw["s_plus"][i]);
    });
    const curvesPath = join(inDir, "curves", "frustration_sweep.csv");
    const curves = readCsv(curvesPath);
    const fCurves = column(curves, "f", curvesPath);
    const tNames = curves.header.filter((n) => /^p_[\d.]+$/.test(n));
    if (tNames.length === 0) throw new Error(`${curvesPath}: no p_* columns`);
    const right = fig.panel(1, 0, 2, 1)
      .xAxis({ label: "t_an (ns)", log: true })
      .yAxis({ label: "success probability", domain: [0, 1] });
    const ts = tNames.map((n) => Number(n.slice(2)));
    fCurves.forEach((fi, row) => {
      right.line(ts, tNames.map((n) => column(curves, n, curvesPath)[row]), {
        label: `f=${Number(fi.toPrecision(3))}`,
      });
    });
    return fig.render();
  },
};

/** Block-mean a full grid down to at most `cap` cells per axis. */
function decimate(xs: number[], ys: number[], grid: number[][], cap: number):
    { xs: number[]; ys: number[]; grid: number[][] } {
  const bx = Math.ceil(xs.length / cap);
  const by = Math.ceil(ys.length / cap);
  if (bx === 1 && by === 1) return { xs, ys, grid };
  const mean = (vals: number[]) => vals.reduce((a, b) => a + b, 0) / vals.length;
  const outYs: number[] = [];
  const outGrid: number[][] = [];
  for (let i = 0; i < ys.length; i += by) {
    outYs.push(mean(ys.slice(i, i + by)));
    const row: number[] = [];
    for (let j = 0; j < xs.length; j += bx) {
      const block: number[] = [];
      for (let ii = i; ii < Math.min(i + by, ys.length); ii++) {
        for (let jj = j; jj < Math.min(j + bx, xs.length); jj++) {
          block.push(grid[ii][jj]);
        }
      }
      row.push(mean(block));
    }
    outGrid.push(row);
  }
  const outXs: number[] = [];
  for (let j = 0; j < xs.length; j += bx) outXs.push(mean(xs.slice(j, j + bx)));
  return { xs: outXs, ys: outYs, grid: outGrid };
}

const fig11: Recipe = {
  inputs: ["potential_surface.csv", "line_profile.csv", "semiclassical_summary.csv"],
  render(inDir) {
    const surfPath = join(inDir, "potential_surface.csv");
    const surf = readCsv(surfPath);
    const th1 = column(surf, "theta1", surfPath);
    const th2 = column(surf, "theta2", surfPath);
    const sumPath = join(inDir, "semiclassical_summary.csv");
    const summary = readSummary(sumPath);
    const xs = [...new Set(th2)].sort((a, b) => a - b);
    const ys = [...new Set(th1)].sort((a, b) => a - b);
    const ix = new Map(xs.map((v, i) => [v, i]));
    const iy = new Map(ys.map((v, i) => [v, i]));
    const fig = new Figure(880, 660);
    for (const [idx, quantity] of (["V", "D"] as const).entries()) {
      const vals = column(surf, quantity, surfPath);
      const full: number[][] = ys.map(() => xs.map(() => NaN));
      for (let r = 0; r < vals.length; r++) {
        full[iy.get(th1[r])!][ix.get(th2[r])!] = vals[r];
      }
      const { xs: gx, ys: gy, grid } = decimate(xs, ys, full, 96);
      const panel = fig.panel(idx, 0, 2, 2)
        .title(`${quantity} at s = ${summaryValue(summary, "s", sumPath).slice(0, 8)}`)
        .xAxis({ label: "θ₂" }).yAxis({ label: "θ₁" })
        .cells(gx, gy, grid);
      const n = Number(summaryValue(summary, "n_minima", sumPath));
      for (let m = 1; m <= n; m++) {
        panel.pointMarker(
          `min${m}`,
          Number(summaryValue(summary, `min${m}_theta2`, sumPath)),
          Number(summaryValue(summary, `min${m}_theta1`, sumPath)),
          summaryValue(summary, `min${m}_V`, sumPath),
        );
      }
    }
    const profPath = join(inDir, "line_profile.csv");
    const prof = readCsv(profPath);
    const lineTh2 = column(prof, "theta2", profPath);
    fig.panel(0, 1, 2, 2)
      .xAxis({ label: "θ₂ (rad)" }).yAxis({ label: "V, D" })
      .line(lineTh2, column(prof, "V", profPath), { label: "V" })
      .line(lineTh2, column(prof, "D", profPath), { label: "D", dash: "4 2" })
      .marker("d_min_theta2", summaryValue(summary, "d_min_theta2", sumPath), "argmin D");
    return fig.render();
  },
};

const fig12: Recipe = {
  inputs: ["sweep.csv"],
  render(inDir) {
    const path = join(inDir, "sweep.csv");
    const t = readCsv(path);
    const hx2 = column(t, "h_x2", path);
    const fig = new Figure(520, 340);
    const panel = fig.panel(0, 0, 1, 1)
      .xAxis({ label: "h^x_2 (GHz)", log: true })
      .yAxis({ label: "s" });
    panel.line(hx2, column(t, "s_star", path), { label: "s*" });
    panel.line(hx2, column(t, "s_plus", path), { label: "s₊" });
    panel.points(hx2, column(t, "max_slope_s", path), { color: "#000", label: "max slope", r: 3 });
    return fig.render();
  },
};

const fig13: Recipe = {
  inputs: ["instance.toml"],
  render(inDir) {
    const inst = readInstanceToml(join(inDir, "instance.toml"));
    if (inst.edges.length === 0) throw new Error("instance has no edges");
    const size = 460;
    const cx = size / 2, cy = size / 2, rad = size / 2 - 70;
    const pos = Array.from({ length: inst.nQubits }, (_, q) => {
      const angle = (2 * Math.PI * q) / inst.nQubits - Math.PI / 2;
      return [cx + rad * Math.cos(angle), cy + rad * Math.sin(angle)];
    });
    const fig = new Figure(size, size);
    const parts: string[] = [];
    for (const [a, b] of inst.edges) {
      parts.push(`<line x1="${pos[a][0].toFixed(1)}" y1="${pos[a][1].toFixed(1)}" ` +
        `x2="${pos[b][0].toFixed(1)}" y2="${pos[b][1].toFixed(1)}" stroke="#888" stroke-width="1.6" ` +
        `data-edge="${a}-${b}"/>`);
    }
    pos.forEach(([px, py], q) => {
      parts.push(`<circle cx="${px.toFixed(1)}" cy="${py.toFixed(1)}" r="17" fill="${COLORS[q % COLORS.length]}" data-node="${q}"/>`);
      parts.push(`<text x="${px.toFixed(1)}" y="${(py + 4).toFixed(1)}" text-anchor="middle" font-size="13" fill="white" font-family="Helvetica, Arial, sans-serif">${q + 1}</text>`);
      const lx = cx + (rad + 38) * Math.cos((2 * Math.PI * q) / inst.nQubits - Math.PI / 2);
      const ly = cy + (rad + 38) * Math.sin((2 * Math.PI * q) / inst.nQubits - Math.PI / 2);
      parts.push(`<text x="${lx.toFixed(1)}" y="${ly.toFixed(1)}" text-anchor="middle" font-size="10" font-family="Helvetica, Arial, sans-serif">h^z=${inst.hZ[q].toFixed(3)}</text>`);
    });
    fig.add(parts.join("\n"));
    return fig.render();
  },
};

const fig14: Recipe = {
  inputs: ["lstf/spectrum.csv", "lstf/spectrum_summary.csv"],
  render(inDir) {
    const fig = new Figure(880, 330);
    const path = join(inDir, "lstf", "spectrum.csv");
    const table = readCsv(path);
    const mzPanel = fig.panel(0, 0, 2, 1)
      .xAxis({ label: "s" }).yAxis({ label: "m^z", domain: [-1, 1] });
    qubitLines(mzPanel, table, "mz_", path);
    const gapPanel = fig.panel(1, 0, 2, 1)
      .xAxis({ label: "s" }).yAxis({ label: "ΔE_n (GHz)" });
    gapLines(gapPanel, table, path);
    const sumPath = join(inDir, "lstf", "spectrum_summary.csv");
    const summary = readSummary(sumPath);
    for (const panel of [mzPanel, gapPanel]) lstfMarkers(panel, summary, sumPath);
    return fig.render();
  },
};

const fig15: Recipe = {
  inputs: ["spectrum.csv", "spectrum_summary.csv"],
  render(inDir) {
    const path = join(inDir, "spectrum.csv");
    const table = readCsv(path);
    const fig = new Figure(520, 340);
    const panel = fig.panel(0, 0, 1, 1)
      .xAxis({ label: "s" }).yAxis({ label: "m^x", domain: [-1.05, 1.05] });
    qubitLines(panel, table, "mx_", path);
    const sumPath = join(inDir, "spectrum_summary.csv");
    lstfMarkers(panel, readSummary(sumPath), sumPath);
    return fig.render();
  },
};

const fig16: Recipe = {
  inputs: ["energy_scale_sweep.csv"],
  render(inDir) {
    const path = join(inDir, "energy_scale_sweep.csv");
    const t = readCsv(path);
    const rVals = column(t, "R", path);
    const openNames = t.header.filter((n) => n.startsWith("p_open_"));
    const closedNames = t.header.filter((n) => n.startsWith("p_closed_"));
    if (openNames.length === 0) throw new Error(`${path}: no p_open_* columns`);
    const ts = openNames.map((n) => Number(n.slice(7)));
    const fig = new Figure(520, 340);
    const panel = fig.panel(0, 0, 1, 1)
      .xAxis({ label: "t_an (ns)", log: true })
      .yAxis({ label: "success probability", domain: [0, 1] });
    panel.line(ts, closedNames.map((n) => column(t, n, path)[0]), { color: "#000", label: "closed" });
    rVals.forEach((r, row) => {
      panel.line(ts, openNames.map((n) => column(t, n, path)[row]), {
        color: COLORS[row], label: `open, R=${r} GHz`,
      });
    });
    return fig.render();
  },
};

export const RECIPES: Record<string, Recipe> = {
  fig1, fig2, fig3, fig4, fig5, fig6, fig7, fig8,
  fig9, fig10, fig11, fig12, fig13, fig14, fig15, fig16,
};
