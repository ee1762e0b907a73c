/**
 * Small SVG plot kit: multi-panel figures, linear/log axes, line and
 * scatter series, histogram bars, heatmap cells, and annotated
 * vertical markers.
 *
 * Markers carry machine-readable attributes so downstream checks can
 * verify annotation values without rasterizing:
 *   <g class="marker" data-marker="s_star" data-value="0.8676...">
 * The data-value string is kept verbatim from the input summary.
 */

import * as d3 from "d3";

export const COLORS = d3.schemeCategory10 as readonly string[];

const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmtTick(v: number): string {
  return d3.format("~g")(v);
}

type Scale = d3.ScaleContinuousNumeric<number, number>;

export interface AxisOptions {
  label?: string;
  log?: boolean;
  /** pinned [lo, hi]; otherwise derived from the data fed to the panel */
  domain?: [number, number];
}

interface Series {
  kind: "line" | "points";
  xs: number[];
  ys: number[];
  color: string;
  label?: string;
  dash?: string;
  width?: number;
  r?: number;
}

export class Panel {
  private series: Series[] = [];
  private extras: string[] = [];
  private markers: string[] = [];
  private xOpts: AxisOptions = {};
  private yOpts: AxisOptions = {};
  private titleText = "";
  private xData: number[] = [];
  private yData: number[] = [];

  constructor(
    readonly x0: number,
    readonly y0: number,
    readonly w: number,
    readonly h: number,
  ) {}

  xAxis(opts: AxisOptions): this {
    this.xOpts = opts;
    return this;
  }

  yAxis(opts: AxisOptions): this {
    this.yOpts = opts;
    return this;
  }

  title(text: string): this {
    this.titleText = text;
    return this;
  }

  line(xs: number[], ys: number[], opts: { color?: string; label?: string; dash?: string; width?: number } = {}): this {
    if (xs.length === 0 || ys.length === 0) throw new Error("empty series");
    this.series.push({
      kind: "line", xs, ys,
      color: opts.color ?? COLORS[this.series.length % COLORS.length],
      label: opts.label, dash: opts.dash, width: opts.width,
    });
    this.xData.push(...xs);
    this.yData.push(...ys);
    return this;
  }

  points(xs: number[], ys: number[], opts: { color?: string; label?: string; r?: number } = {}): this {
    if (xs.length === 0) throw new Error("empty series");
    this.series.push({
      kind: "points", xs, ys,
      color: opts.color ?? COLORS[this.series.length % COLORS.length],
      label: opts.label, r: opts.r,
    });
    this.xData.push(...xs);
    this.yData.push(...ys);
    return this;
  }

  /** Vertical annotation rule; value is kept verbatim for data-value. */
  marker(name: string, value: string, label: string): this {
    this.markers.push(JSON.stringify(["rule", name, value, label]));
    this.xData.push(Number(value));
    return this;
  }

  /** Annotated point at (x, y); data-value carries the verbatim string. */
  pointMarker(name: string, x: number, y: number, value: string, label = ""): this {
    this.markers.push(JSON.stringify(["point", name, value, label, x, y]));
    this.xData.push(x);
    this.yData.push(y);
    return this;
  }

  /** Horizontal dashed guide, e.g. a classification threshold. */
  hguide(name: string, value: string, label: string): this {
    this.extras.push(JSON.stringify(["hguide", name, value, label]));
    this.yData.push(Number(value));
    return this;
  }

  /** Normalized histogram bars (peak scaled to 1). */
  bars(edges: number[], freqs: number[], opts: { color: string; label?: string; group?: string }): this {
    this.extras.push(JSON.stringify(["bars", edges, freqs, opts.color, opts.label ?? "", opts.group ?? ""]));
    this.xData.push(...edges);
    this.yData.push(0, ...freqs);
    return this;
  }

  /** Heatmap cells over a regular grid; values mapped through viridis. */
  cells(xs: number[], ys: number[], values: number[][]): this {
    this.extras.push(JSON.stringify(["cells", xs, ys, values]));
    this.xData.push(...xs);
    this.yData.push(...ys);
    return this;
  }

  private makeScale(opts: AxisOptions, data: number[], range: [number, number]): Scale {
    let domain = opts.domain;
    if (!domain) {
      const finite = data.filter((v) => Number.isFinite(v));
      if (finite.length === 0) throw new Error("no finite data for axis");
      domain = [Math.min(...finite), Math.max(...finite)];
      if (domain[0] === domain[1]) domain = [domain[0] - 1, domain[1] + 1];
    }
    const scale = opts.log ? d3.scaleLog() : d3.scaleLinear();
    return scale.domain(domain).range(range).nice() as Scale;
  }

  render(): string {
    const { x0, y0, w, h } = this;
    const sx = this.makeScale(this.xOpts, this.xData, [x0, x0 + w]);
    const sy = this.makeScale(this.yOpts, this.yData, [y0 + h, y0]);
    const out: string[] = [];
    out.push(`<rect x="${x0}" y="${y0}" width="${w}" height="${h}" fill="none" stroke="#444"/>`);

    // axes
    const xTicks = sx.ticks(this.xOpts.log ? 4 : 6);
    const yTicks = sy.ticks(this.yOpts.log ? 4 : 6);
    for (const t of xTicks) {
      const px = sx(t);
      out.push(`<line x1="${px}" y1="${y0 + h}" x2="${px}" y2="${y0 + h + 4}" stroke="#444"/>`);
      out.push(`<text x="${px}" y="${y0 + h + 16}" text-anchor="middle" font-size="10" ${FONT}>${esc(fmtTick(t))}</text>`);
    }
    for (const t of yTicks) {
      const py = sy(t);
      out.push(`<line x1="${x0 - 4}" y1="${py}" x2="${x0}" y2="${py}" stroke="#444"/>`);
      out.push(`<text x="${x0 - 6}" y="${py + 3}" text-anchor="end" font-size="10" ${FONT}>${esc(fmtTick(t))}</text>`);
    }
    if (this.xOpts.label) {
      out.push(`<text x="${x0 + w / 2}" y="${y0 + h + 32}" text-anchor="middle" font-size="11" ${FONT}>${esc(this.xOpts.label)}</text>`);
    }
    if (this.yOpts.label) {
      out.push(`<text x="${x0 - 38}" y="${y0 + h / 2}" text-anchor="middle" font-size="11" ${FONT} transform="rotate(-90 ${x0 - 38} ${y0 + h / 2})">${esc(this.yOpts.label)}</text>`);
    }
    if (this.titleText) {
      out.push(`<text x="${x0 + w / 2}" y="${y0 - 6}" text-anchor="middle" font-size="12" ${FONT}>${esc(this.titleText)}</text>`);
    }

    // extras first so series draw on top
    for (const extra of this.extras) {
      const item = JSON.parse(extra);
      if (item[0] === "cells") {
        const [, xs, ys, values] = item as [string, number[], number[], number[][]];
        let lo = Infinity, hi = -Infinity;
        for (const row of values) for (const v of row) {
          if (Number.isFinite(v)) { lo = Math.min(lo, v); hi = Math.max(hi, v); }
        }
        const dx = xs.length > 1 ? sx(xs[1]) - sx(xs[0]) : w;
        const dy = ys.length > 1 ? Math.abs(sy(ys[1]) - sy(ys[0])) : h;
        for (let i = 0; i < ys.length; i++) {
          for (let j = 0; j < xs.length; j++) {
            const v = values[i][j];
            const c = d3.interpolateViridis(hi > lo ? (v - lo) / (hi - lo) : 0.5);
            out.push(`<rect x="${sx(xs[j]) - dx / 2}" y="${sy(ys[i]) - dy / 2}" width="${dx + 0.5}" height="${dy + 0.5}" fill="${c}"/>`);
          }
        }
      } else if (item[0] === "bars") {
        const [, edges, freqs, color, label, group] = item as [string, number[], number[], string, string, string];
        const attrs = group ? ` data-hist="${esc(group)}"` : "";
        out.push(`<g${attrs}>`);
        for (let i = 0; i < freqs.length; i++) {
          const px = sx(edges[i]);
          const pw = sx(edges[i + 1]) - px;
          const py = sy(freqs[i]);
          out.push(`<rect x="${px}" y="${py}" width="${pw}" height="${sy(0) - py}" fill="${color}" fill-opacity="0.55" data-freq="${freqs[i]}"/>`);
        }
        out.push("</g>");
        if (label) this.series.push({ kind: "line", xs: [], ys: [], color, label });
      } else if (item[0] === "hguide") {
        const [, name, value, label] = item as [string, string, string, string];
        const py = sy(Number(value));
        out.push(`<g class="marker" data-marker="${esc(name)}" data-value="${esc(value)}">`);
        out.push(`<line x1="${x0}" y1="${py}" x2="${x0 + w}" y2="${py}" stroke="#666" stroke-dasharray="5 3"/>`);
        out.push(`<text x="${x0 + w - 4}" y="${py - 4}" text-anchor="end" font-size="10" ${FONT}>${esc(label)}</text>`);
        out.push("</g>");
      }
    }

    // series
    for (const s of this.series) {
      if (s.kind === "line" && s.xs.length > 0) {
        const pts: string[] = [];
        let pen = false;
        for (let i = 0; i < s.xs.length; i++) {
          if (!Number.isFinite(s.ys[i]) || !Number.isFinite(s.xs[i])) { pen = false; continue; }
          pts.push(`${pen ? "L" : "M"}${sx(s.xs[i]).toFixed(2)},${sy(s.ys[i]).toFixed(2)}`);
          pen = true;
        }
        const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
        const label = s.label ? ` data-series="${esc(s.label)}"` : "";
        out.push(`<path d="${pts.join("")}" fill="none" stroke="${s.color}" stroke-width="${s.width ?? 1.5}"${dash}${label}/>`);
      } else if (s.kind === "points") {
        const label = s.label ? ` data-series="${esc(s.label)}"` : "";
        out.push(`<g fill="${s.color}"${label}>`);
        for (let i = 0; i < s.xs.length; i++) {
          if (!Number.isFinite(s.ys[i])) continue;
          out.push(`<circle cx="${sx(s.xs[i]).toFixed(2)}" cy="${sy(s.ys[i]).toFixed(2)}" r="${s.r ?? 2.5}"/>`);
        }
        out.push("</g>");
      }
    }

    // markers on top
    for (const m of this.markers) {
      const item = JSON.parse(m) as [string, string, string, string, number?, number?];
      if (item[0] === "rule") {
        const [, name, value, label] = item;
        const px = sx(Number(value));
        out.push(`<g class="marker" data-marker="${esc(name)}" data-value="${esc(value)}">`);
        out.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + h}" stroke="#555" stroke-dasharray="4 3"/>`);
        out.push(`<text x="${px + 3}" y="${y0 + 12}" font-size="11" ${FONT}>${esc(label)}</text>`);
        out.push("</g>");
      } else {
        const [, name, value, label, mx, my] = item;
        const px = sx(mx as number);
        const py = sy(my as number);
        out.push(`<g class="marker" data-marker="${esc(name)}" data-value="${esc(value)}">`);
        out.push(`<circle cx="${px.toFixed(2)}" cy="${py.toFixed(2)}" r="3.5" fill="none" stroke="#111" stroke-width="1.3"/>`);
        if (label) out.push(`<text x="${px + 5}" y="${py - 5}" font-size="10" ${FONT}>${esc(label)}</text>`);
        out.push("</g>");
      }
    }

    // legend
    const entries = this.series.filter((s) => s.label);
    if (entries.length > 0) {
      let ly = y0 + 8;
      out.push(`<g font-size="10" ${FONT}>`);
      for (const s of entries) {
        out.push(`<line x1="${x0 + w - 78}" y1="${ly}" x2="${x0 + w - 62}" y2="${ly}" stroke="${s.color}" stroke-width="2"${s.dash ? ` stroke-dasharray="${s.dash}"` : ""}/>`);
        out.push(`<text x="${x0 + w - 58}" y="${ly + 3}">${esc(s.label ?? "")}</text>`);
        ly += 13;
      }
      out.push("</g>");
    }
    return out.join("\n");
  }
}

export class Figure {
  private panels: Panel[] = [];
  private raw: string[] = [];

  constructor(readonly width: number, readonly height: number) {}

  /** Add a panel at a grid cell; margins leave room for axis labels. */
  panel(col: number, row: number, nCols: number, nRows: number): Panel {
    const ml = 56, mr = 14, mt = 26, mb = 44;
    const cw = this.width / nCols;
    const ch = this.height / nRows;
    const p = new Panel(col * cw + ml, row * ch + mt, cw - ml - mr, ch - mt - mb);
    this.panels.push(p);
    return p;
  }

  /** Free-form SVG content (e.g. the graph drawing). */
  add(fragment: string): void {
    this.raw.push(fragment);
  }

  render(): string {
    const body = [...this.panels.map((p) => p.render()), ...this.raw].join("\n");
    return `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" viewBox="0 0 ${this.width} ${this.height}">\n` +
      `<rect width="${this.width}" height="${this.height}" fill="white"/>\n${body}\n</svg>\n`;
  }
}

/** Equal-width histogram, frequencies normalized to peak 1. */
export function histogram(values: number[], nBins: number, lo?: number, hi?: number): { edges: number[]; freqs: number[] } {
  if (values.length === 0) throw new Error("empty histogram input");
  const min = lo ?? Math.min(...values);
  const max = hi ?? Math.max(...values);
  const span = max > min ? max - min : 1;
  const counts = new Array(nBins).fill(0);
  for (const v of values) {
    const b = Math.min(nBins - 1, Math.floor(((v - min) / span) * nBins));
    counts[b] += 1;
  }
  const peak = Math.max(...counts);
  const edges = Array.from({ length: nBins + 1 }, (_, i) => min + (span * i) / nBins);
  return { edges, freqs: counts.map((c) => (peak > 0 ? c / peak : 0)) };
}
