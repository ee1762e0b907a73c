/**
 * Readers for the CLI output files: CSV tables with "# key = value"
 * echo headers, key/value summary CSVs, JSON-lines records, and the
 * instance TOML dump. Recipes fail fast here when a required column
 * is missing or a series is empty.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export interface Table {
  /** echo lines, e.g. meta["config.problem.f"] === "0.8" */
  meta: Record<string, string>;
  header: string[];
  /** column name -> values, in file order */
  columns: Record<string, number[]>;
  /** verbatim cell strings, for values that must survive re-serialization */
  raw: Record<string, string[]>;
}

function splitEcho(text: string): { meta: Record<string, string>; body: string } {
  const meta: Record<string, string> = {};
  const lines = text.split("\n");
  let i = 0;
  for (; i < lines.length && lines[i].startsWith("#"); i++) {
    const m = lines[i].match(/^#\s*([^=]+?)\s*=\s*(.*)$/);
    if (m) meta[m[1]] = m[2];
  }
  return { meta, body: lines.slice(i).join("\n") };
}

export function readCsv(path: string): Table {
  const { meta, body } = splitEcho(readFileSync(path, "utf8"));
  const parsed = Papa.parse<string[]>(body.trim(), {
    delimiter: ",", skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new Error(`${path}: ${parsed.errors[0].message}`);
  }
  const rows = parsed.data;
  if (rows.length === 0) throw new Error(`${path}: no header row`);
  const header = rows[0];
  const columns: Record<string, number[]> = {};
  const raw: Record<string, string[]> = {};
  header.forEach((name, j) => {
    columns[name] = rows.slice(1).map((r) => {
      const cell = r[j];
      return cell === undefined || cell.trim() === "" ? NaN : Number(cell);
    });
    raw[name] = rows.slice(1).map((r) => r[j]);
  });
  return { meta, header, columns, raw };
}

/** Fetch a column, failing fast if absent or empty. */
export function column(table: Table, name: string, path = "table"): number[] {
  const col = table.columns[name];
  if (!col) throw new Error(`${path}: missing required column '${name}'`);
  if (col.length === 0) throw new Error(`${path}: column '${name}' is empty`);
  return col;
}

export interface Summary {
  meta: Record<string, string>;
  /** key -> value string exactly as written by the CLI */
  values: Record<string, string>;
}

export function readSummary(path: string): Summary {
  const table = readCsv(path);
  const keys = column(table, "key", path).length; // presence check only
  void keys;
  const values: Record<string, string> = {};
  table.raw["key"].forEach((k, i) => {
    values[k] = table.raw["value"][i];
  });
  return { meta: table.meta, values };
}

export function summaryValue(summary: Summary, key: string, path = "summary"): string {
  const v = summary.values[key];
  if (v === undefined) throw new Error(`${path}: missing summary key '${key}'`);
  return v;
}

export function readJsonl(path: string): Record<string, unknown>[] {
  const lines = readFileSync(path, "utf8").split("\n").filter((l) => l.trim() !== "");
  if (lines.length === 0) throw new Error(`${path}: no records`);
  return lines.map((l) => JSON.parse(l));
}

export interface InstanceDump {
  nQubits: number;
  energyScale: number;
  edges: [number, number][];
  hZ: number[];
  jZz: number[];
  hX: number[];
}

/** Parse the CLI's instance TOML dump (flat keys, numeric arrays only). */
export function readInstanceToml(path: string): InstanceDump {
  const text = readFileSync(path, "utf8");
  const fields: Record<string, string> = {};
  for (const line of text.split("\n")) {
    const m = line.match(/^(\w+)\s*=\s*(.*)$/);
    if (m) fields[m[1]] = m[2];
  }
  const need = (k: string): string => {
    if (!(k in fields)) throw new Error(`${path}: missing key '${k}'`);
    return fields[k];
  };
  const numbers = (k: string): number[] =>
    (need(k).match(/-?[\d.eE+-]+/g) ?? []).map(Number);
  const edges: [number, number][] = [];
  for (const m of need("edges").matchAll(/\[\s*(\d+)\s*,\s*(\d+)\s*\]/g)) {
    edges.push([Number(m[1]), Number(m[2])]);
  }
  return {
    nQubits: Number(need("n_qubits")),
    energyScale: Number(need("energy_scale")),
    edges,
    hZ: numbers("h_z"),
    jZz: numbers("j_zz"),
    hX: numbers("h_x"),
  };
}
