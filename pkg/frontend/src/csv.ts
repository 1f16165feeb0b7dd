/**
 * CSV reading for the dnls-spectral output schemas.
 *
 * Snapshot CSVs carry columns x, re_u, im_u, abs_u, t, run_label; limit CSVs
 * carry param_value, sup_L2_distance. Schema violations throw SchemaError
 * naming the offending column; missing files throw PathError.
 */

import * as fs from "node:fs";

export class SchemaError extends Error {}

export class PathError extends Error {}

export interface SnapshotRow {
  x: number;
  re_u: number;
  im_u: number;
  abs_u: number;
  t: number;
  run_label: string;
}

export function readTextFile(path: string): string {
  if (!fs.existsSync(path)) {
    throw new PathError(`no such file: ${path}`);
  }
  return fs.readFileSync(path, "utf8");
}

export function parseCsv(text: string): { header: string[]; rows: string[][] } {
  const lines = text.split("\n").filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty CSV: no header row");
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((line) => line.split(","));
  return { header, rows };
}

function columnIndex(header: string[], name: string): number {
  const index = header.indexOf(name);
  if (index < 0) {
    throw new SchemaError(`missing column '${name}'`);
  }
  return index;
}

const SNAPSHOT_COLUMNS = ["x", "re_u", "im_u", "abs_u", "t", "run_label"] as const;

export function parseSnapshotCsv(text: string): SnapshotRow[] {
  const { header, rows } = parseCsv(text);
  const indices = SNAPSHOT_COLUMNS.map((name) => columnIndex(header, name));
  if (rows.length === 0) {
    throw new SchemaError("no rows in snapshot CSV");
  }
  return rows.map((row, lineNumber) => {
    const values = indices.map((i) => row[i]);
    const numbers = values.slice(0, 5).map(Number);
    if (numbers.some((v) => Number.isNaN(v))) {
      throw new SchemaError(`non-numeric value on data row ${lineNumber + 1}`);
    }
    return {
      x: numbers[0],
      re_u: numbers[1],
      im_u: numbers[2],
      abs_u: numbers[3],
      t: numbers[4],
      run_label: values[5],
    };
  });
}

/** Group snapshot rows by run label, keeping only each label's latest time. */
export function latestProfiles(rows: SnapshotRow[]): Map<string, SnapshotRow[]> {
  const byLabel = new Map<string, SnapshotRow[]>();
  for (const row of rows) {
    const bucket = byLabel.get(row.run_label);
    if (bucket === undefined) {
      byLabel.set(row.run_label, [row]);
    } else {
      bucket.push(row);
    }
  }
  const result = new Map<string, SnapshotRow[]>();
  for (const [label, bucket] of byLabel) {
    const tMax = Math.max(...bucket.map((r) => r.t));
    const profile = bucket.filter((r) => r.t === tMax).sort((a, b) => a.x - b.x);
    result.set(label, profile);
  }
  return result;
}
