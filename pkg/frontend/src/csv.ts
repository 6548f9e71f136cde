/**
 * Strict reader for the simulator's CSV schema (plain comma-separated,
 * header row, numeric cells, final free-text error column allowed).
 */

import { readFileSync } from "node:fs";

export interface CsvTable {
  path: string;
  header: string[];
  /** column name -> numeric values, row order preserved */
  columns: Map<string, number[]>;
  rowCount: number;
}

export function parseCsv(text: string, path: string): CsvTable {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error(`empty CSV file: ${path}`);
  }
  const header = lines[0].split(",").map((h) => h.trim());
  if (lines.length === 1) {
    throw new Error(`CSV file has a header but no data rows: ${path}`);
  }
  const columns = new Map<string, number[]>(header.map((h) => [h, []]));
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length < header.length) {
      throw new Error(`row ${i + 1} of ${path} has ${cells.length} cells, expected ${header.length}`);
    }
    header.forEach((name, j) => {
      columns.get(name)!.push(Number(cells[j]));
    });
  }
  return { path, header, columns, rowCount: lines.length - 1 };
}

export function readCsv(path: string): CsvTable {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new Error(`cannot read CSV file ${path}: ${(err as Error).message}`);
  }
  return parseCsv(text, path);
}

/** Column accessor that fails with the available headers in the message. */
export function column(table: CsvTable, name: string): number[] {
  const values = table.columns.get(name);
  if (!values) {
    throw new Error(
      `column "${name}" not found in ${table.path}; available: ${table.header.join(", ")}`,
    );
  }
  return values;
}
