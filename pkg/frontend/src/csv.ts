import Papa from "papaparse";

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

/** Parse one of the simulator's CSV artifacts (comma-separated, one header row). */
export function parseCsv(text: string): Table {
  const result = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (result.errors.length > 0) {
    const first = result.errors[0];
    throw new Error(`CSV parse error at row ${first.row}: ${first.message}`);
  }
  const columns = result.meta.fields ?? [];
  return { columns, rows: result.data };
}

/** Numeric view of one column; blank cells become null. */
export function numericColumn(table: Table, name: string): (number | null)[] {
  return table.rows.map((row) => {
    const cell = row[name];
    if (cell === undefined || cell === "") {
      return null;
    }
    const value = Number(cell);
    if (Number.isNaN(value)) {
      throw new Error(`column ${name} holds a non-numeric cell: ${cell}`);
    }
    return value;
  });
}
