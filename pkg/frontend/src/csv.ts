/** Parsing for the CSV bundles written by the `pointfeedback` CLI.
 *
 * Every bundle CSV starts with two comment lines —
 *
 *     # invocation: pointfeedback reproduce --figure 6.4 ...
 *     # config-hash: 0123456789abcdef
 *
 * — followed by one header row and zero or more data rows. Values use '.'
 * decimals and LF line endings; fields may be RFC-4180 quoted.
 */

export interface BundleCsv {
  /** Exact command line recorded by the producer. */
  invocation: string;
  /** 16-hex digest that must match the bundle manifest. */
  configHash: string;
  header: string[];
  rows: string[][];
}

export class CsvFormatError extends Error {}

const HASH_RE = /^[0-9a-f]{16}$/;

/** Split one CSV record into fields (RFC-4180 quoting, '\n' never appears
 * inside a field in these bundles, so records are plain lines). */
export function splitRecord(line: string, where: string): string[] {
  const fields: string[] = [];
  let field = "";
  let quoted = false;
  let i = 0;
  while (i < line.length) {
    const ch = line[i];
    if (quoted) {
      if (ch === '"') {
        if (line[i + 1] === '"') {
          field += '"';
          i += 2;
          continue;
        }
        quoted = false;
        i += 1;
        continue;
      }
      field += ch;
      i += 1;
      continue;
    }
    if (ch === '"' && field === "") {
      quoted = true;
      i += 1;
      continue;
    }
    if (ch === ",") {
      fields.push(field);
      field = "";
      i += 1;
      continue;
    }
    field += ch;
    i += 1;
  }
  if (quoted) {
    throw new CsvFormatError(`${where}: unterminated quoted field`);
  }
  fields.push(field);
  return fields;
}

function metaLine(lines: string[], index: number, key: string, where: string): string {
  const line = lines[index];
  const prefix = `# ${key}: `;
  if (line === undefined || !line.startsWith(prefix)) {
    throw new CsvFormatError(
      `${where}: line ${index + 1} must start with ${JSON.stringify(prefix)}`,
    );
  }
  return line.slice(prefix.length);
}

export function parseBundleCsv(text: string, where: string): BundleCsv {
  const lines = text.split("\n");
  // a trailing LF leaves one empty final element; drop it
  if (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  const invocation = metaLine(lines, 0, "invocation", where);
  const configHash = metaLine(lines, 1, "config-hash", where);
  if (!HASH_RE.test(configHash)) {
    throw new CsvFormatError(`${where}: config-hash is not a 16-hex digest`);
  }
  const headerLine = lines[2];
  if (headerLine === undefined || headerLine === "" || headerLine.startsWith("#")) {
    throw new CsvFormatError(`${where}: missing column header on line 3`);
  }
  const header = splitRecord(headerLine, where);
  const rows: string[][] = [];
  for (let i = 3; i < lines.length; i++) {
    const line = lines[i];
    if (line === undefined || line === "") {
      throw new CsvFormatError(`${where}: blank data line ${i + 1}`);
    }
    const row = splitRecord(line, where);
    if (row.length !== header.length) {
      throw new CsvFormatError(
        `${where}: line ${i + 1} has ${row.length} fields, header has ${header.length}`,
      );
    }
    rows.push(row);
  }
  return { invocation, configHash, header, rows };
}

/** Column accessor: returns the index of `name` or throws. */
export function columnIndex(csv: BundleCsv, name: string, where: string): number {
  const idx = csv.header.indexOf(name);
  if (idx < 0) {
    throw new CsvFormatError(
      `${where}: expected column ${JSON.stringify(name)}, header is [${csv.header.join(", ")}]`,
    );
  }
  return idx;
}

/** Parse a cell as a finite float (blank cells, NaN and Infinity rejected —
 * Number("") would silently be 0). */
export function toNumber(cell: string, where: string): number {
  const v = cell.trim() === "" ? NaN : Number(cell);
  if (!Number.isFinite(v)) {
    throw new CsvFormatError(`${where}: expected a finite number, got ${JSON.stringify(cell)}`);
  }
  return v;
}
