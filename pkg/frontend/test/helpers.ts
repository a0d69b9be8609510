/** Builders for small synthetic bundles used across the test files. */

import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export const HASH = "0123456789abcdef";

export function tempDir(): string {
  return mkdtempSync(join(tmpdir(), "figure-gen-test-"));
}

export function csvText(header: string, rows: string[], hash: string = HASH): string {
  return [
    "# invocation: pointfeedback reproduce --figure test",
    `# config-hash: ${hash}`,
    header,
    ...rows,
  ].join("\n") + "\n";
}

export function writeManifest(
  dir: string,
  figure: string,
  files: string[],
  hash: string = HASH,
): void {
  const prefix = "fig" + figure.replace(".", "");
  writeFileSync(
    join(dir, `${prefix}_manifest.json`),
    JSON.stringify(
      {
        figure,
        description: `test bundle for ${figure}`,
        files,
        config_hash: hash,
        invocation: "pointfeedback reproduce --figure test",
      },
      null,
      2,
    ) + "\n",
  );
}

/** Write a complete single-CSV bundle and return its directory. */
export function writeBundle(
  figure: string,
  csvName: string,
  header: string,
  rows: string[],
): string {
  const dir = tempDir();
  writeManifest(dir, figure, [csvName]);
  writeFileSync(join(dir, csvName), csvText(header, rows));
  return dir;
}

export function linesFor(
  groups: Array<[string, Array<[number, number]>]>,
  extra: (g: string, t: number, v: number) => string,
): string[] {
  const rows: string[] = [];
  for (const [g, pts] of groups) {
    for (const [t, v] of pts) {
      rows.push(extra(g, t, v));
    }
  }
  return rows;
}

/** A tiny but fully valid 7.1 bundle (region CSV + summary JSON). */
export function writeRegionBundle(rows: string[]): string {
  const dir = tempDir();
  writeManifest(dir, "7.1", ["fig71_region.csv", "fig71_summary.json"]);
  writeFileSync(
    join(dir, "fig71_region.csv"),
    csvText("a,beta,class,min_value,argmin_t,ratio", rows),
  );
  writeFileSync(
    join(dir, "fig71_summary.json"),
    JSON.stringify({
      n_points: rows.length,
      n_failures: 0,
      counts: {},
      config_hash: HASH,
    }) + "\n",
  );
  return dir;
}
