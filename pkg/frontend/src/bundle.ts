/** Loading and validating one figure bundle from a directory.
 *
 * A bundle is a `fig*_manifest.json` naming its data files plus the files
 * themselves. Every CSV carries the manifest's config hash in its second
 * comment line; JSON members carry it in a `config_hash` field. Any missing
 * file or hash disagreement is a hard error — the renderer must never mix
 * data produced by different configurations.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";

import { BundleCsv, parseBundleCsv } from "./csv.js";

export const FIGURE_IDS = ["4.2", "6.1", "6.2", "6.3", "6.4", "7.1", "B.1", "B.2"] as const;
export type FigureId = (typeof FIGURE_IDS)[number];

export class BundleError extends Error {}

export interface Manifest {
  figure: string;
  description: string;
  files: string[];
  config_hash: string;
  invocation: string;
}

export interface Bundle {
  manifest: Manifest;
  /** CSV members keyed by file name. */
  csvs: Map<string, BundleCsv>;
  /** Non-CSV (JSON) members keyed by file name. */
  jsons: Map<string, Record<string, unknown>>;
}

export function figurePrefix(figureId: string): string {
  return "fig" + figureId.replace(".", "");
}

function readText(path: string): string {
  try {
    return readFileSync(path, "utf8");
  } catch (err) {
    throw new BundleError(`cannot read ${path}: ${(err as Error).message}`);
  }
}

function asManifest(raw: unknown, path: string): Manifest {
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new BundleError(`${path}: manifest must be a JSON object`);
  }
  const obj = raw as Record<string, unknown>;
  for (const key of ["figure", "description", "config_hash", "invocation"] as const) {
    if (typeof obj[key] !== "string") {
      throw new BundleError(`${path}: manifest key ${JSON.stringify(key)} must be a string`);
    }
  }
  const files = obj["files"];
  if (!Array.isArray(files) || files.length === 0 || !files.every((f) => typeof f === "string")) {
    throw new BundleError(`${path}: manifest "files" must be a non-empty string array`);
  }
  return {
    figure: obj["figure"] as string,
    description: obj["description"] as string,
    files: files as string[],
    config_hash: obj["config_hash"] as string,
    invocation: obj["invocation"] as string,
  };
}

export function loadBundle(figureId: FigureId, inDir: string): Bundle {
  const manifestPath = join(inDir, `${figurePrefix(figureId)}_manifest.json`);
  let rawManifest: unknown;
  try {
    rawManifest = JSON.parse(readText(manifestPath));
  } catch (err) {
    if (err instanceof BundleError) throw err;
    throw new BundleError(`${manifestPath}: invalid JSON (${(err as Error).message})`);
  }
  const manifest = asManifest(rawManifest, manifestPath);
  if (manifest.figure !== figureId) {
    throw new BundleError(
      `${manifestPath}: manifest is for figure ${manifest.figure}, expected ${figureId}`,
    );
  }

  const csvs = new Map<string, BundleCsv>();
  const jsons = new Map<string, Record<string, unknown>>();
  for (const name of manifest.files) {
    const path = join(inDir, name);
    if (name.endsWith(".csv")) {
      const csv = parseBundleCsv(readText(path), path);
      if (csv.configHash !== manifest.config_hash) {
        throw new BundleError(
          `${path}: config hash ${csv.configHash} does not match manifest ` +
            `${manifest.config_hash} — bundle members disagree`,
        );
      }
      csvs.set(name, csv);
    } else if (name.endsWith(".json")) {
      let parsed: unknown;
      try {
        parsed = JSON.parse(readText(path));
      } catch (err) {
        if (err instanceof BundleError) throw err;
        throw new BundleError(`${path}: invalid JSON (${(err as Error).message})`);
      }
      if (typeof parsed !== "object" || parsed === null || Array.isArray(parsed)) {
        throw new BundleError(`${path}: expected a JSON object`);
      }
      const obj = parsed as Record<string, unknown>;
      if (obj["config_hash"] !== manifest.config_hash) {
        throw new BundleError(
          `${path}: config hash ${String(obj["config_hash"])} does not match manifest ` +
            `${manifest.config_hash} — bundle members disagree`,
        );
      }
      jsons.set(name, obj);
    } else {
      throw new BundleError(`${path}: unsupported bundle member type`);
    }
  }
  return { manifest, csvs, jsons };
}

/** The single CSV of a one-CSV bundle, by exact name. */
export function requireCsv(bundle: Bundle, name: string): BundleCsv {
  const csv = bundle.csvs.get(name);
  if (csv === undefined) {
    throw new BundleError(
      `bundle for figure ${bundle.manifest.figure} is missing ${name}; ` +
        `manifest lists [${bundle.manifest.files.join(", ")}]`,
    );
  }
  return csv;
}
