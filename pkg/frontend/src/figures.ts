/** Figure layouts: which columns of which bundle CSV land on which panel.
 *
 * Rendering is pure file -> file. The only derived geometry is the critical
 * curve a*beta - a + 1 = 0 overlaid on the region scatter, which is part of
 * the figure itself, not of the data.
 */

import { Bundle, BundleError, FigureId, figurePrefix, requireCsv } from "./bundle.js";
import { BundleCsv, columnIndex, toNumber } from "./csv.js";
import { extent, linearScale, logScale, padded, Scale } from "./scale.js";
import { document, LegendEntry, Panel, PanelOptions } from "./svg.js";

export interface Rendered {
  svg: string;
  warnings: string[];
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

const CLASS_COLORS: Record<string, string> = {
  // caption colours: red = rejected by analysis, purple = found negative
  // numerically, blue = nonnegative; certified points get a darker blue
  rejected_analytic: "#d62728",
  empirically_negative: "#9467bd",
  empirically_nonnegative: "#6baed6",
  certified_positive: "#08519c",
};

function seriesColor(i: number): string {
  return PALETTE[i % PALETTE.length] ?? "#000";
}

function num(label: string): string {
  const v = Number(label);
  if (!Number.isFinite(v)) return label;
  return String(Number(v.toPrecision(4)));
}

/** Group rows by one column, preserving first-seen order. */
function groupBy(csv: BundleCsv, col: number): Map<string, string[][]> {
  const groups = new Map<string, string[][]>();
  for (const row of csv.rows) {
    const key = row[col] ?? "";
    const bucket = groups.get(key);
    if (bucket === undefined) {
      groups.set(key, [row]);
    } else {
      bucket.push(row);
    }
  }
  return groups;
}

function colValues(rows: string[][], col: number, where: string): number[] {
  return rows.map((r) => toNumber(r[col] ?? "", where));
}

interface SeriesSpec {
  label: string;
  xs: number[];
  ys: number[];
  color: string;
  dash?: string;
}

/** One framed panel of line series with a shared y extent. */
function linePanel(
  opts: Omit<PanelOptions, "xScale" | "yScale">,
  series: SeriesSpec[],
  logY = false,
): Panel {
  const xs = series.flatMap((s) => s.xs);
  const ys = series.flatMap((s) => s.ys);
  const xDom = padded(extent(xs) ?? [0, 1], 0.02);
  let panel: Panel;
  if (logY) {
    const positive = ys.filter((v) => v > 0);
    const [lo, hi] = extent(positive) ?? [0.1, 10];
    panel = new Panel({
      ...opts,
      xScale: (r) => linearScale(xDom, r),
      yScale: (r) => logScale([lo / 1.5, hi * 1.5], r),
    });
  } else {
    const yDom = padded(extent(ys) ?? [0, 1], 0.06);
    panel = new Panel({
      ...opts,
      xScale: (r) => linearScale(xDom, r),
      yScale: (r) => linearScale(yDom, r),
    });
  }
  const entries: LegendEntry[] = [];
  for (const s of series) {
    panel.line(s.xs, s.ys, { stroke: s.color, dash: s.dash });
    entries.push({ label: s.label, color: s.color, dash: s.dash });
  }
  panel.legend(entries);
  return panel;
}

/** Line figure where panels split the rows by gain/coefficient groups and
 * each panel draws one series per secondary key. */
function groupedLineFigure(
  csv: BundleCsv,
  where: string,
  panelCol: string,
  seriesCol: string,
  xCol: string,
  yCol: string,
  panelTitle: (key: string) => string,
  seriesLabel: (key: string) => string,
  yLabel: string,
): string[] {
  const pi = columnIndex(csv, panelCol, where);
  const si = columnIndex(csv, seriesCol, where);
  const xi = columnIndex(csv, xCol, where);
  const yi = columnIndex(csv, yCol, where);
  const panels = groupBy(csv, pi);
  const width = 460;
  const parts: string[] = [];
  let x = 0;
  for (const [key, rows] of panels) {
    const series: SeriesSpec[] = [];
    let idx = 0;
    for (const [skey, srows] of groupBy({ ...csv, rows } as BundleCsv, si)) {
      series.push({
        label: seriesLabel(skey),
        xs: colValues(srows, xi, where),
        ys: colValues(srows, yi, where),
        color: seriesColor(idx),
      });
      idx += 1;
    }
    parts.push(
      linePanel(
        { x, y: 0, width, height: 400, title: panelTitle(key), xLabel: xCol, yLabel },
        series,
      ).render(),
    );
    x += width;
  }
  return parts;
}

function renderDelayedTrace(bundle: Bundle): Rendered {
  const name = "fig42_delayed_response.csv";
  const csv = requireCsv(bundle, name);
  const ai = columnIndex(csv, "a", name);
  const ti = columnIndex(csv, "t", name);
  const vi = columnIndex(csv, "value", name);
  const groups = groupBy(csv, ai);
  const left: SeriesSpec[] = [];
  const right: SeriesSpec[] = [];
  let idx = 0;
  for (const [key, rows] of groups) {
    const spec: SeriesSpec = {
      label: `a = ${num(key)}`,
      xs: colValues(rows, ti, name),
      ys: colValues(rows, vi, name),
      color: seriesColor(idx),
    };
    (Number(key) <= 0 ? left : right).push(spec);
    idx += 1;
  }
  const body = [
    linePanel(
      { x: 0, y: 0, width: 460, height: 400, title: "gains a <= 0", xLabel: "t", yLabel: "delayed trace" },
      left,
    ).render(),
    linePanel(
      { x: 460, y: 0, width: 460, height: 400, title: "gains a > 0", xLabel: "t", yLabel: "delayed trace" },
      right,
    ).render(),
  ];
  return { svg: document(920, 430, bundle.manifest.description, body), warnings: [] };
}

function renderResponseSurface(bundle: Bundle, figureId: FigureId): Rendered {
  const name =
    figureId === "6.1" ? "fig61_small_gain_response.csv" : "fig62_oscillatory_response.csv";
  const csv = requireCsv(bundle, name);
  const body = groupedLineFigure(
    csv,
    name,
    "a",
    "beta",
    "t",
    "value",
    (key) => `gain a = ${num(key)}`,
    (key) => `beta = ${num(key)}`,
    "response",
  );
  return {
    svg: document(460 * body.length, 430, bundle.manifest.description, body),
    warnings: [],
  };
}

function renderContourChoice(bundle: Bundle): Rendered {
  const name = "fig63_contour_choice.csv";
  const csv = requireCsv(bundle, name);
  const bi = columnIndex(csv, "beta", name);
  const ti = columnIndex(csv, "t", name);
  const panels: Array<[string, string]> = [
    ["naive_contour", "contour below the pole (untrustworthy)"],
    ["pole_aware", "contour right of the pole"],
  ];
  const body: string[] = [];
  let x = 0;
  for (const [col, title] of panels) {
    const vi = columnIndex(csv, col, name);
    const series: SeriesSpec[] = [];
    let idx = 0;
    for (const [key, rows] of groupBy(csv, bi)) {
      series.push({
        label: `beta = ${num(key)}`,
        xs: colValues(rows, ti, name),
        ys: colValues(rows, vi, name),
        color: seriesColor(idx),
      });
      idx += 1;
    }
    body.push(
      linePanel(
        { x, y: 0, width: 460, height: 400, title, xLabel: "t", yLabel: "response" },
        series,
      ).render(),
    );
    x += 460;
  }
  return { svg: document(920, 430, bundle.manifest.description, body), warnings: [] };
}

function renderUndampedRing(bundle: Bundle): Rendered {
  const name = "fig64_undamped_oscillation.csv";
  const csv = requireCsv(bundle, name);
  const body = groupedLineFigure(
    csv,
    name,
    "a",
    "beta",
    "t",
    "value",
    (key) => `critical gain a = ${num(key)}`,
    (key) => `beta = ${num(key)}`,
    "response",
  );
  return {
    svg: document(460 * body.length, 430, bundle.manifest.description, body),
    warnings: [],
  };
}

function renderRegion(bundle: Bundle): Rendered {
  const name = "fig71_region.csv";
  const csv = requireCsv(bundle, name);
  const warnings: string[] = [];
  let xDom: [number, number] = [0, 10];
  let yDom: [number, number] = [0, 3];
  const empty = csv.rows.length === 0;
  if (empty) {
    warnings.push(`${name} has no data rows; rendering empty axes`);
  } else {
    const ai = columnIndex(csv, "a", name);
    const bi = columnIndex(csv, "beta", name);
    xDom = padded(extent(colValues(csv.rows, ai, name)) ?? xDom, 0.03);
    yDom = padded(extent(colValues(csv.rows, bi, name)) ?? yDom, 0.03);
  }
  const panel = new Panel({
    x: 0,
    y: 0,
    width: 640,
    height: 480,
    title: "sign classes over the gain/offset box",
    xLabel: "a",
    yLabel: "beta",
    xScale: (r) => linearScale(xDom, r),
    yScale: (r) => linearScale(yDom, r),
  });
  const entries: LegendEntry[] = [];
  if (!empty) {
    const ai = columnIndex(csv, "a", name);
    const bi = columnIndex(csv, "beta", name);
    const ci = columnIndex(csv, "class", name);
    const byClass = groupBy(csv, ci);
    // draw the dense nonnegative cloud first so rarer classes stay visible
    const order = [
      "empirically_nonnegative",
      "certified_positive",
      "rejected_analytic",
      "empirically_negative",
    ];
    const keys = [...byClass.keys()].sort(
      (p, q) => (order.indexOf(p) + 1 || 99) - (order.indexOf(q) + 1 || 99),
    );
    for (const key of keys) {
      const rows = byClass.get(key) ?? [];
      const color = CLASS_COLORS[key] ?? "#888";
      panel.dots(
        colValues(rows, ai, name),
        colValues(rows, bi, name),
        color,
        1.6,
        `class-${key}`,
      );
      entries.push({ label: `${key} (${rows.length})`, color, marker: true });
    }
  }
  // critical curve a*beta - a + 1 = 0, i.e. beta = (a - 1)/a for a >= 1
  const [xlo, xhi] = xDom;
  const curveXs: number[] = [];
  const curveYs: number[] = [];
  const start = Math.max(1.0000001, xlo);
  if (xhi > start) {
    for (let i = 0; i <= 256; i++) {
      const a = start + ((xhi - start) * i) / 256;
      curveXs.push(a);
      curveYs.push((a - 1) / a);
    }
  }
  panel.raw(`<g class="critical-curve">`);
  panel.line(curveXs, curveYs, { stroke: "#000", width: 2 });
  panel.raw(`</g>`);
  entries.push({ label: "critical curve a*beta - a + 1 = 0", color: "#000" });
  panel.legend(entries);
  return {
    svg: document(640, 510, bundle.manifest.description, [panel.render()]),
    warnings,
  };
}

function renderGrowthBound(bundle: Bundle): Rendered {
  const name = "figB1_growth_bound.csv";
  const csv = requireCsv(bundle, name);
  const ai = columnIndex(csv, "A", name);
  const ti = columnIndex(csv, "t", name);
  const yi = columnIndex(csv, "y", name);
  const bi = columnIndex(csv, "bound", name);
  const series: SeriesSpec[] = [];
  let idx = 0;
  for (const [key, rows] of groupBy(csv, ai)) {
    const ts = colValues(rows, ti, name);
    series.push({
      label: `A = ${num(key)}`,
      xs: ts,
      ys: colValues(rows, yi, name),
      color: seriesColor(idx),
    });
    series.push({
      label: `exp(${num(key)} t) bound`,
      xs: ts,
      ys: colValues(rows, bi, name),
      color: seriesColor(idx),
      dash: "6 4",
    });
    idx += 1;
  }
  const panel = linePanel(
    {
      x: 0,
      y: 0,
      width: 560,
      height: 440,
      title: "solutions under their exponential bounds",
      xLabel: "t",
      yLabel: "y (log scale)",
    },
    series,
    true,
  );
  return {
    svg: document(560, 470, bundle.manifest.description, [panel.render()]),
    warnings: [],
  };
}

function renderNegativeCoefficients(bundle: Bundle): Rendered {
  const name = "figB2_negative_coefficient.csv";
  const csv = requireCsv(bundle, name);
  const ai = columnIndex(csv, "A", name);
  const ti = columnIndex(csv, "t", name);
  const yi = columnIndex(csv, "y", name);
  const series: SeriesSpec[] = [];
  let idx = 0;
  for (const [key, rows] of groupBy(csv, ai)) {
    series.push({
      label: `A = ${num(key)}`,
      xs: colValues(rows, ti, name),
      ys: colValues(rows, yi, name),
      color: seriesColor(idx),
    });
    idx += 1;
  }
  const panel = linePanel(
    {
      x: 0,
      y: 0,
      width: 560,
      height: 440,
      title: "negative coefficients: decay versus oscillation",
      xLabel: "t",
      yLabel: "y",
    },
    series,
  );
  return {
    svg: document(560, 470, bundle.manifest.description, [panel.render()]),
    warnings: [],
  };
}

export function renderFigure(figureId: FigureId, bundle: Bundle): Rendered {
  switch (figureId) {
    case "4.2":
      return renderDelayedTrace(bundle);
    case "6.1":
    case "6.2":
      return renderResponseSurface(bundle, figureId);
    case "6.3":
      return renderContourChoice(bundle);
    case "6.4":
      return renderUndampedRing(bundle);
    case "7.1":
      return renderRegion(bundle);
    case "B.1":
      return renderGrowthBound(bundle);
    case "B.2":
      return renderNegativeCoefficients(bundle);
    default: {
      const exhaustive: never = figureId;
      throw new BundleError(`no renderer for figure ${String(exhaustive)}`);
    }
  }
}

export { figurePrefix };
