/** A small SVG scene builder: panels with framed axes, ticks, series, and
 * legends. Output is deterministic — element order follows call order and
 * numbers are fixed-precision — so rendered files are byte-stable.
 */

import { Scale, tickLabel } from "./scale.js";

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Fixed-precision pixel coordinate (trailing zeros trimmed). */
export function fmt(v: number): string {
  const s = v.toFixed(2);
  return s.replace(/\.?0+$/, "") || "0";
}

export interface SeriesStyle {
  stroke: string;
  width?: number;
  dash?: string;
}

export interface LegendEntry {
  label: string;
  color: string;
  dash?: string | undefined;
  marker?: boolean;
}

export interface PanelOptions {
  x: number;
  y: number;
  width: number;
  height: number;
  title: string;
  xLabel: string;
  yLabel: string;
  xScale: (range: [number, number]) => Scale;
  yScale: (range: [number, number]) => Scale;
}

const MARGIN = { left: 58, right: 12, top: 30, bottom: 42 };

export class Panel {
  readonly xs: Scale;
  readonly ys: Scale;
  private readonly parts: string[] = [];
  private readonly opts: PanelOptions;
  private readonly plotX: number;
  private readonly plotY: number;
  private readonly plotW: number;
  private readonly plotH: number;

  constructor(opts: PanelOptions) {
    this.opts = opts;
    this.plotX = opts.x + MARGIN.left;
    this.plotY = opts.y + MARGIN.top;
    this.plotW = opts.width - MARGIN.left - MARGIN.right;
    this.plotH = opts.height - MARGIN.top - MARGIN.bottom;
    this.xs = opts.xScale([this.plotX, this.plotX + this.plotW]);
    // y grows downward in SVG: flip the range
    this.ys = opts.yScale([this.plotY + this.plotH, this.plotY]);
  }

  /** Clip a point to the plot rectangle test. */
  private inside(px: number, py: number): boolean {
    return (
      px >= this.plotX - 0.5 &&
      px <= this.plotX + this.plotW + 0.5 &&
      py >= this.plotY - 0.5 &&
      py <= this.plotY + this.plotH + 0.5
    );
  }

  /** Polyline through (x, y) data points; segments leaving the frame are
   * broken rather than drawn across it. */
  line(xs: number[], ys: number[], style: SeriesStyle): void {
    const runs: string[][] = [];
    let run: string[] = [];
    for (let i = 0; i < xs.length; i++) {
      const xv = xs[i];
      const yv = ys[i];
      if (xv === undefined || yv === undefined) continue;
      if (this.ys.log && !(yv > 0)) {
        if (run.length > 1) runs.push(run);
        run = [];
        continue;
      }
      const px = this.xs.px(xv);
      const py = this.ys.px(yv);
      if (!Number.isFinite(px) || !Number.isFinite(py) || !this.inside(px, py)) {
        if (run.length > 1) runs.push(run);
        run = [];
        continue;
      }
      run.push(`${fmt(px)},${fmt(py)}`);
    }
    if (run.length > 1) runs.push(run);
    for (const r of runs) {
      const dash = style.dash ? ` stroke-dasharray="${style.dash}"` : "";
      this.parts.push(
        `<polyline fill="none" stroke="${style.stroke}" stroke-width="${style.width ?? 1.5}"${dash} points="${r.join(" ")}"/>`,
      );
    }
  }

  /** Scatter markers, one class attribute for testability. */
  dots(xs: number[], ys: number[], fill: string, r: number, klass: string): void {
    const pts: string[] = [];
    for (let i = 0; i < xs.length; i++) {
      const xv = xs[i];
      const yv = ys[i];
      if (xv === undefined || yv === undefined) continue;
      const px = this.xs.px(xv);
      const py = this.ys.px(yv);
      if (!Number.isFinite(px) || !Number.isFinite(py) || !this.inside(px, py)) continue;
      pts.push(`<circle cx="${fmt(px)}" cy="${fmt(py)}" r="${r}" fill="${fill}"/>`);
    }
    if (pts.length > 0) {
      this.parts.push(`<g class="${esc(klass)}">${pts.join("")}</g>`);
    }
  }

  /** Arbitrary extra markup positioned by the caller (e.g. overlays). */
  raw(markup: string): void {
    this.parts.push(markup);
  }

  legend(entries: LegendEntry[]): void {
    const x = this.plotX + 8;
    let y = this.plotY + 12;
    const rows: string[] = [];
    for (const e of entries) {
      if (e.marker) {
        rows.push(`<circle cx="${fmt(x + 9)}" cy="${fmt(y - 3)}" r="3" fill="${e.color}"/>`);
      } else {
        const dash = e.dash ? ` stroke-dasharray="${e.dash}"` : "";
        rows.push(
          `<line x1="${fmt(x)}" y1="${fmt(y - 3)}" x2="${fmt(x + 18)}" y2="${fmt(y - 3)}" stroke="${e.color}" stroke-width="2"${dash}/>`,
        );
      }
      rows.push(
        `<text x="${fmt(x + 24)}" y="${fmt(y)}" font-size="11" fill="#333">${esc(e.label)}</text>`,
      );
      y += 15;
    }
    this.parts.push(`<g class="legend">${rows.join("")}</g>`);
  }

  render(): string {
    const o = this.opts;
    const axis: string[] = [];
    const x0 = this.plotX;
    const y0 = this.plotY;
    const x1 = this.plotX + this.plotW;
    const y1 = this.plotY + this.plotH;
    axis.push(
      `<rect x="${fmt(x0)}" y="${fmt(y0)}" width="${fmt(this.plotW)}" height="${fmt(this.plotH)}" fill="white" stroke="#444" stroke-width="1"/>`,
    );
    for (const t of this.xs.ticks) {
      const px = this.xs.px(t);
      if (px < x0 - 0.5 || px > x1 + 0.5) continue;
      axis.push(`<line x1="${fmt(px)}" y1="${fmt(y1)}" x2="${fmt(px)}" y2="${fmt(y1 + 4)}" stroke="#444"/>`);
      axis.push(
        `<text x="${fmt(px)}" y="${fmt(y1 + 16)}" font-size="10" text-anchor="middle" fill="#333">${esc(tickLabel(t))}</text>`,
      );
    }
    for (const t of this.ys.ticks) {
      const py = this.ys.px(t);
      if (py < y0 - 0.5 || py > y1 + 0.5) continue;
      axis.push(`<line x1="${fmt(x0 - 4)}" y1="${fmt(py)}" x2="${fmt(x0)}" y2="${fmt(py)}" stroke="#444"/>`);
      axis.push(
        `<text x="${fmt(x0 - 7)}" y="${fmt(py + 3)}" font-size="10" text-anchor="end" fill="#333">${esc(tickLabel(t))}</text>`,
      );
    }
    axis.push(
      `<text x="${fmt(x0 + this.plotW / 2)}" y="${fmt(o.y + 16)}" font-size="12" text-anchor="middle" fill="#111">${esc(o.title)}</text>`,
    );
    axis.push(
      `<text x="${fmt(x0 + this.plotW / 2)}" y="${fmt(y1 + 32)}" font-size="11" text-anchor="middle" fill="#333">${esc(o.xLabel)}</text>`,
    );
    axis.push(
      `<text x="${fmt(o.x + 14)}" y="${fmt(y0 + this.plotH / 2)}" font-size="11" text-anchor="middle" fill="#333" transform="rotate(-90 ${fmt(o.x + 14)} ${fmt(y0 + this.plotH / 2)})">${esc(o.yLabel)}</text>`,
    );
    return `<g class="panel">${axis.join("")}${this.parts.join("")}</g>`;
  }
}

export function document(width: number, height: number, caption: string, body: string[]): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">` +
    `<rect width="${width}" height="${height}" fill="white"/>` +
    body.join("") +
    `<text x="${fmt(width / 2)}" y="${fmt(height - 8)}" font-size="11" text-anchor="middle" fill="#555">${esc(caption)}</text>` +
    `</svg>\n`
  );
}
