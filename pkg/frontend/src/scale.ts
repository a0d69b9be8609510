/** Linear/log axis scales with "nice" tick placement. */

export interface Scale {
  /** data value -> pixel coordinate */
  px(v: number): number;
  ticks: number[];
  domain: [number, number];
  log: boolean;
}

/** [min, max] of finite values; undefined when there are none. */
export function extent(values: Iterable<number>): [number, number] | undefined {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return lo <= hi ? [lo, hi] : undefined;
}

/** Pad a degenerate or tight domain so lines don't sit on the frame. */
export function padded(domain: [number, number], frac = 0.05): [number, number] {
  let [lo, hi] = domain;
  if (lo === hi) {
    const bump = lo === 0 ? 1 : Math.abs(lo) * 0.5;
    lo -= bump;
    hi += bump;
  }
  const pad = (hi - lo) * frac;
  return [lo - pad, hi + pad];
}

/** Standard 1-2-5 tick steps covering [lo, hi] with about `count` ticks. */
export function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo) || !Number.isFinite(lo) || !Number.isFinite(hi)) return [];
  const span = hi - lo;
  const rawStep = span / Math.max(1, count);
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (mag * m >= rawStep) {
      step = mag * m;
      break;
    }
  }
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    // snap values like 0.30000000000000004
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const k = (r1 - r0) / (d1 - d0);
  return {
    px: (v: number) => r0 + (v - d0) * k,
    ticks: niceTicks(d0, d1),
    domain,
    log: false,
  };
}

/** Log10 scale for strictly positive domains; ticks at decades. */
export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (!(d0 > 0) || !(d1 > d0)) {
    throw new Error(`log scale needs 0 < lo < hi, got [${d0}, ${d1}]`);
  }
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const [r0, r1] = range;
  const k = (r1 - r0) / (l1 - l0);
  const ticks: number[] = [];
  for (let e = Math.ceil(l0); e <= Math.floor(l1); e++) {
    ticks.push(Math.pow(10, e));
  }
  return {
    px: (v: number) => r0 + (Math.log10(v) - l0) * k,
    ticks,
    domain,
    log: true,
  };
}

/** Short label for a tick value. */
export function tickLabel(v: number): string {
  if (v !== 0 && (Math.abs(v) >= 1e5 || Math.abs(v) < 1e-3)) {
    return v.toExponential(0).replace("e+", "e");
  }
  const s = String(Number(v.toPrecision(10)));
  return s;
}
