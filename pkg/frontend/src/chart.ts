/** Pure chart geometry: everything here is DOM-free and unit-testable.
 *
 * The pattern chart is a rectangular dB-vs-angle plot; series and markers
 * are positioned by two linear scales, and clicks invert the x scale back
 * to an angle.
 */

import type { Circle, Complex } from "./types.js";

export interface LinearScale {
  domain: [number, number];
  range: [number, number];
}

export function scale(s: LinearScale, value: number): number {
  const [d0, d1] = s.domain;
  const [r0, r1] = s.range;
  return r0 + ((value - d0) / (d1 - d0)) * (r1 - r0);
}

export function invert(s: LinearScale, px: number): number {
  const [d0, d1] = s.domain;
  const [r0, r1] = s.range;
  return d0 + ((px - r0) / (r1 - r0)) * (d1 - d0);
}

export interface ChartLayout {
  width: number;
  height: number;
  margin: { left: number; right: number; top: number; bottom: number };
  angleRange: [number, number];
  levelRange: [number, number];
}

export const DEFAULT_LAYOUT: ChartLayout = {
  width: 880,
  height: 420,
  margin: { left: 52, right: 16, top: 12, bottom: 34 },
  angleRange: [-90, 90],
  levelRange: [-80, 5],
};

export function angleScale(layout: ChartLayout): LinearScale {
  return {
    domain: layout.angleRange,
    range: [layout.margin.left, layout.width - layout.margin.right],
  };
}

export function levelScale(layout: ChartLayout): LinearScale {
  return {
    domain: layout.levelRange,
    range: [layout.height - layout.margin.bottom, layout.margin.top],
  };
}

/** Clamp a level into the plotted window so nulls stay on the canvas. */
export function clampLevel(levelDb: number, layout: ChartLayout): number {
  const [lo, hi] = layout.levelRange;
  return Math.min(hi, Math.max(lo, levelDb));
}

/** SVG polyline points for a sampled pattern. */
export function seriesPoints(
  anglesDeg: number[],
  levelsDb: number[],
  layout: ChartLayout,
): string {
  const sx = angleScale(layout);
  const sy = levelScale(layout);
  const parts: string[] = [];
  for (let i = 0; i < anglesDeg.length; i++) {
    const x = scale(sx, anglesDeg[i]);
    const y = scale(sy, clampLevel(levelsDb[i], layout));
    parts.push(`${x.toFixed(2)},${y.toFixed(2)}`);
  }
  return parts.join(" ");
}

export interface MarkerPoint {
  thetaDeg: number;
  levelDb: number;
  x: number;
  y: number;
  label: string;
}

/** Pixel positions for prescribed-level markers. */
export function markerPoints(
  markers: { thetaDeg: number; rhoDb: number }[],
  layout: ChartLayout,
): MarkerPoint[] {
  const sx = angleScale(layout);
  const sy = levelScale(layout);
  return markers.map((m) => ({
    thetaDeg: m.thetaDeg,
    levelDb: m.rhoDb,
    x: scale(sx, m.thetaDeg),
    y: scale(sy, clampLevel(m.rhoDb, layout)),
    label: `${m.thetaDeg.toFixed(1)}°, ${m.rhoDb.toFixed(1)} dB`,
  }));
}

/** Map a click x offset (px, relative to the SVG) to a whole-tenth angle. */
export function clickToAngle(offsetX: number, layout: ChartLayout): number | null {
  const sx = angleScale(layout);
  if (offsetX < sx.range[0] || offsetX > sx.range[1]) return null;
  const angle = invert(sx, offsetX);
  return Math.round(angle * 10) / 10;
}

/** Level of a sampled pattern at the grid angle nearest to thetaDeg. */
export function levelAt(
  anglesDeg: number[],
  levelsDb: number[],
  thetaDeg: number,
): number {
  let best = 0;
  let bestDist = Infinity;
  for (let i = 0; i < anglesDeg.length; i++) {
    const dist = Math.abs(anglesDeg[i] - thetaDeg);
    if (dist < bestDist) {
      bestDist = dist;
      best = i;
    }
  }
  return levelsDb[best];
}

export interface InsetGeometry {
  viewBox: string;
  cx: number;
  cy: number;
  r: number;
  points: { x: number; y: number; label: string }[];
}

/** Geometry for the small candidate-circle inset (flip y for screen coords). */
export function circleInset(
  circle: Circle,
  highlights: { value: Complex; label: string }[],
  size = 120,
): InsetGeometry {
  const [cx0, cy0] = circle.center;
  const extent = Math.max(circle.radius * 1.4, 1e-9);
  const sx: LinearScale = { domain: [cx0 - extent, cx0 + extent], range: [0, size] };
  const sy: LinearScale = { domain: [cy0 - extent, cy0 + extent], range: [size, 0] };
  return {
    viewBox: `0 0 ${size} ${size}`,
    cx: scale(sx, cx0),
    cy: scale(sy, cy0),
    r: (circle.radius / (2 * extent)) * size,
    points: highlights.map((h) => ({
      x: scale(sx, h.value[0]),
      y: scale(sy, h.value[1]),
      label: h.label,
    })),
  };
}

export interface SeriesSpec {
  anglesDeg: number[];
  levelsDb: number[];
  cssClass: string;
  label: string;
}

/** Render the whole pattern chart as an SVG markup string. */
export function patternSvg(
  series: SeriesSpec[],
  markers: { thetaDeg: number; rhoDb: number }[],
  layout: ChartLayout = DEFAULT_LAYOUT,
): string {
  const sx = angleScale(layout);
  const sy = levelScale(layout);
  const parts: string[] = [];
  parts.push(
    `<svg class="pattern-chart" viewBox="0 0 ${layout.width} ${layout.height}" ` +
      `width="${layout.width}" height="${layout.height}" role="img">`,
  );
  // grid + axis labels
  for (let angle = layout.angleRange[0]; angle <= layout.angleRange[1]; angle += 30) {
    const x = scale(sx, angle);
    parts.push(`<line class="grid" x1="${x}" y1="${sy.range[1]}" x2="${x}" y2="${sy.range[0]}"/>`);
    parts.push(
      `<text class="tick" x="${x}" y="${layout.height - 12}" text-anchor="middle">${angle}°</text>`,
    );
  }
  for (let level = layout.levelRange[0]; level <= layout.levelRange[1]; level += 20) {
    const y = scale(sy, level);
    parts.push(`<line class="grid" x1="${sx.range[0]}" y1="${y}" x2="${sx.range[1]}" y2="${y}"/>`);
    parts.push(
      `<text class="tick" x="${sx.range[0] - 6}" y="${y + 4}" text-anchor="end">${level}</text>`,
    );
  }
  for (const s of series) {
    parts.push(
      `<polyline class="series ${s.cssClass}" fill="none" data-label="${s.label}" ` +
        `points="${seriesPoints(s.anglesDeg, s.levelsDb, layout)}"/>`,
    );
  }
  for (const m of markerPoints(markers, layout)) {
    parts.push(
      `<g class="marker" data-theta="${m.thetaDeg}" data-level="${m.levelDb}">` +
        `<circle cx="${m.x.toFixed(2)}" cy="${m.y.toFixed(2)}" r="4"/>` +
        `<text x="${(m.x + 7).toFixed(2)}" y="${(m.y - 7).toFixed(2)}">${m.label}</text></g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}
