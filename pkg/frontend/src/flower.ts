/** Attribute flower glyph: one petal per attribute, radially arranged.
 *
 * Petal encoding:
 *   TP — solid petal in the attribute color
 *   FN — blank petal (outline only, empty fill)
 *   TN — missing petal (not drawn)
 *   FP — solid petal with a black border
 */

import type { PetalState } from "./types.js";

export interface FlowerSpec {
  states: PetalState[];
  colors: string[];
  size?: number;
}

const DEFAULT_SIZE = 64;

export function petalPath(index: number, total: number, radius: number): string {
  const angle = (2 * Math.PI * index) / total - Math.PI / 2;
  const spread = Math.PI / total;
  const tipX = radius * Math.cos(angle);
  const tipY = radius * Math.sin(angle);
  const leftX = 0.55 * radius * Math.cos(angle - spread);
  const leftY = 0.55 * radius * Math.sin(angle - spread);
  const rightX = 0.55 * radius * Math.cos(angle + spread);
  const rightY = 0.55 * radius * Math.sin(angle + spread);
  const fmt = (v: number) => v.toFixed(2);
  return (
    `M 0 0 Q ${fmt(leftX)} ${fmt(leftY)} ${fmt(tipX)} ${fmt(tipY)} ` +
    `Q ${fmt(rightX)} ${fmt(rightY)} 0 0 Z`
  );
}

export function petalAttributes(state: PetalState, color: string): Record<string, string> | null {
  switch (state) {
    case "TP":
      return { fill: color, stroke: color, "stroke-width": "1" };
    case "FN":
      return { fill: "none", stroke: color, "stroke-width": "1.5" };
    case "FP":
      return { fill: color, stroke: "#000000", "stroke-width": "1.5" };
    case "TN":
      return null; // missing petal
  }
}

export function flowerSvg(spec: FlowerSpec): string {
  const size = spec.size ?? DEFAULT_SIZE;
  const radius = size / 2 - 2;
  const total = spec.states.length;
  const petals: string[] = [];
  spec.states.forEach((state, i) => {
    const attrs = petalAttributes(state, spec.colors[i % spec.colors.length]);
    if (!attrs) return;
    const attrText = Object.entries(attrs)
      .map(([k, v]) => `${k}="${v}"`)
      .join(" ");
    petals.push(`<path d="${petalPath(i, total, radius)}" ${attrText} data-petal="${i}" data-state="${state}"/>`);
  });
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${size}" height="${size}" ` +
    `viewBox="${-size / 2} ${-size / 2} ${size} ${size}" class="flower">` +
    `<circle r="2" fill="#444"/>` +
    petals.join("") +
    `</svg>`
  );
}
