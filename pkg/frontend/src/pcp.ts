/** Parallel coordinates plot of a group's per-attribute metrics.
 *
 * One polyline per attribute over the axes TP, TN, FP, FN, accuracy,
 * precision, recall, F1.  Undefined scores break the polyline into
 * segments (an axis gap, never a zero).  Rows render in server order:
 * the attribute present in the most images sits on top of the legend.
 */

import type { MetricsRow, MetricsTable } from "./types.js";

export const PCP_AXES = ["TP", "TN", "FP", "FN", "accuracy", "precision", "recall", "F1"] as const;

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 640;
const HEIGHT = 260;
const MARGIN = { top: 24, right: 16, bottom: 8, left: 16 };

function rowValues(row: MetricsRow): (number | null)[] {
  return [row.tp, row.tn, row.fp, row.fn, row.accuracy, row.precision, row.recall, row.f1];
}

export class PcpView {
  onHoverAttribute?: (attribute: number | null) => void;
  private svg: SVGSVGElement;

  constructor(readonly container: HTMLElement) {
    container.classList.add("pcp");
    this.svg = document.createElementNS(SVG_NS, "svg") as SVGSVGElement;
    this.svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
    this.svg.setAttribute("width", String(WIDTH));
    this.svg.setAttribute("height", String(HEIGHT));
    container.appendChild(this.svg);
  }

  setTable(table: MetricsTable, source: string, colors: (attribute: number) => string): void {
    this.svg.innerHTML = "";
    this.svg.setAttribute("data-provenance", source);
    const innerWidth = WIDTH - MARGIN.left - MARGIN.right;
    const innerHeight = HEIGHT - MARGIN.top - MARGIN.bottom;
    const axisX = (axis: number) => MARGIN.left + (axis * innerWidth) / (PCP_AXES.length - 1);

    const groupSize = table.rows.length
      ? table.rows[0].tp + table.rows[0].tn + table.rows[0].fp + table.rows[0].fn
      : 1;
    const domainMax = (axis: number) => (axis < 4 ? Math.max(groupSize, 1) : 1);
    const axisY = (axis: number, value: number) =>
      MARGIN.top + innerHeight * (1 - value / domainMax(axis));

    for (let a = 0; a < PCP_AXES.length; a++) {
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(axisX(a)));
      line.setAttribute("x2", String(axisX(a)));
      line.setAttribute("y1", String(MARGIN.top));
      line.setAttribute("y2", String(MARGIN.top + innerHeight));
      line.setAttribute("class", "pcp-axis");
      line.setAttribute("stroke", "#bbb");
      this.svg.appendChild(line);

      const text = document.createElementNS(SVG_NS, "text");
      text.setAttribute("x", String(axisX(a)));
      text.setAttribute("y", String(MARGIN.top - 8));
      text.setAttribute("text-anchor", "middle");
      text.setAttribute("class", "pcp-axis-label");
      text.textContent = PCP_AXES[a];
      this.svg.appendChild(text);
    }

    for (const row of table.rows) {
      const values = rowValues(row);
      // split into contiguous defined segments: undefined is a gap
      const segments: [number, number][][] = [];
      let current: [number, number][] = [];
      values.forEach((value, axis) => {
        if (value === null) {
          if (current.length) segments.push(current);
          current = [];
        } else {
          current.push([axisX(axis), axisY(axis, value)]);
        }
      });
      if (current.length) segments.push(current);

      const group = document.createElementNS(SVG_NS, "g");
      group.setAttribute("class", "pcp-row");
      group.setAttribute("data-attribute", String(row.attribute));
      group.setAttribute("data-name", row.name);
      for (const segment of segments) {
        if (segment.length === 1) {
          const dot = document.createElementNS(SVG_NS, "circle");
          dot.setAttribute("cx", String(segment[0][0]));
          dot.setAttribute("cy", String(segment[0][1]));
          dot.setAttribute("r", "2.5");
          dot.setAttribute("fill", colors(row.attribute));
          group.appendChild(dot);
        } else {
          const polyline = document.createElementNS(SVG_NS, "polyline");
          polyline.setAttribute("points", segment.map(([x, y]) => `${x},${y}`).join(" "));
          polyline.setAttribute("fill", "none");
          polyline.setAttribute("stroke", colors(row.attribute));
          polyline.setAttribute("stroke-width", "1.5");
          group.appendChild(polyline);
        }
      }
      group.addEventListener("pointerenter", () => this.onHoverAttribute?.(row.attribute));
      group.addEventListener("pointerleave", () => this.onHoverAttribute?.(null));
      this.svg.appendChild(group);
    }
  }
}
