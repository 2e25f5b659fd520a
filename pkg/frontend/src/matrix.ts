/** Pairwise co-existence matrices.
 *
 * Correlation and mutual information render as dual triangles in one
 * grid: the upper triangle holds the actual-label space, the lower the
 * prediction space, and the diagonal the cross-space value.  Clicking a
 * cell outlines the mirrored pair in the other triangle.  Conditional
 * entropy is a full (asymmetric) matrix with a space drop-down; rows are
 * the uncertain attribute, columns the conditioning one.  Undefined cells
 * render hatched with a tooltip.
 */

import { ApiClient } from "./api.js";
import type { LayoutName, MatrixResponse, MeasureName } from "./types.js";

function cellColor(measure: MeasureName, value: number): string {
  if (measure === "correlation") {
    // diverging: blue (-1) .. white (0) .. red (+1)
    const t = Math.max(-1, Math.min(1, value));
    const channel = Math.round(255 * (1 - Math.abs(t)));
    return t >= 0 ? `rgb(255,${channel},${channel})` : `rgb(${channel},${channel},255)`;
  }
  const t = Math.max(0, Math.min(1, value));
  const channel = Math.round(255 * (1 - t));
  return `rgb(${channel},255,${channel})`;
}

export class MatrixView {
  onSelectPair?: (row: number, column: number) => void;
  private table: HTMLTableElement | null = null;

  constructor(
    private readonly container: HTMLElement,
    private readonly api: ApiClient,
    private readonly measure: MeasureName,
  ) {
    container.classList.add("matrix-view");
  }

  /** Dual-triangle layout for the symmetric measures. */
  async loadDualTriangle(group?: string): Promise<void> {
    const [act, prd, cross] = await Promise.all([
      this.api.matrix(this.measure, "ACT", group),
      this.api.matrix(this.measure, "PRD", group),
      this.api.matrix(this.measure, "cross", group),
    ]);
    const names = act.data.attributes;
    const value = (i: number, j: number): number | null => {
      if (i === j) return cross.data.values[i][j];
      return i < j ? act.data.values[i][j] : prd.data.values[i][j];
    };
    const layoutOf = (i: number, j: number): LayoutName =>
      i === j ? "cross" : i < j ? "ACT" : "PRD";
    this.renderGrid(names, value, layoutOf, `${act.source} + ${prd.source} + ${cross.source}`);
  }

  /** Full matrix for conditional entropy in one space. */
  async loadFullMatrix(layout: "ACT" | "PRD", group?: string): Promise<void> {
    const response = await this.api.matrix(this.measure, layout, group);
    this.renderGrid(
      response.data.attributes,
      (i, j) => response.data.values[i][j],
      () => layout,
      response.source,
    );
  }

  private renderGrid(
    names: string[],
    value: (i: number, j: number) => number | null,
    layoutOf: (i: number, j: number) => LayoutName,
    source: string,
  ): void {
    this.container.innerHTML = "";
    const table = document.createElement("table");
    table.className = "matrix";
    table.dataset.provenance = source;
    this.table = table;

    const header = document.createElement("tr");
    header.appendChild(document.createElement("th"));
    for (const name of names) {
      const th = document.createElement("th");
      th.textContent = name;
      th.className = "matrix-col-label";
      header.appendChild(th);
    }
    table.appendChild(header);

    for (let i = 0; i < names.length; i++) {
      const tr = document.createElement("tr");
      const rowLabel = document.createElement("th");
      rowLabel.textContent = names[i];
      rowLabel.className = "matrix-row-label";
      tr.appendChild(rowLabel);
      for (let j = 0; j < names.length; j++) {
        const td = document.createElement("td");
        td.dataset.row = String(i);
        td.dataset.col = String(j);
        td.dataset.layout = layoutOf(i, j);
        const v = value(i, j);
        if (v === null) {
          td.className = "matrix-cell hatched";
          td.title = "undefined (degenerate indicator)";
        } else {
          td.className = "matrix-cell";
          td.style.backgroundColor = cellColor(this.measure, v);
          td.title = `${names[i]} / ${names[j]}: ${v.toFixed(4)}`;
          td.dataset.value = String(v);
        }
        td.addEventListener("click", () => this.handleCellClick(i, j));
        tr.appendChild(td);
      }
      table.appendChild(tr);
    }
    this.container.appendChild(table);
  }

  private handleCellClick(i: number, j: number): void {
    if (!this.table) return;
    for (const cell of Array.from(this.table.querySelectorAll(".mirrored"))) {
      cell.classList.remove("mirrored");
    }
    // outline the clicked cell and its mirror in the other triangle
    for (const [r, c] of [
      [i, j],
      [j, i],
    ]) {
      const cell = this.table.querySelector(`td[data-row="${r}"][data-col="${c}"]`);
      cell?.classList.add("mirrored");
    }
    this.onSelectPair?.(i, j);
  }
}
