/** Co-existence table and attribute-set views.
 *
 * The table lists every occurring k-attribute combination with its image
 * count (Number) and all-correct prediction count (CorNum); sorting is
 * server-authoritative (clicking a header re-requests with that rank).
 * Clicking a row creates a group of the combination's universe images.
 *
 * The attribute-set view lists the correctness patterns of the images
 * carrying every selected attribute, all-wrong pattern first; clicking a
 * pattern row selects exactly that pattern's images as a group.
 */

import { ApiClient } from "./api.js";
import type { AttributeSetResponse } from "./types.js";

export type CreateGroup = (name: string, imageIds: string[]) => void;

export class CoexistenceTableView {
  private k = 3;
  private rankBy: "number" | "corNum" = "number";
  private limit = 30;

  constructor(
    private readonly container: HTMLElement,
    private readonly api: ApiClient,
    private readonly onCreateGroup: CreateGroup,
  ) {
    container.classList.add("coexistence-table");
  }

  async load(k = this.k, rankBy = this.rankBy, limit = this.limit): Promise<void> {
    this.k = k;
    this.rankBy = rankBy;
    this.limit = limit;
    const response = await this.api.coexistenceTable(k, rankBy, limit);
    this.container.innerHTML = "";
    const table = document.createElement("table");
    table.dataset.provenance = response.source;

    const header = document.createElement("tr");
    const combos = document.createElement("th");
    combos.textContent = `${k} attributes`;
    header.appendChild(combos);
    for (const key of ["number", "corNum"] as const) {
      const th = document.createElement("th");
      th.textContent = key === "number" ? "Number" : "CorNum";
      th.className = "sortable" + (this.rankBy === key ? " sorted" : "");
      th.addEventListener("click", () => void this.load(this.k, key, this.limit));
      header.appendChild(th);
    }
    table.appendChild(header);

    for (const row of response.data.rows) {
      const tr = document.createElement("tr");
      tr.className = "coexistence-row";
      tr.dataset.combination = row.combination.join(",");
      const names = document.createElement("td");
      names.textContent = row.names.join(" + ");
      const number = document.createElement("td");
      number.textContent = String(row.number);
      const corNum = document.createElement("td");
      corNum.textContent = String(row.corNum);
      tr.append(names, number, corNum);
      tr.addEventListener("click", () => void this.selectUniverse(row.combination, row.names));
      table.appendChild(tr);
    }
    this.container.appendChild(table);
  }

  private async selectUniverse(combination: number[], names: string[]): Promise<void> {
    const response = await this.api.attributeSet(combination);
    this.onCreateGroup(names.join("+"), response.data.universe_ids);
  }
}

export class AttributeSetView {
  constructor(
    private readonly container: HTMLElement,
    private readonly api: ApiClient,
    private readonly onCreateGroup: CreateGroup,
  ) {
    container.classList.add("attribute-set");
  }

  clear(): void {
    this.container.innerHTML = "";
  }

  async load(attributes: number[]): Promise<AttributeSetResponse | null> {
    if (!attributes.length) {
      this.clear();
      return null;
    }
    const response = await this.api.attributeSet(attributes);
    this.container.innerHTML = "";
    const list = document.createElement("div");
    list.dataset.provenance = response.source;

    const caption = document.createElement("div");
    caption.className = "attribute-set-caption";
    caption.textContent = `${response.data.names.join(" + ")} — ${response.data.universe} images`;
    list.appendChild(caption);

    for (const pattern of response.data.patterns) {
      const row = document.createElement("div");
      row.className = "pattern-row";
      row.dataset.correct = pattern.correct.map((c) => (c ? "1" : "0")).join("");
      const dots = document.createElement("span");
      dots.className = "pattern-dots";
      for (const correct of pattern.correct) {
        const dot = document.createElement("span");
        dot.className = correct ? "dot correct" : "dot wrong";
        dots.appendChild(dot);
      }
      const count = document.createElement("span");
      count.className = "pattern-count";
      count.textContent = String(pattern.count);
      row.append(dots, count);
      row.addEventListener("click", () =>
        this.onCreateGroup(
          `${response.data.names.join("+")}:${row.dataset.correct}`,
          pattern.image_ids,
        ),
      );
      list.appendChild(row);
    }
    this.container.appendChild(list);
    return response.data;
  }
}
