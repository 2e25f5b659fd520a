/** Detail strip: one card per opened image with its flower glyph and the
 * actual vs. predicted values per attribute. */

import { flowerSvg } from "./flower.js";
import { ViewState } from "./state.js";
import type { ImageDetail } from "./types.js";

export class DetailStrip {
  constructor(
    private readonly container: HTMLElement,
    private readonly state: ViewState,
    private readonly attributeNames: string[],
    private readonly attributeColors: (attribute: number) => string,
    private readonly detailOf: (id: string) => Promise<ImageDetail>,
    private readonly thumbnailUrl: (id: string) => string,
  ) {
    container.classList.add("detail-strip");
    state.events.on("details-changed", ({ ids }) => void this.render(ids));
  }

  async render(ids: readonly string[]): Promise<void> {
    this.container.innerHTML = "";
    for (const id of ids) {
      const detail = await this.detailOf(id);
      const card = document.createElement("div");
      card.className = "detail-card";
      card.dataset.image = id;

      const head = document.createElement("div");
      head.className = "detail-head";
      const title = document.createElement("span");
      title.textContent = id;
      const close = document.createElement("button");
      close.textContent = "×";
      close.className = "detail-close";
      close.addEventListener("click", () => this.state.closeDetail(id));
      head.append(title, close);
      card.appendChild(head);

      const img = document.createElement("img");
      img.src = this.thumbnailUrl(id);
      img.alt = id;
      img.className = "detail-thumb";
      img.addEventListener("error", () => img.remove());
      card.appendChild(img);

      const glyph = document.createElement("div");
      glyph.innerHTML = flowerSvg({
        states: detail.flower,
        colors: detail.flower.map((_, i) => this.attributeColors(i)),
        size: 72,
      });
      card.appendChild(glyph);

      const table = document.createElement("table");
      table.className = "detail-values";
      const header = document.createElement("tr");
      header.innerHTML = "<th>attribute</th><th>actual</th><th>predicted</th>";
      table.appendChild(header);
      detail.act.forEach((actual, i) => {
        if (actual === 0 && detail.decisions[i] === 0) return; // true negatives stay compact
        const tr = document.createElement("tr");
        tr.dataset.state = detail.flower[i];
        tr.innerHTML =
          `<td>${this.attributeNames[i]}</td>` +
          `<td>${actual}</td>` +
          `<td>${detail.prd[i].toFixed(3)}</td>`;
        table.appendChild(tr);
      });
      card.appendChild(table);
      this.container.appendChild(card);
    }
  }
}
