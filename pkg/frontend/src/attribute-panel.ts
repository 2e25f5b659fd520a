/** Attribute panel: the catalog with per-attribute color chips and
 * checkboxes.  Checking attributes filters the scatters (images whose
 * actual labels contain every checked attribute highlight) and feeds the
 * attribute-set view. */

import { ViewState } from "./state.js";

export class AttributePanel {
  private selected = new Set<number>();

  constructor(
    private readonly container: HTMLElement,
    private readonly state: ViewState,
    private readonly attributeNames: string[],
    private readonly attributeColors: (attribute: number) => string,
  ) {
    container.classList.add("attribute-panel");
    this.render();
  }

  get selectedAttributes(): number[] {
    return Array.from(this.selected).sort((a, b) => a - b);
  }

  private render(): void {
    this.container.innerHTML = "";
    const list = document.createElement("ul");
    this.attributeNames.forEach((name, index) => {
      const item = document.createElement("li");
      const checkbox = document.createElement("input");
      checkbox.type = "checkbox";
      checkbox.id = `attr-${index}`;
      checkbox.addEventListener("change", () => {
        if (checkbox.checked) this.selected.add(index);
        else this.selected.delete(index);
        this.state.setAttributeFilter(this.selectedAttributes);
      });
      const chip = document.createElement("span");
      chip.className = "color-chip";
      chip.style.backgroundColor = this.attributeColors(index);
      const label = document.createElement("label");
      label.htmlFor = checkbox.id;
      label.textContent = name;
      item.append(checkbox, chip, label);
      list.appendChild(item);
    });
    this.container.appendChild(list);
  }
}
