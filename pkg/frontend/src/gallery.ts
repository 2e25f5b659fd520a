/** Thumbnail gallery of a group, bucketed by attribute count. */

import { ApiClient } from "./api.js";
import type { SpaceName } from "./types.js";

export class GalleryView {
  onImageClick?: (id: string) => void;

  constructor(
    private readonly container: HTMLElement,
    private readonly api: ApiClient,
  ) {
    container.classList.add("gallery");
  }

  async load(groupId: string, space: SpaceName): Promise<void> {
    const response = await this.api.gallery(groupId, space);
    this.container.innerHTML = "";
    this.container.dataset.provenance = response.source;
    for (const bucket of response.data.buckets) {
      const section = document.createElement("section");
      section.className = "gallery-bucket";
      section.dataset.attributeCount = String(bucket.attribute_count);
      const heading = document.createElement("h4");
      heading.textContent = `${bucket.attribute_count} attribute${bucket.attribute_count === 1 ? "" : "s"}`;
      section.appendChild(heading);
      const strip = document.createElement("div");
      strip.className = "gallery-strip";
      for (const id of bucket.image_ids) {
        const img = document.createElement("img");
        img.src = this.api.thumbnailUrl(id);
        img.alt = id;
        img.title = id;
        img.className = "thumb";
        img.addEventListener("error", () => {
          const placeholder = document.createElement("span");
          placeholder.className = "thumb placeholder";
          placeholder.textContent = id;
          img.replaceWith(placeholder);
        });
        img.addEventListener("click", () => this.onImageClick?.(id));
        strip.appendChild(img);
      }
      section.appendChild(strip);
      this.container.appendChild(section);
    }
  }
}
