/** Group drill-down panel with metrics / clusters / gallery tabs.
 *
 * A panel accepts a group by drag-and-drop (or programmatically) and a
 * data-space selector.  The clusters tab runs K-Means or DBSCAN on the
 * server with live-tunable parameters; both validation scores update as
 * parameters change (undefined renders as a dash, never zero), and each
 * member renders as an attribute flower.
 */

import { ApiClient } from "./api.js";
import { flowerSvg } from "./flower.js";
import { GalleryView } from "./gallery.js";
import { PcpView } from "./pcp.js";
import { ViewState } from "./state.js";
import type { ClusterRequest, EmbeddingQuery, ImageDetail, SpaceName } from "./types.js";

type Tab = "metrics" | "clusters" | "gallery";

export interface GroupPanelOptions {
  attributeColors: (attribute: number) => string;
  embeddingFor: (space: SpaceName) => EmbeddingQuery;
  detailOf: (id: string) => Promise<ImageDetail>;
}

const SCORE_DASH = "–";

function formatScore(value: number | null): string {
  return value === null ? SCORE_DASH : value.toFixed(3);
}

export class GroupPanel {
  private groupId: string | null = null;
  private tab: Tab = "metrics";
  private space: SpaceName = "PRD";
  private method: "kmeans" | "dbscan" = "kmeans";
  private k = 2;
  private eps = 1.0;
  private minPts = 3;

  private readonly tabsBar: HTMLElement;
  private readonly controls: HTMLElement;
  private readonly body: HTMLElement;
  private readonly pcp: PcpView;
  private readonly galleryContainer: HTMLElement;
  private readonly gallery: GalleryView;
  private readonly clustersContainer: HTMLElement;

  constructor(
    private readonly container: HTMLElement,
    private readonly api: ApiClient,
    private readonly state: ViewState,
    private readonly options: GroupPanelOptions,
  ) {
    container.classList.add("group-panel");
    container.addEventListener("dragover", (event) => event.preventDefault());
    container.addEventListener("drop", (event) => {
      event.preventDefault();
      const id = (event as DragEvent).dataTransfer?.getData("text/plain");
      if (id) void this.setGroup(id);
    });

    this.tabsBar = document.createElement("div");
    this.tabsBar.className = "panel-tabs";
    for (const tab of ["metrics", "clusters", "gallery"] as const) {
      const button = document.createElement("button");
      button.textContent = tab;
      button.dataset.tab = tab;
      button.addEventListener("click", () => void this.setTab(tab));
      this.tabsBar.appendChild(button);
    }
    container.appendChild(this.tabsBar);

    this.controls = document.createElement("div");
    this.controls.className = "panel-controls";
    container.appendChild(this.controls);
    this.buildControls();

    this.body = document.createElement("div");
    this.body.className = "panel-body";
    container.appendChild(this.body);

    const pcpContainer = document.createElement("div");
    this.pcp = new PcpView(pcpContainer);
    this.galleryContainer = document.createElement("div");
    this.gallery = new GalleryView(this.galleryContainer, api);
    this.clustersContainer = document.createElement("div");
    this.clustersContainer.className = "clusters";
    this.body.appendChild(pcpContainer);
    this.body.appendChild(this.clustersContainer);
    this.body.appendChild(this.galleryContainer);
  }

  get currentGroup(): string | null {
    return this.groupId;
  }

  private buildControls(): void {
    const spaceSelect = document.createElement("select");
    spaceSelect.className = "space-select";
    for (const space of ["ACT", "FEA", "PRD"] as const) {
      const option = document.createElement("option");
      option.value = space;
      option.textContent = space;
      if (space === this.space) option.selected = true;
      spaceSelect.appendChild(option);
    }
    spaceSelect.addEventListener("change", () => {
      this.space = spaceSelect.value as SpaceName;
      void this.refresh();
    });

    const methodSelect = document.createElement("select");
    methodSelect.className = "method-select";
    for (const method of ["kmeans", "dbscan"] as const) {
      const option = document.createElement("option");
      option.value = method;
      option.textContent = method === "kmeans" ? "K-Means" : "DBSCAN";
      methodSelect.appendChild(option);
    }
    methodSelect.addEventListener("change", () => {
      this.method = methodSelect.value as "kmeans" | "dbscan";
      void this.refresh();
    });

    const kInput = document.createElement("input");
    kInput.type = "number";
    kInput.min = "1";
    kInput.value = String(this.k);
    kInput.className = "k-input";
    kInput.title = "number of clusters";
    kInput.addEventListener("change", () => {
      this.k = Number(kInput.value);
      void this.refresh();
    });

    const epsInput = document.createElement("input");
    epsInput.type = "number";
    epsInput.step = "0.1";
    epsInput.value = String(this.eps);
    epsInput.className = "eps-input";
    epsInput.title = "EPS";
    epsInput.addEventListener("change", () => {
      this.eps = Number(epsInput.value);
      void this.refresh();
    });

    const minPtsInput = document.createElement("input");
    minPtsInput.type = "number";
    minPtsInput.min = "1";
    minPtsInput.value = String(this.minPts);
    minPtsInput.className = "minpts-input";
    minPtsInput.title = "MinPts";
    minPtsInput.addEventListener("change", () => {
      this.minPts = Number(minPtsInput.value);
      void this.refresh();
    });

    this.controls.append(spaceSelect, methodSelect, kInput, epsInput, minPtsInput);
  }

  async setGroup(groupId: string): Promise<void> {
    this.groupId = groupId;
    this.container.dataset.group = groupId;
    await this.refresh();
  }

  async setTab(tab: Tab): Promise<void> {
    this.tab = tab;
    for (const button of Array.from(this.tabsBar.querySelectorAll("button"))) {
      button.classList.toggle("active", button.dataset.tab === tab);
    }
    await this.refresh();
  }

  async refresh(): Promise<void> {
    if (!this.groupId) return;
    this.pcp.container.style.display = this.tab === "metrics" ? "" : "none";
    this.clustersContainer.style.display = this.tab === "clusters" ? "" : "none";
    this.galleryContainer.style.display = this.tab === "gallery" ? "" : "none";
    if (this.tab === "metrics") {
      const response = await this.api.groupMetrics(this.groupId);
      this.pcp.setTable(response.data, response.source, this.options.attributeColors);
      this.pcp.onHoverAttribute = (attribute) => {
        if (attribute === null) return;
        // highlight the hovered attribute's images across the scatters
        void this.highlightAttributeMembers(attribute);
      };
    } else if (this.tab === "clusters") {
      await this.runClustering();
    } else {
      await this.gallery.load(this.groupId, this.space === "PRD" ? "PRD" : "ACT");
    }
  }

  private async highlightAttributeMembers(attribute: number): Promise<void> {
    if (!this.groupId) return;
    const group = this.state.groups.find((g) => g.id === this.groupId);
    if (!group) return;
    const members: string[] = [];
    for (const id of group.image_ids) {
      const detail = await this.options.detailOf(id);
      if (detail.act[attribute] === 1) members.push(id);
    }
    this.state.setHighlight(members, "pcp");
  }

  private async runClustering(): Promise<void> {
    if (!this.groupId) return;
    const request: ClusterRequest = {
      method: this.method,
      space: this.space,
      coordinate_source: "embedded-2d",
      embedding: this.options.embeddingFor(this.space),
    };
    if (this.method === "kmeans") {
      request.k = this.k;
      request.seed = 0;
    } else {
      request.eps = this.eps;
      request.min_pts = this.minPts;
    }
    const response = await this.api.cluster(this.groupId, request);
    const result = response.data;

    this.clustersContainer.innerHTML = "";
    this.clustersContainer.dataset.provenance = response.source;

    const scores = document.createElement("div");
    scores.className = "cluster-scores";
    scores.innerHTML =
      `silhouette <b class="silhouette">${formatScore(result.silhouette)}</b> ` +
      `davies-bouldin <b class="davies-bouldin">${formatScore(result.davies_bouldin)}</b>`;
    this.clustersContainer.appendChild(scores);

    const byLabel = new Map<number, string[]>();
    for (const [id, label] of Object.entries(result.labels)) {
      const list = byLabel.get(label) ?? [];
      list.push(id);
      byLabel.set(label, list);
    }
    const labels = Array.from(byLabel.keys()).sort((a, b) => a - b);
    for (const label of labels) {
      const block = document.createElement("div");
      block.className = "cluster-block";
      block.dataset.label = String(label);
      const heading = document.createElement("h4");
      heading.textContent = label === -1 ? "noise" : `cluster ${label}`;
      block.appendChild(heading);
      const strip = document.createElement("div");
      strip.className = "flower-strip";
      for (const id of byLabel.get(label)!) {
        const detail = await this.options.detailOf(id);
        const holder = document.createElement("span");
        holder.className = "flower-holder";
        holder.title = id;
        holder.dataset.image = id;
        holder.innerHTML = flowerSvg({
          states: detail.flower,
          colors: detail.flower.map((_, i) => this.options.attributeColors(i)),
          size: 48,
        });
        holder.addEventListener("pointerenter", () => this.state.setHighlight([id], "cluster"));
        strip.appendChild(holder);
      }
      block.appendChild(strip);
      this.clustersContainer.appendChild(block);
    }
  }
}
