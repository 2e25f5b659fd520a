/** Application wiring: three coordinated embedded-space scatters, the
 * attribute panel with its attribute-set view, co-existence matrices and
 * table, two group drill-down panels, and the image detail strip.  All
 * analytics come from the server; this module only routes data between
 * the API client, the shared state bus, and the views. */

import { ApiClient } from "./api.js";
import { AttributePanel } from "./attribute-panel.js";
import { AttributeSetView, CoexistenceTableView } from "./coexistence.js";
import { DetailStrip } from "./detail.js";
import { GroupPanel } from "./group-panel.js";
import { MatrixView } from "./matrix.js";
import { ScatterView } from "./scatter.js";
import { ViewState } from "./state.js";
import type {
  DatasetSummary,
  EmbeddingQuery,
  ImageDetail,
  ImageIndex,
  SpaceName,
} from "./types.js";

/** Fixed categorical palette; one entry per attribute, cycling past 17. */
export const ATTRIBUTE_PALETTE = [
  "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4",
  "#f032e6", "#bfef45", "#fabed4", "#469990", "#dcbeff", "#9a6324",
  "#fffac8", "#800000", "#aaffc3", "#808000", "#ffd8b1",
];

export interface AppOptions {
  baseUrl?: string;
  fetchFn?: typeof fetch;
  scatterSize?: { width: number; height: number };
  embeddingDefaults?: Partial<EmbeddingQuery>;
}

const SPACES: SpaceName[] = ["ACT", "FEA", "PRD"];

export class App {
  readonly api: ApiClient;
  readonly state = new ViewState();
  readonly scatters = new Map<SpaceName, ScatterView>();
  summary: DatasetSummary | null = null;
  imageIndex: ImageIndex | null = null;

  private readonly detailCache = new Map<string, Promise<ImageDetail>>();
  private readonly overrides: Map<number, string> = new Map();
  private groupCounter = 0;
  private panels: GroupPanel[] = [];

  constructor(
    private readonly root: HTMLElement,
    private readonly options: AppOptions = {},
  ) {
    this.api = new ApiClient(options.baseUrl ?? "", options.fetchFn);
  }

  attributeColor = (attribute: number): string =>
    this.overrides.get(attribute) ?? ATTRIBUTE_PALETTE[attribute % ATTRIBUTE_PALETTE.length];

  /** User override for one attribute's color. */
  setAttributeColor(attribute: number, color: string): void {
    this.overrides.set(attribute, color);
  }

  embeddingFor(space: SpaceName): EmbeddingQuery {
    return {
      space,
      method: "tsne",
      seed: 0,
      ...this.options.embeddingDefaults,
    } as EmbeddingQuery;
  }

  detailOf = (id: string): Promise<ImageDetail> => {
    let cached = this.detailCache.get(id);
    if (!cached) {
      cached = this.api.imageDetail(id).then((r) => r.data);
      this.detailCache.set(id, cached);
    }
    return cached;
  };

  async start(): Promise<void> {
    this.summary = (await this.api.dataset()).data;
    this.imageIndex = (await this.api.images()).data;
    this.buildLayout();
    await Promise.all(SPACES.map((space) => this.loadScatter(space)));
    await this.coexistenceTable.load(3, "number", 30);
    await this.correlationMatrix.loadDualTriangle();
    await this.entropyMatrix.loadFullMatrix("ACT");
  }

  attributePanel!: AttributePanel;
  attributeSetView!: AttributeSetView;
  coexistenceTable!: CoexistenceTableView;
  correlationMatrix!: MatrixView;
  entropyMatrix!: MatrixView;
  detailStrip!: DetailStrip;

  private buildLayout(): void {
    const summary = this.summary!;
    this.root.innerHTML = "";
    this.root.classList.add("attrscope-app");

    const left = document.createElement("aside");
    left.className = "panel-left";
    const attributeContainer = document.createElement("div");
    const attributeSetContainer = document.createElement("div");
    left.append(attributeContainer, attributeSetContainer);

    const center = document.createElement("main");
    center.className = "panel-center";
    const scatterRow = document.createElement("div");
    scatterRow.className = "scatter-row";
    center.appendChild(scatterRow);
    const lassoToggle = document.createElement("button");
    lassoToggle.className = "lasso-toggle";
    lassoToggle.textContent = "lasso";
    center.appendChild(lassoToggle);
    const matrices = document.createElement("div");
    matrices.className = "matrices";
    const correlationContainer = document.createElement("div");
    const entropyContainer = document.createElement("div");
    const tableContainer = document.createElement("div");
    matrices.append(correlationContainer, entropyContainer, tableContainer);
    center.appendChild(matrices);

    const right = document.createElement("aside");
    right.className = "panel-right";
    const groupList = document.createElement("div");
    groupList.className = "group-list";
    const panelA = document.createElement("div");
    const panelB = document.createElement("div");
    right.append(groupList, panelA, panelB);

    const bottom = document.createElement("footer");
    bottom.className = "panel-bottom";
    const detailContainer = document.createElement("div");
    bottom.appendChild(detailContainer);

    this.root.append(left, center, right, bottom);

    this.attributePanel = new AttributePanel(
      attributeContainer,
      this.state,
      summary.attributes,
      this.attributeColor,
    );
    this.attributeSetView = new AttributeSetView(attributeSetContainer, this.api, (name, ids) =>
      void this.createGroupFromIds(name, ids),
    );
    this.state.events.on("filter-changed", ({ attributes }) => {
      void this.attributeSetView.load([...attributes]);
      this.applyAttributeFilter([...attributes]);
    });

    for (const space of SPACES) {
      const holder = document.createElement("div");
      scatterRow.appendChild(holder);
      const scatter = new ScatterView(holder, space, this.state, this.options.scatterSize);
      scatter.onLasso = (polygon) => void this.createGroupFromLasso(space, polygon);
      scatter.onPointClick = (id) => this.state.openDetail(id);
      this.scatters.set(space, scatter);
    }
    lassoToggle.addEventListener("click", () => {
      const anyEnabled = Array.from(this.scatters.values()).some((s) => s.lasso.isEnabled);
      for (const scatter of this.scatters.values()) {
        if (anyEnabled) scatter.lasso.disable();
        else scatter.lasso.enable();
      }
      lassoToggle.classList.toggle("active", !anyEnabled);
    });

    this.coexistenceTable = new CoexistenceTableView(tableContainer, this.api, (name, ids) =>
      void this.createGroupFromIds(name, ids),
    );
    this.correlationMatrix = new MatrixView(correlationContainer, this.api, "correlation");
    this.entropyMatrix = new MatrixView(entropyContainer, this.api, "conditional_entropy");

    const panelOptions = {
      attributeColors: this.attributeColor,
      embeddingFor: (space: SpaceName) => this.embeddingFor(space),
      detailOf: this.detailOf,
    };
    this.panels = [
      new GroupPanel(panelA, this.api, this.state, panelOptions),
      new GroupPanel(panelB, this.api, this.state, panelOptions),
    ];

    this.detailStrip = new DetailStrip(
      detailContainer,
      this.state,
      summary.attributes,
      this.attributeColor,
      this.detailOf,
      (id) => this.api.thumbnailUrl(id),
    );

    this.state.events.on("groups-changed", ({ groups }) => {
      groupList.innerHTML = "";
      for (const group of groups) {
        const chip = document.createElement("span");
        chip.className = "group-chip";
        chip.dataset.group = group.id;
        chip.draggable = true;
        chip.style.borderColor = group.color;
        chip.textContent = `${group.name} (${group.image_ids.length})`;
        chip.addEventListener("dragstart", (event) => {
          (event as DragEvent).dataTransfer?.setData("text/plain", group.id);
        });
        chip.addEventListener("click", () => void this.panels[0].setGroup(group.id));
        const remove = document.createElement("button");
        remove.textContent = "×";
        remove.addEventListener("click", (event) => {
          event.stopPropagation();
          void this.api.deleteGroup(group.id).then(() => this.state.removeGroup(group.id));
        });
        chip.appendChild(remove);
        groupList.appendChild(chip);
      }
    });
  }

  private async loadScatter(space: SpaceName): Promise<void> {
    const embedding = await this.api.embedding(this.embeddingFor(space));
    const index = this.imageIndex!;
    const rateOf = new Map(index.ids.map((id, i) => [id, index.error_rates[i]]));
    const points = Object.entries(embedding.data.points).map(([id, [x, y]]) => ({
      id,
      x,
      y,
      errorRate: rateOf.get(id) ?? 0,
    }));
    this.scatters.get(space)!.setPoints(points);
  }

  private applyAttributeFilter(attributes: number[]): void {
    if (!attributes.length || !this.imageIndex) {
      this.state.clearHighlight("filter");
      return;
    }
    const index = this.imageIndex;
    const matching = index.ids.filter((_, i) =>
      attributes.every((a) => index.act_sets[i].includes(a)),
    );
    this.state.setHighlight(matching, "filter");
  }

  async createGroupFromLasso(space: SpaceName, polygon: [number, number][]): Promise<void> {
    this.groupCounter += 1;
    const response = await this.api.createGroupFromPolygon(
      `lasso ${this.groupCounter} (${space})`,
      this.embeddingFor(space),
      polygon,
    );
    if (!response.data.image_ids.length) {
      // empty selection: drop the group again, leave a toast
      await this.api.deleteGroup(response.data.id);
      this.toast("empty selection");
      return;
    }
    this.state.addGroup(response.data);
    this.state.setHighlight(response.data.image_ids, "lasso");
  }

  async createGroupFromIds(name: string, ids: string[]): Promise<void> {
    if (!ids.length) {
      this.toast("empty selection");
      return;
    }
    const response = await this.api.createGroupFromIds(name, ids);
    this.state.addGroup(response.data);
    this.state.setHighlight(response.data.image_ids, "selection");
  }

  toast(message: string): void {
    const node = document.createElement("div");
    node.className = "toast";
    node.textContent = message;
    this.root.appendChild(node);
    setTimeout(() => node.remove(), 2500);
  }
}

export function mount(root: HTMLElement, options?: AppOptions): App {
  const app = new App(root, options);
  void app.start();
  return app;
}
