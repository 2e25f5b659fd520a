/** Typed API client.
 *
 * The client never computes analytics: every number shown in a view comes
 * from one response here, and each payload carries its `source` path so
 * views can stamp a provenance badge in dev mode.  Requests on the same
 * channel cancel their predecessor, so rapid parameter dragging (EPS
 * sliders, k steppers) never applies stale results.
 */

import type {
  ApiErrorPayload,
  AttributeSetResponse,
  ClusterRequest,
  ClusterResult,
  CoexistenceTable,
  DatasetSummary,
  EmbeddingQuery,
  EmbeddingResponse,
  GalleryResponse,
  Group,
  ImageDetail,
  ImageIndex,
  LayoutName,
  MatrixResponse,
  MeasureName,
  MetricsTable,
  SpaceName,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;
  readonly detail: unknown;

  constructor(status: number, payload: ApiErrorPayload) {
    super(payload.message);
    this.status = status;
    this.code = payload.code;
    this.detail = payload.detail;
  }
}

export interface Sourced<T> {
  data: T;
  /** Request path that produced this payload (provenance). */
  source: string;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

interface RequestOptions {
  channel?: string;
  body?: unknown;
  method?: "GET" | "POST" | "DELETE";
}

const EMBEDDING_POLL_MS = 300;

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;
  private readonly channels = new Map<string, AbortController>();

  constructor(baseUrl = "", fetchFn: FetchLike = (...args) => fetch(...args)) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(path: string, options: RequestOptions = {}): Promise<Sourced<T>> {
    const init: RequestInit = { method: options.method ?? "GET" };
    if (options.channel) {
      this.channels.get(options.channel)?.abort();
      const controller = new AbortController();
      this.channels.set(options.channel, controller);
      init.signal = controller.signal;
    }
    if (options.body !== undefined) {
      init.body = JSON.stringify(options.body);
      init.headers = { "content-type": "application/json" };
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    const text = await response.text();
    const payload = text ? JSON.parse(text) : null;
    if (!response.ok) {
      throw new ApiError(response.status, payload as ApiErrorPayload);
    }
    return { data: payload as T, source: path };
  }

  dataset(): Promise<Sourced<DatasetSummary>> {
    return this.request("/api/dataset");
  }

  loadDataset(manifest: string): Promise<Sourced<DatasetSummary>> {
    return this.request("/api/dataset/load", { method: "POST", body: { manifest } });
  }

  images(): Promise<Sourced<ImageIndex>> {
    return this.request("/api/images");
  }

  imageDetail(id: string): Promise<Sourced<ImageDetail>> {
    return this.request(`/api/images/${encodeURIComponent(id)}/detail`);
  }

  thumbnailUrl(id: string): string {
    return `${this.baseUrl}/api/images/${encodeURIComponent(id)}/thumbnail`;
  }

  /** Request an embedding, polling through 202 until the server has it. */
  async embedding(query: EmbeddingQuery): Promise<Sourced<EmbeddingResponse>> {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(query)) {
      if (value !== undefined) params.set(key, String(value));
    }
    const path = `/api/embedding?${params.toString()}`;
    for (;;) {
      const response = await this.fetchFn(this.baseUrl + path);
      const payload = (await response.json()) as EmbeddingResponse | ApiErrorPayload;
      if (response.status === 200) {
        return { data: payload as EmbeddingResponse, source: path };
      }
      if (response.status !== 202) {
        throw new ApiError(response.status, payload as ApiErrorPayload);
      }
      await new Promise((resolve) => setTimeout(resolve, EMBEDDING_POLL_MS));
    }
  }

  createGroupFromIds(name: string, imageIds: string[], color?: string): Promise<Sourced<Group>> {
    return this.request("/api/groups", {
      method: "POST",
      body: { name, color, image_ids: imageIds },
    });
  }

  createGroupFromPolygon(
    name: string,
    embedding: EmbeddingQuery,
    polygon: [number, number][],
    color?: string,
  ): Promise<Sourced<Group>> {
    return this.request("/api/groups", {
      method: "POST",
      body: { name, color, embedding, polygon },
    });
  }

  groups(): Promise<Sourced<{ groups: Group[] }>> {
    return this.request("/api/groups");
  }

  deleteGroup(id: string): Promise<Sourced<{ deleted: string }>> {
    return this.request(`/api/groups/${encodeURIComponent(id)}`, { method: "DELETE" });
  }

  groupMetrics(id: string): Promise<Sourced<MetricsTable>> {
    return this.request(`/api/groups/${encodeURIComponent(id)}/metrics`);
  }

  cluster(groupId: string, body: ClusterRequest): Promise<Sourced<ClusterResult>> {
    return this.request(`/api/groups/${encodeURIComponent(groupId)}/cluster`, {
      method: "POST",
      body,
      channel: `cluster:${groupId}`,
    });
  }

  gallery(groupId: string, space: SpaceName): Promise<Sourced<GalleryResponse>> {
    return this.request(`/api/groups/${encodeURIComponent(groupId)}/gallery?space=${space}`);
  }

  matrix(measure: MeasureName, layout: LayoutName, group?: string): Promise<Sourced<MatrixResponse>> {
    const params = new URLSearchParams({ measure, layout });
    if (group) params.set("group", group);
    return this.request(`/api/coexistence/matrix?${params.toString()}`);
  }

  coexistenceTable(
    k: number,
    rankBy: "number" | "corNum",
    limit?: number,
  ): Promise<Sourced<CoexistenceTable>> {
    const params = new URLSearchParams({ k: String(k), rankBy });
    if (limit !== undefined) params.set("limit", String(limit));
    return this.request(`/api/coexistence/table?${params.toString()}`);
  }

  attributeSet(attrs: number[]): Promise<Sourced<AttributeSetResponse>> {
    return this.request(`/api/attribute-set?attrs=${attrs.join(",")}`);
  }
}
