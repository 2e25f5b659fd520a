/** Payload types mirroring the server's JSON responses. */

export type SpaceName = "ACT" | "FEA" | "PRD";
export type MethodName = "tsne" | "pca";
export type MeasureName = "correlation" | "mutual_information" | "conditional_entropy";
export type LayoutName = "ACT" | "PRD" | "cross";
export type PetalState = "TP" | "TN" | "FP" | "FN";

export interface DatasetSummary {
  name: string;
  A: number;
  F: number;
  record_count: number;
  attributes: string[];
}

export interface ImageIndex {
  ids: string[];
  error_rates: number[];
  act_counts: number[];
  act_sets: number[][];
}

export interface EmbeddingQuery {
  space: SpaceName;
  method: MethodName;
  seed?: number;
  perplexity?: number;
  iterations?: number;
  learning_rate?: number;
  exaggeration?: number;
}

export interface EmbeddingResponse {
  status: "ready";
  params: Record<string, unknown>;
  points: Record<string, [number, number]>;
  objective_trace: number[][];
}

export interface Group {
  id: string;
  name: string;
  color: string;
  image_ids: string[];
}

export interface MetricsRow {
  attribute: number;
  name: string;
  tp: number;
  tn: number;
  fp: number;
  fn: number;
  positives: number;
  accuracy: number | null;
  precision: number | null;
  recall: number | null;
  f1: number | null;
}

export interface MetricsTable {
  group_id: string | null;
  rows: MetricsRow[];
}

export interface MatrixResponse {
  measure: MeasureName;
  layout: LayoutName;
  attributes: string[];
  values: (number | null)[][];
}

export interface CoexistenceRow {
  combination: number[];
  names: string[];
  number: number;
  corNum: number;
}

export interface CoexistenceTable {
  k: number;
  rank_by: string;
  rows: CoexistenceRow[];
}

export interface CorrectnessPattern {
  correct: boolean[];
  count: number;
  image_ids: string[];
}

export interface AttributeSetResponse {
  attributes: number[];
  names: string[];
  universe: number;
  universe_ids: string[];
  patterns: CorrectnessPattern[];
}

export interface ClusterRequest {
  method: "kmeans" | "dbscan";
  space: SpaceName;
  k?: number;
  eps?: number;
  min_pts?: number;
  seed?: number;
  coordinate_source?: "embedded-2d" | "original";
  embedding?: EmbeddingQuery;
}

export interface ClusterResult {
  labels: Record<string, number>;
  k_found: number;
  inertia: number | null;
  silhouette: number | null;
  davies_bouldin: number | null;
  degenerate_centroids: boolean;
}

export interface GalleryBucket {
  attribute_count: number;
  image_ids: string[];
}

export interface GalleryResponse {
  space: SpaceName;
  buckets: GalleryBucket[];
}

export interface ImageDetail {
  id: string;
  act: number[];
  prd: number[];
  decisions: number[];
  flower: PetalState[];
  error_rate: number;
}

export interface ApiErrorPayload {
  code: string;
  message: string;
  detail: unknown;
}
