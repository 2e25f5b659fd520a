/** In-memory stand-in for the diagnostics API, used by the jsdom tests.
 *
 * Fixture: 20 images in two well-separated blobs (img000..img009 around
 * the origin, img010..img019 around (10, 10)) over a 4-attribute catalog.
 * Group creation from a polygon replicates the server's documented
 * edge-inclusive even-odd rule so round-trip tests can assert the client
 * renders exactly the server-selected ids.
 */

import type {
  AttributeSetResponse,
  CorrectnessPattern,
  DatasetSummary,
  Group,
  ImageDetail,
  ImageIndex,
  MetricsTable,
  PetalState,
} from "../src/types.js";

export interface MockServer {
  fetchFn: typeof fetch;
  ids: string[];
  blobA: string[];
  blobB: string[];
  points: Record<string, [number, number]>;
  groups: Group[];
  requests: { method: string; path: string; body: unknown }[];
  lastPolygonSelection: string[] | null;
}

const ATTRIBUTES = ["Ring", "Halo", "Linear beamstop", "Strong scattering"];

function pointOnSegment(
  px: number, py: number, x1: number, y1: number, x2: number, y2: number,
): boolean {
  const cross = (x2 - x1) * (py - y1) - (px - x1) * (y2 - y1);
  if (cross !== 0) return false;
  return (
    Math.min(x1, x2) <= px && px <= Math.max(x1, x2) &&
    Math.min(y1, y2) <= py && py <= Math.max(y1, y2)
  );
}

export function evenOddInside(px: number, py: number, polygon: [number, number][]): boolean {
  let inside = false;
  const m = polygon.length;
  for (let i = 0; i < m; i++) {
    const [x1, y1] = polygon[i];
    const [x2, y2] = polygon[(i + 1) % m];
    if (pointOnSegment(px, py, x1, y1, x2, y2)) return true;
    if (y1 > py !== y2 > py) {
      const xCross = x1 + ((py - y1) * (x2 - x1)) / (y2 - y1);
      if (px < xCross) inside = !inside;
    }
  }
  return inside;
}

export function createMockServer(): MockServer {
  const ids = Array.from({ length: 20 }, (_, i) => `img${String(i).padStart(3, "0")}`);
  const blobA = ids.slice(0, 10);
  const blobB = ids.slice(10);

  const points: Record<string, [number, number]> = {};
  ids.forEach((id, i) => {
    const inA = i < 10;
    const angle = (2 * Math.PI * (i % 10)) / 10;
    const cx = inA ? 0 : 10;
    const cy = inA ? 0 : 10;
    points[id] = [cx + Math.cos(angle), cy + Math.sin(angle)];
  });

  // blob A: Ring + Halo; blob B: Linear beamstop; Strong scattering alternates
  const act = ids.map((_, i) => {
    const inA = i < 10;
    return [inA ? 1 : 0, inA ? 1 : 0, inA ? 0 : 1, i % 2];
  });
  // one error per blob: img003 misses Halo, img012 gains Ring
  const decisions = act.map((row) => [...row]);
  decisions[3][1] = 0;
  decisions[12][0] = 1;

  const errorRates = ids.map(
    (_, i) => act[i].filter((v, a) => v !== decisions[i][a]).length / ATTRIBUTES.length,
  );

  const summary: DatasetSummary = {
    name: "mock",
    A: ATTRIBUTES.length,
    F: 8,
    record_count: ids.length,
    attributes: ATTRIBUTES,
  };

  const index: ImageIndex = {
    ids,
    error_rates: errorRates,
    act_counts: act.map((row) => row.reduce((a, b) => a + b, 0)),
    act_sets: act.map((row) => row.flatMap((v, a) => (v === 1 ? [a] : []))),
  };

  const groups: Group[] = [];
  let counter = 0;
  const server: MockServer = {
    fetchFn: undefined as unknown as typeof fetch,
    ids,
    blobA,
    blobB,
    points,
    groups,
    requests: [],
    lastPolygonSelection: null,
  };

  const flowerOf = (i: number): PetalState[] =>
    ATTRIBUTES.map((_, a) => {
      if (act[i][a] === 1) return decisions[i][a] === 1 ? "TP" : "FN";
      return decisions[i][a] === 1 ? "FP" : "TN";
    });

  const detailOf = (i: number): ImageDetail => ({
    id: ids[i],
    act: act[i],
    prd: decisions[i].map((d) => (d === 1 ? 0.9 : 0.1)),
    decisions: decisions[i],
    flower: flowerOf(i),
    error_rate: errorRates[i],
  });

  const metricsOf = (memberIds: string[]): MetricsTable => {
    const rows = ATTRIBUTES.map((name, a) => {
      let tp = 0, tn = 0, fp = 0, fn = 0;
      for (const id of memberIds) {
        const i = ids.indexOf(id);
        if (act[i][a] === 1) {
          if (decisions[i][a] === 1) tp++;
          else fn++;
        } else if (decisions[i][a] === 1) fp++;
        else tn++;
      }
      const total = tp + tn + fp + fn;
      const precision = tp + fp > 0 ? tp / (tp + fp) : null;
      const recall = tp + fn > 0 ? tp / (tp + fn) : null;
      const f1 =
        precision === null || recall === null || precision + recall === 0
          ? null
          : (2 * precision * recall) / (precision + recall);
      return {
        attribute: a,
        name,
        tp, tn, fp, fn,
        positives: tp + fn,
        accuracy: total ? (tp + tn) / total : null,
        precision,
        recall,
        f1,
      };
    });
    rows.sort((x, y) => y.positives - x.positives || x.attribute - y.attribute);
    return { group_id: null, rows };
  };

  const attributeSetOf = (attrs: number[]): AttributeSetResponse => {
    const universeIdx = ids
      .map((_, i) => i)
      .filter((i) => attrs.every((a) => act[i][a] === 1));
    const byPattern = new Map<string, { correct: boolean[]; ids: string[] }>();
    for (const i of universeIdx) {
      const correct = attrs.map((a) => act[i][a] === decisions[i][a]);
      const key = correct.map((c) => (c ? "1" : "0")).join("");
      const entry = byPattern.get(key) ?? { correct, ids: [] };
      entry.ids.push(ids[i]);
      byPattern.set(key, entry);
    }
    const patterns: CorrectnessPattern[] = Array.from(byPattern.values())
      .sort(
        (a, b) =>
          a.correct.filter(Boolean).length - b.correct.filter(Boolean).length,
      )
      .map((p) => ({ correct: p.correct, count: p.ids.length, image_ids: p.ids }));
    return {
      attributes: attrs,
      names: attrs.map((a) => ATTRIBUTES[a]),
      universe: universeIdx.length,
      universe_ids: universeIdx.map((i) => ids[i]),
      patterns,
    };
  };

  const json = (payload: unknown, status = 200) =>
    new Response(JSON.stringify(payload), {
      status,
      headers: { "content-type": "application/json" },
    });

  server.fetchFn = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const url = new URL(String(input), "http://mock");
    const path = url.pathname;
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    server.requests.push({ method, path: path + url.search, body });

    if (path === "/api/dataset") return json(summary);
    if (path === "/api/images") return json(index);
    if (path === "/api/embedding") return json({
      status: "ready",
      params: Object.fromEntries(url.searchParams.entries()),
      points,
      objective_trace: [[50, 1.0]],
    });
    const detailMatch = path.match(/^\/api\/images\/([^/]+)\/detail$/);
    if (detailMatch) {
      const i = ids.indexOf(decodeURIComponent(detailMatch[1]));
      if (i < 0) return json({ code: "unknown_image", message: "unknown", detail: null }, 404);
      return json(detailOf(i));
    }
    if (path === "/api/groups" && method === "POST") {
      let memberIds: string[];
      if (body.image_ids) {
        memberIds = [...new Set(body.image_ids as string[])];
      } else {
        const polygon = body.polygon as [number, number][];
        memberIds = ids.filter((id) => evenOddInside(points[id][0], points[id][1], polygon));
        server.lastPolygonSelection = memberIds;
      }
      counter += 1;
      const group: Group = {
        id: `g${counter}`,
        name: body.name,
        color: body.color ?? "#1f77b4",
        image_ids: memberIds,
      };
      groups.push(group);
      return json(group, 201);
    }
    if (path === "/api/groups" && method === "GET") return json({ groups });
    const groupMatch = path.match(/^\/api\/groups\/([^/]+)(\/.*)?$/);
    if (groupMatch) {
      const group = groups.find((g) => g.id === groupMatch[1]);
      if (!group) return json({ code: "unknown_group", message: "unknown", detail: null }, 404);
      const sub = groupMatch[2] ?? "";
      if (method === "DELETE") {
        groups.splice(groups.indexOf(group), 1);
        return json({ deleted: group.id });
      }
      if (sub === "/metrics") return json(metricsOf(group.image_ids));
      if (sub === "/cluster") {
        const labels: Record<string, number> = {};
        for (const id of group.image_ids) labels[id] = blobA.includes(id) ? 0 : 1;
        const two = new Set(Object.values(labels)).size > 1;
        return json({
          labels,
          k_found: two ? 2 : 1,
          inertia: body?.method === "kmeans" ? 12.5 : null,
          silhouette: two ? 0.82 : null,
          davies_bouldin: two ? 0.4 : null,
          degenerate_centroids: false,
        });
      }
      if (sub === "/gallery") {
        const buckets = new Map<number, string[]>();
        for (const id of group.image_ids) {
          const count = index.act_counts[ids.indexOf(id)];
          buckets.set(count, [...(buckets.get(count) ?? []), id]);
        }
        return json({
          space: url.searchParams.get("space") ?? "ACT",
          buckets: Array.from(buckets.entries())
            .sort((a, b) => a[0] - b[0])
            .map(([attribute_count, image_ids]) => ({ attribute_count, image_ids })),
        });
      }
      if (sub === "") return json(group);
    }
    if (path === "/api/coexistence/matrix") {
      const layout = url.searchParams.get("layout");
      const a = ATTRIBUTES.length;
      const values: (number | null)[][] = Array.from({ length: a }, (_, i) =>
        Array.from({ length: a }, (_, j) => {
          if (layout === "cross") return i === j ? 0.5 : null;
          if (i === 0 && j === 1) return null; // exercise the hatched path
          if (i === 1 && j === 0) return null;
          return ((i + 1) * (j + 1)) / (a * a);
        }),
      );
      return json({
        measure: url.searchParams.get("measure"),
        layout,
        attributes: ATTRIBUTES,
        values,
      });
    }
    if (path === "/api/coexistence/table") {
      const rankBy = url.searchParams.get("rankBy") ?? "number";
      const rows = [
        { combination: [0, 1, 3], names: ["Ring", "Halo", "Strong scattering"], number: 5, corNum: 4 },
        { combination: [0, 1, 2], names: ["Ring", "Halo", "Linear beamstop"], number: 3, corNum: 3 },
      ];
      if (rankBy === "corNum") rows.sort((a, b) => b.corNum - a.corNum);
      return json({ k: Number(url.searchParams.get("k")), rank_by: rankBy, rows });
    }
    if (path === "/api/attribute-set") {
      const attrs = (url.searchParams.get("attrs") ?? "")
        .split(",")
        .filter((s) => s !== "")
        .map(Number);
      return json(attributeSetOf(attrs));
    }
    return json({ code: "not_found", message: `no route for ${path}`, detail: null }, 404);
  };

  return server;
}
