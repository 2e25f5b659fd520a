/** Selection round-trip: a scripted lasso drawn over one scatter creates
 * a group whose id set equals the server's polygon selection, and all
 * three scatters highlight exactly that set. */

import { beforeEach, describe, expect, it } from "vitest";

import { App } from "../src/app.js";
import { createMockServer, evenOddInside, type MockServer } from "./mock-server.js";

function firePointer(target: Element, type: string, x: number, y: number): void {
  target.dispatchEvent(
    new MouseEvent(type, { clientX: x, clientY: y, bubbles: true, cancelable: true }),
  );
}

async function flush(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
  await new Promise((resolve) => setTimeout(resolve, 0));
}

describe("lasso selection round-trip", () => {
  let server: MockServer;
  let app: App;

  beforeEach(async () => {
    server = createMockServer();
    document.body.innerHTML = '<div id="app"></div>';
    app = new App(document.getElementById("app")!, {
      fetchFn: server.fetchFn,
      scatterSize: { width: 400, height: 300 },
    });
    await app.start();
  });

  it("creates the server-selected group and highlights it everywhere", async () => {
    const scatter = app.scatters.get("ACT")!;
    scatter.lasso.enable();

    // rectangle in screen space around blob A (radius 1 around the origin)
    const [x0, y0] = scatter.dataToScreen(-1.6, -1.6);
    const [x1, y1] = scatter.dataToScreen(1.6, 1.6);
    const overlay = scatter.overlay;
    firePointer(overlay, "pointerdown", x0, y0);
    firePointer(overlay, "pointermove", x1, y0);
    firePointer(overlay, "pointermove", x1, y1);
    firePointer(overlay, "pointermove", x0, y1);
    firePointer(overlay, "pointerup", x0, y1);
    await flush();

    // the POST body carried a polygon with enough vertices
    const post = server.requests.find((r) => r.method === "POST" && r.path === "/api/groups");
    expect(post).toBeDefined();
    const polygon = (post!.body as { polygon: [number, number][] }).polygon;
    expect(polygon.length).toBeGreaterThanOrEqual(3);

    // server-side selection is authoritative and equals blob A exactly
    expect(server.lastPolygonSelection).not.toBeNull();
    expect(new Set(server.lastPolygonSelection!)).toEqual(new Set(server.blobA));

    // independent recomputation of the inclusion rule agrees
    const recomputed = server.ids.filter((id) =>
      evenOddInside(server.points[id][0], server.points[id][1], polygon),
    );
    expect(recomputed).toEqual(server.lastPolygonSelection);

    // the client keeps the group verbatim
    expect(app.state.groups).toHaveLength(1);
    const group = app.state.groups[0];
    expect(new Set(group.image_ids)).toEqual(new Set(server.lastPolygonSelection!));

    // every scatter highlights the same id set
    for (const space of ["ACT", "FEA", "PRD"] as const) {
      expect(app.scatters.get(space)!.highlightedIds()).toEqual(new Set(group.image_ids));
    }

    // and the group colors its dots in every view
    for (const id of group.image_ids) {
      expect(app.scatters.get("FEA")!.groupColorOf(id)).toBe(group.color);
    }
  });

  it("an empty lasso creates no group", async () => {
    const scatter = app.scatters.get("PRD")!;
    scatter.lasso.enable();
    const [x0, y0] = scatter.dataToScreen(4.0, -2.0);
    const [x1, y1] = scatter.dataToScreen(5.5, -0.5);
    const overlay = scatter.overlay;
    firePointer(overlay, "pointerdown", x0, y0);
    firePointer(overlay, "pointermove", x1, y0);
    firePointer(overlay, "pointermove", x1, y1);
    firePointer(overlay, "pointerup", x1, y1);
    await flush();

    expect(app.state.groups).toHaveLength(0);
    expect(document.querySelector(".toast")?.textContent).toBe("empty selection");
  });

  it("a lasso with too few vertices is ignored client-side", async () => {
    const scatter = app.scatters.get("ACT")!;
    scatter.lasso.enable();
    const overlay = scatter.overlay;
    firePointer(overlay, "pointerdown", 10, 10);
    firePointer(overlay, "pointerup", 10, 10);
    await flush();
    const posts = server.requests.filter((r) => r.method === "POST" && r.path === "/api/groups");
    expect(posts).toHaveLength(0);
  });
});
