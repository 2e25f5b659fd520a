/** Flower legend conformance: all four (actual, decision) combinations
 * render with the documented petal encoding. */

import { describe, expect, it } from "vitest";

import { flowerSvg, petalAttributes, petalPath } from "../src/flower.js";
import type { PetalState } from "../src/types.js";

const COLORS = ["#e6194b", "#3cb44b", "#4363d8", "#f58231"];

function renderedPetals(svg: string): Element[] {
  const host = document.createElement("div");
  host.innerHTML = svg;
  return Array.from(host.querySelectorAll("path[data-petal]"));
}

describe("petal encoding", () => {
  it("TP renders a solid petal in the attribute color", () => {
    const attrs = petalAttributes("TP", "#e6194b");
    expect(attrs).not.toBeNull();
    expect(attrs!.fill).toBe("#e6194b");
    expect(attrs!.stroke).toBe("#e6194b");
  });

  it("FN renders a blank petal (outline only)", () => {
    const attrs = petalAttributes("FN", "#e6194b");
    expect(attrs!.fill).toBe("none");
    expect(attrs!.stroke).toBe("#e6194b");
  });

  it("TN renders no petal at all", () => {
    expect(petalAttributes("TN", "#e6194b")).toBeNull();
  });

  it("FP renders a solid petal with a black border", () => {
    const attrs = petalAttributes("FP", "#e6194b");
    expect(attrs!.fill).toBe("#e6194b");
    expect(attrs!.stroke).toBe("#000000");
  });
});

describe("flower svg", () => {
  const states: PetalState[] = ["TP", "FN", "TN", "FP"];

  it("skips the TN petal and keeps the rest", () => {
    const petals = renderedPetals(flowerSvg({ states, colors: COLORS }));
    expect(petals.map((p) => p.getAttribute("data-state"))).toEqual(["TP", "FN", "FP"]);
  });

  it("matches the frozen legend snapshot for all four states", () => {
    expect(flowerSvg({ states, colors: COLORS, size: 48 })).toMatchSnapshot();
  });

  it("each single-state flower matches its snapshot", () => {
    for (const state of states) {
      const svg = flowerSvg({ states: [state, "TN", "TN"], colors: COLORS, size: 48 });
      expect(svg).toMatchSnapshot(`state-${state}`);
    }
  });

  it("petal paths are distinct per position", () => {
    const paths = [0, 1, 2, 3].map((i) => petalPath(i, 4, 20));
    expect(new Set(paths).size).toBe(4);
  });
});
