/** Canvas scatterplot of one embedded space with an SVG interaction overlay.
 *
 * Dot transparency encodes the model's per-image error rate (error-free
 * images are the most transparent), fill color comes from group
 * membership, and highlights arriving on the shared state bus outline the
 * same ids in every space.  Zoom (wheel) and pan (drag) adjust a linear
 * viewport transform; the lasso tool captures freehand polygons that the
 * owner sends to the server for authoritative selection.
 */

import { LassoTool } from "./lasso.js";
import { ViewState } from "./state.js";
import type { SpaceName } from "./types.js";

export interface ScatterPoint {
  id: string;
  x: number;
  y: number;
  errorRate: number;
}

export interface ScatterOptions {
  width?: number;
  height?: number;
  pointRadius?: number;
}

interface Transform {
  k: number;
  tx: number;
  ty: number;
}

const MIN_ALPHA = 0.15;
const DEFAULT_COLOR = "#6b7280";
const HIGHLIGHT_COLOR = "#ff3d00";
const SVG_NS = "http://www.w3.org/2000/svg";
const HOVER_RADIUS_PX = 6;

export class ScatterView {
  readonly canvas: HTMLCanvasElement;
  readonly overlay: SVGSVGElement;
  readonly lasso: LassoTool;
  onLasso?: (polygonData: [number, number][]) => void;
  onPointClick?: (id: string) => void;

  private readonly width: number;
  private readonly height: number;
  private readonly radius: number;
  private points: ScatterPoint[] = [];
  private transform: Transform = { k: 1, tx: 0, ty: 0 };
  private fit: { scale: number; cx: number; cy: number } = { scale: 1, cx: 0, cy: 0 };
  private dragging: { x: number; y: number } | null = null;
  private ctx: CanvasRenderingContext2D | null | undefined;

  constructor(
    readonly container: HTMLElement,
    readonly space: SpaceName,
    private readonly state: ViewState,
    options: ScatterOptions = {},
  ) {
    this.width = options.width ?? (container.clientWidth || 420);
    this.height = options.height ?? (container.clientHeight || 320);
    this.radius = options.pointRadius ?? 4;

    container.classList.add("scatter");
    container.dataset.space = space;

    const label = document.createElement("div");
    label.className = "scatter-label";
    label.textContent = space;
    container.appendChild(label);

    this.canvas = document.createElement("canvas");
    this.canvas.width = this.width;
    this.canvas.height = this.height;
    container.appendChild(this.canvas);

    this.overlay = document.createElementNS(SVG_NS, "svg") as SVGSVGElement;
    this.overlay.setAttribute("width", String(this.width));
    this.overlay.setAttribute("height", String(this.height));
    this.overlay.setAttribute("class", "scatter-overlay");
    container.appendChild(this.overlay);

    this.lasso = new LassoTool(this.overlay, (pixels) => {
      const polygon = pixels.map(([px, py]) => this.screenToData(px, py));
      this.onLasso?.(polygon);
    });

    this.overlay.addEventListener("wheel", this.handleWheel as EventListener);
    this.overlay.addEventListener("pointerdown", this.handlePanStart);
    this.overlay.addEventListener("pointermove", this.handlePointerMove);
    this.overlay.addEventListener("pointerup", this.handlePanEnd);
    this.overlay.addEventListener("click", this.handleClick);

    state.events.on("highlight-changed", () => this.render());
    state.events.on("groups-changed", () => this.render());
  }

  setPoints(points: ScatterPoint[]): void {
    this.points = points;
    if (points.length) {
      const xs = points.map((p) => p.x);
      const ys = points.map((p) => p.y);
      const minX = Math.min(...xs);
      const maxX = Math.max(...xs);
      const minY = Math.min(...ys);
      const maxY = Math.max(...ys);
      const spanX = maxX - minX || 1;
      const spanY = maxY - minY || 1;
      const pad = 0.9;
      this.fit = {
        scale: pad * Math.min(this.width / spanX, this.height / spanY),
        cx: (minX + maxX) / 2,
        cy: (minY + maxY) / 2,
      };
    }
    this.transform = { k: 1, tx: 0, ty: 0 };
    this.render();
  }

  dataToScreen(x: number, y: number): [number, number] {
    const { scale, cx, cy } = this.fit;
    const { k, tx, ty } = this.transform;
    return [
      (x - cx) * scale * k + this.width / 2 + tx,
      (y - cy) * scale * k + this.height / 2 + ty,
    ];
  }

  screenToData(px: number, py: number): [number, number] {
    const { scale, cx, cy } = this.fit;
    const { k, tx, ty } = this.transform;
    return [
      (px - this.width / 2 - tx) / (scale * k) + cx,
      (py - this.height / 2 - ty) / (scale * k) + cy,
    ];
  }

  highlightedIds(): Set<string> {
    const ids = new Set<string>();
    for (const p of this.points) {
      if (this.state.highlighted.has(p.id)) ids.add(p.id);
    }
    return ids;
  }

  groupColorOf(id: string): string | null {
    return this.state.groupColor(id);
  }

  render(): void {
    if (this.ctx === undefined) {
      try {
        this.ctx = this.canvas.getContext("2d");
      } catch {
        this.ctx = null; // headless test environment
      }
    }
    const ctx = this.ctx;
    if (!ctx) return;
    ctx.clearRect(0, 0, this.width, this.height);
    for (const point of this.points) {
      const [sx, sy] = this.dataToScreen(point.x, point.y);
      if (sx < -this.radius || sx > this.width + this.radius) continue;
      if (sy < -this.radius || sy > this.height + this.radius) continue;
      const alpha = MIN_ALPHA + (1 - MIN_ALPHA) * point.errorRate;
      ctx.globalAlpha = alpha;
      ctx.fillStyle = this.state.groupColor(point.id) ?? DEFAULT_COLOR;
      ctx.beginPath();
      ctx.arc(sx, sy, this.radius, 0, 2 * Math.PI);
      ctx.fill();
      if (this.state.highlighted.has(point.id)) {
        ctx.globalAlpha = 1;
        ctx.strokeStyle = HIGHLIGHT_COLOR;
        ctx.lineWidth = 2;
        ctx.stroke();
      }
    }
    ctx.globalAlpha = 1;
  }

  private hitTest(px: number, py: number): ScatterPoint | null {
    let best: ScatterPoint | null = null;
    let bestDist = HOVER_RADIUS_PX * HOVER_RADIUS_PX;
    for (const point of this.points) {
      const [sx, sy] = this.dataToScreen(point.x, point.y);
      const dx = sx - px;
      const dy = sy - py;
      const d = dx * dx + dy * dy;
      if (d <= bestDist) {
        best = point;
        bestDist = d;
      }
    }
    return best;
  }

  private localPoint(event: MouseEvent): [number, number] {
    const rect = this.overlay.getBoundingClientRect();
    return [event.clientX - rect.left, event.clientY - rect.top];
  }

  private handleWheel = (event: WheelEvent): void => {
    event.preventDefault();
    const [px, py] = this.localPoint(event);
    const factor = event.deltaY < 0 ? 1.15 : 1 / 1.15;
    const [dx, dy] = this.screenToData(px, py);
    this.transform.k = Math.min(50, Math.max(0.1, this.transform.k * factor));
    // keep the data point under the cursor fixed
    const [nx, ny] = this.dataToScreen(dx, dy);
    this.transform.tx += px - nx;
    this.transform.ty += py - ny;
    this.render();
  };

  private handlePanStart = (event: Event): void => {
    if (this.lasso.isEnabled) return;
    const [px, py] = this.localPoint(event as MouseEvent);
    this.dragging = { x: px, y: py };
  };

  private handlePointerMove = (event: Event): void => {
    const [px, py] = this.localPoint(event as MouseEvent);
    if (this.dragging) {
      this.transform.tx += px - this.dragging.x;
      this.transform.ty += py - this.dragging.y;
      this.dragging = { x: px, y: py };
      this.render();
      return;
    }
    if (this.lasso.isEnabled) return;
    const hit = this.hitTest(px, py);
    if (hit) {
      this.state.setHighlight([hit.id], this.space);
    } else if (this.state.highlighted.size && this.state.highlightOrigin === this.space) {
      this.state.clearHighlight(this.space);
    }
  };

  private handlePanEnd = (): void => {
    this.dragging = null;
  };

  private handleClick = (event: Event): void => {
    if (this.lasso.isEnabled) return;
    const [px, py] = this.localPoint(event as MouseEvent);
    const hit = this.hitTest(px, py);
    if (hit) this.onPointClick?.(hit.id);
  };
}
