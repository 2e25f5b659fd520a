/** Freehand lasso capture on an SVG overlay.
 *
 * Pointer events build the path (dropping vertices closer than a few
 * pixels), an SVG polyline previews it, and releasing the pointer closes
 * the polygon and hands it to the callback when it has at least three
 * vertices.  Coordinates are in overlay-local pixels; the owner converts
 * to data space.
 */

const MIN_VERTEX_DISTANCE = 3;
const SVG_NS = "http://www.w3.org/2000/svg";

export type LassoCallback = (path: [number, number][]) => void;

export class LassoTool {
  private path: [number, number][] = [];
  private active = false;
  private enabled = false;
  private preview: SVGPolylineElement | null = null;

  constructor(
    private readonly overlay: SVGSVGElement,
    private readonly onComplete: LassoCallback,
  ) {
    overlay.addEventListener("pointerdown", this.handleDown);
    overlay.addEventListener("pointermove", this.handleMove);
    overlay.addEventListener("pointerup", this.handleUp);
  }

  enable(): void {
    this.enabled = true;
    this.overlay.classList.add("lasso-enabled");
  }

  disable(): void {
    this.enabled = false;
    this.active = false;
    this.overlay.classList.remove("lasso-enabled");
    this.clearPreview();
  }

  get isEnabled(): boolean {
    return this.enabled;
  }

  private localPoint(event: PointerEvent | MouseEvent): [number, number] {
    const rect = this.overlay.getBoundingClientRect();
    return [event.clientX - rect.left, event.clientY - rect.top];
  }

  private handleDown = (event: Event): void => {
    if (!this.enabled) return;
    this.active = true;
    this.path = [this.localPoint(event as PointerEvent)];
    this.drawPreview();
  };

  private handleMove = (event: Event): void => {
    if (!this.enabled || !this.active) return;
    const point = this.localPoint(event as PointerEvent);
    const last = this.path[this.path.length - 1];
    const dx = point[0] - last[0];
    const dy = point[1] - last[1];
    if (dx * dx + dy * dy >= MIN_VERTEX_DISTANCE * MIN_VERTEX_DISTANCE) {
      this.path.push(point);
      this.drawPreview();
    }
  };

  private handleUp = (): void => {
    if (!this.enabled || !this.active) return;
    this.active = false;
    const path = this.path;
    this.path = [];
    this.clearPreview();
    if (path.length >= 3) {
      this.onComplete(path);
    }
  };

  private drawPreview(): void {
    if (!this.preview) {
      this.preview = document.createElementNS(SVG_NS, "polyline");
      this.preview.setAttribute("class", "lasso-preview");
      this.preview.setAttribute("fill", "none");
      this.preview.setAttribute("stroke", "#333");
      this.preview.setAttribute("stroke-dasharray", "4 3");
      this.overlay.appendChild(this.preview);
    }
    this.preview.setAttribute("points", this.path.map(([x, y]) => `${x},${y}`).join(" "));
  }

  private clearPreview(): void {
    this.preview?.remove();
    this.preview = null;
  }
}
