/** Shared view state: the selection/highlight bus, group list, and open
 * detail images.  Views subscribe to events and re-render; nothing here
 * touches the DOM. */

import type { Group } from "./types.js";

type Listener<T> = (payload: T) => void;

export class Emitter<Events extends Record<string, unknown>> {
  private listeners = new Map<keyof Events, Set<Listener<never>>>();

  on<K extends keyof Events>(event: K, fn: Listener<Events[K]>): () => void {
    let set = this.listeners.get(event);
    if (!set) {
      set = new Set();
      this.listeners.set(event, set);
    }
    set.add(fn as Listener<never>);
    return () => set!.delete(fn as Listener<never>);
  }

  emit<K extends keyof Events>(event: K, payload: Events[K]): void {
    this.listeners.get(event)?.forEach((fn) => (fn as Listener<Events[K]>)(payload));
  }
}

export interface StateEvents extends Record<string, unknown> {
  "highlight-changed": { ids: ReadonlySet<string>; source: string };
  "groups-changed": { groups: readonly Group[] };
  "details-changed": { ids: readonly string[] };
  "filter-changed": { attributes: readonly number[] };
}

export class ViewState {
  readonly events = new Emitter<StateEvents>();
  private highlightedIds: Set<string> = new Set();
  private highlightSource = "";
  private groupList: Group[] = [];
  private detailIds: string[] = [];
  private filterAttributes: number[] = [];

  get highlighted(): ReadonlySet<string> {
    return this.highlightedIds;
  }

  get highlightOrigin(): string {
    return this.highlightSource;
  }

  get groups(): readonly Group[] {
    return this.groupList;
  }

  get openDetails(): readonly string[] {
    return this.detailIds;
  }

  get attributeFilter(): readonly number[] {
    return this.filterAttributes;
  }

  setHighlight(ids: Iterable<string>, source: string): void {
    this.highlightedIds = new Set(ids);
    this.highlightSource = source;
    this.events.emit("highlight-changed", { ids: this.highlightedIds, source });
  }

  clearHighlight(source: string): void {
    this.setHighlight([], source);
  }

  addGroup(group: Group): void {
    this.groupList = [...this.groupList.filter((g) => g.id !== group.id), group];
    this.events.emit("groups-changed", { groups: this.groupList });
  }

  removeGroup(id: string): void {
    this.groupList = this.groupList.filter((g) => g.id !== id);
    this.events.emit("groups-changed", { groups: this.groupList });
  }

  /** Color of the most recently added group containing the image, if any. */
  groupColor(imageId: string): string | null {
    for (let i = this.groupList.length - 1; i >= 0; i--) {
      if (this.groupList[i].image_ids.includes(imageId)) {
        return this.groupList[i].color;
      }
    }
    return null;
  }

  openDetail(imageId: string): void {
    if (!this.detailIds.includes(imageId)) {
      this.detailIds = [...this.detailIds, imageId];
      this.events.emit("details-changed", { ids: this.detailIds });
    }
  }

  closeDetail(imageId: string): void {
    this.detailIds = this.detailIds.filter((i) => i !== imageId);
    this.events.emit("details-changed", { ids: this.detailIds });
  }

  setAttributeFilter(attributes: number[]): void {
    this.filterAttributes = [...attributes];
    this.events.emit("filter-changed", { attributes: this.filterAttributes });
  }
}
