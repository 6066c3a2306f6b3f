/** The viewer's mode state machine and shared view state.
 *
 * A pure reducer: player events drive the automatic transitions (load ->
 * Overview, play -> Focused, pause -> Exploration), a manual choice takes
 * effect immediately and persists until the next player event.
 */

import { CATEGORIES, Category } from "./types.js";

export type Mode = "overview" | "focused" | "exploration";

export type Cause = "load" | "play" | "pause" | "manual";

export type ModeEvent =
  | { kind: "load" }
  | { kind: "play" }
  | { kind: "pause" }
  | { kind: "manual"; mode: Mode };

export type Action =
  | { kind: "mode"; event: ModeEvent }
  | { kind: "toggle-category"; category: Category }
  | { kind: "set-zoom"; zoom: { from: number; to: number } | null }
  | { kind: "select"; commentId: string | null };

export interface ModeState {
  mode: Mode;
  cause: Cause;
  /** Shared across Wordstream, overlay, graph, and list. */
  filter: ReadonlySet<Category>;
  zoom: { from: number; to: number } | null;
  selected: string | null;
}

export function initialState(): ModeState {
  return {
    mode: "overview",
    cause: "load",
    filter: new Set(CATEGORIES),
    zoom: null,
    selected: null,
  };
}

export function modeTransition(state: ModeState, event: ModeEvent): ModeState {
  switch (event.kind) {
    case "load":
      return { ...state, mode: "overview", cause: "load" };
    case "play":
      return { ...state, mode: "focused", cause: "play" };
    case "pause":
      return { ...state, mode: "exploration", cause: "pause" };
    case "manual":
      return { ...state, mode: event.mode, cause: "manual" };
  }
}

export function reduce(state: ModeState, action: Action): ModeState {
  switch (action.kind) {
    case "mode":
      return modeTransition(state, action.event);
    case "toggle-category": {
      const filter = new Set(state.filter);
      if (filter.has(action.category)) {
        filter.delete(action.category);
      } else {
        filter.add(action.category);
      }
      return { ...state, filter };
    }
    case "set-zoom":
      return { ...state, zoom: action.zoom };
    case "select":
      return { ...state, selected: action.commentId };
  }
}
