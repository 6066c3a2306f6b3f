/** The viewer's mode state machine and shared view state.
 *
 * A pure reducer: player events drive the automatic transitions (load ->
 * Overview, play -> Focused, pause -> Exploration), a manual choice takes
 * effect immediately and persists until the next player event.
 */
import { CATEGORIES } from "./types.js";
export function initialState() {
    return {
        mode: "overview",
        cause: "load",
        filter: new Set(CATEGORIES),
        zoom: null,
        selected: null,
    };
}
export function modeTransition(state, event) {
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
export function reduce(state, action) {
    switch (action.kind) {
        case "mode":
            return modeTransition(state, action.event);
        case "toggle-category": {
            const filter = new Set(state.filter);
            if (filter.has(action.category)) {
                filter.delete(action.category);
            }
            else {
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
