/** Criterion: the mode state machine is a pure reducer whose transition
 * table matches the contract — load -> Overview, play -> Focused,
 * pause -> Exploration, manual(m) -> m — with manual choices persisting
 * until the next player event. Tested exhaustively over all pairs.
 */
import assert from "node:assert/strict";
import test from "node:test";
import { initialState, modeTransition, reduce } from "../src/state.js";
import { CATEGORIES } from "../src/types.js";
const MODES = ["overview", "focused", "exploration"];
const EVENTS = [
    { kind: "load" },
    { kind: "play" },
    { kind: "pause" },
    { kind: "manual", mode: "overview" },
    { kind: "manual", mode: "focused" },
    { kind: "manual", mode: "exploration" },
];
function expectedMode(event) {
    switch (event.kind) {
        case "load":
            return "overview";
        case "play":
            return "focused";
        case "pause":
            return "exploration";
        case "manual":
            return event.mode;
    }
}
function stateIn(mode) {
    return { ...initialState(), mode };
}
test("exhaustive transition table", () => {
    for (const mode of MODES) {
        for (const event of EVENTS) {
            const next = modeTransition(stateIn(mode), event);
            assert.equal(next.mode, expectedMode(event), `${mode} x ${JSON.stringify(event)}`);
            assert.equal(next.cause, event.kind);
        }
    }
});
test("reducer is pure: same inputs, same output; input untouched", () => {
    for (const mode of MODES) {
        for (const event of EVENTS) {
            const state = stateIn(mode);
            const frozen = JSON.stringify({ ...state, filter: [...state.filter] });
            const a = modeTransition(state, event);
            const b = modeTransition(state, event);
            assert.deepEqual(a, b);
            assert.equal(JSON.stringify({ ...state, filter: [...state.filter] }), frozen);
        }
    }
});
test("manual override persists until the next player event", () => {
    let state = stateIn("exploration");
    state = reduce(state, { kind: "mode", event: { kind: "manual", mode: "overview" } });
    assert.equal(state.mode, "overview");
    assert.equal(state.cause, "manual");
    // unrelated actions do not disturb the manual choice
    state = reduce(state, { kind: "toggle-category", category: "inquiry" });
    state = reduce(state, { kind: "set-zoom", zoom: { from: 10, to: 50 } });
    state = reduce(state, { kind: "select", commentId: "c1" });
    assert.equal(state.mode, "overview");
    assert.equal(state.cause, "manual");
    // the next player event takes over
    state = reduce(state, { kind: "mode", event: { kind: "play" } });
    assert.equal(state.mode, "focused");
    assert.equal(state.cause, "play");
});
test("every manual target is reachable from every mode", () => {
    for (const from of MODES) {
        for (const to of MODES) {
            const next = modeTransition(stateIn(from), { kind: "manual", mode: to });
            assert.equal(next.mode, to);
        }
    }
});
test("filter toggling is an involution and stays within the 7 slugs", () => {
    let state = initialState();
    assert.deepEqual([...state.filter].sort(), [...CATEGORIES].sort());
    for (const category of CATEGORIES) {
        state = reduce(state, { kind: "toggle-category", category });
        assert.ok(!state.filter.has(category));
        state = reduce(state, { kind: "toggle-category", category });
        assert.ok(state.filter.has(category));
        for (const slug of state.filter) {
            assert.ok(CATEGORIES.includes(slug));
        }
    }
});
