/** Criterion: toggling any category updates Wordstream bands, the Focused
 * overlay, graph nodes, and list rows coherently within one render cycle.
 *
 * Integration-style: the real ApiClient runs against the repository's
 * golden API responses (actual bytes served for the fixture bundle), and
 * all four view projections are recomputed from one state in one pass.
 */
import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import test from "node:test";
import { ApiClient } from "../src/api.js";
import { initialState, reduce } from "../src/state.js";
import { CATEGORIES } from "../src/types.js";
import { listRows, visibleBands, visibleGraph, visibleOverlayRows } from "../src/viewmodels.js";
const HERE = dirname(fileURLToPath(import.meta.url));
const REPO_ROOT = join(HERE, "..", "..", "..");
const GOLDEN = join(REPO_ROOT, "tests", "golden");
function goldenFetch() {
    const manifest = JSON.parse(readFileSync(join(GOLDEN, "manifest.json"), "utf-8"));
    const byPath = new Map();
    for (const [name, path] of Object.entries(manifest)) {
        byPath.set(path, join(GOLDEN, `${name}.json`));
    }
    return async (url) => {
        const file = byPath.get(url);
        if (!file) {
            return { ok: false, status: 404, json: async () => ({ error: `no golden for ${url}` }) };
        }
        const payload = JSON.parse(readFileSync(file, "utf-8"));
        return { ok: true, status: 200, json: async () => payload };
    };
}
/** One synchronous render pass over every danmaku surface. */
function renderAll(state, wordstream, rows, graph, lines) {
    const bands = visibleBands(wordstream.layout, state.filter);
    const overlay = visibleOverlayRows(rows, state.filter);
    const graphView = visibleGraph(graph, state.filter);
    const list = listRows(lines, rows, state.filter);
    return {
        wordstreamCategories: new Set(bands.map((band) => band.category)),
        overlayCategories: new Set(overlay.map((row) => row.category)),
        graphCategories: new Set(graphView.danmakuNodes.map((node) => node.category)),
        listCategories: new Set(list.filter((row) => row.kind === "danmaku").map((row) => row.row.category)),
    };
}
test("toggling any category updates all four surfaces in one pass", async () => {
    const api = new ApiClient("", goldenFetch());
    const manifest = JSON.parse(readFileSync(join(GOLDEN, "manifest.json"), "utf-8"));
    const videoId = manifest.video.split("/")[3];
    const wordstream = (await api.wordstream(videoId, 0, 120));
    const rows = (await api.danmaku(videoId));
    const graph = (await api.graph(videoId, 37));
    const lines = await api.transcript(videoId, 0, 60);
    assert.ok(wordstream.layout.bands.length > 0);
    assert.ok(rows.length > 0);
    assert.ok(graph.danmaku_nodes.length > 0);
    const present = {
        wordstreamCategories: new Set(wordstream.layout.bands.map((b) => b.category)),
        overlayCategories: new Set(rows.map((r) => r.category)),
        graphCategories: new Set(graph.danmaku_nodes.map((n) => n.category)),
        listCategories: new Set(rows.map((r) => r.category)),
    };
    let state = initialState();
    for (const category of CATEGORIES) {
        state = reduce(state, { kind: "toggle-category", category });
        const off = renderAll(state, wordstream, rows, graph, lines);
        for (const [surface, categories] of Object.entries(off)) {
            assert.ok(!categories.has(category), `${surface} still shows ${category} after toggle-off`);
            const expected = [...present[surface]].filter((c) => state.filter.has(c)).sort();
            assert.deepEqual([...categories].sort(), expected, `${surface} mismatch`);
        }
        state = reduce(state, { kind: "toggle-category", category });
        const on = renderAll(state, wordstream, rows, graph, lines);
        for (const [surface, categories] of Object.entries(on)) {
            assert.deepEqual([...categories].sort(), [...present[surface]].sort(), `${surface} not restored`);
        }
    }
});
test("graph attachments never reference a hidden danmaku node", async () => {
    const api = new ApiClient("", goldenFetch());
    const graph = (await api.graph("synthetic-001", 37));
    let state = initialState();
    for (const category of CATEGORIES) {
        state = reduce(state, { kind: "toggle-category", category });
        const view = visibleGraph(graph, state.filter);
        const nodeIds = new Set(view.danmakuNodes.map((node) => node.id));
        for (const attachment of view.attachments) {
            assert.ok(nodeIds.has(attachment.danmaku));
        }
    }
});
test("stale responses are discarded by request sequence number", async () => {
    const resolvers = [];
    const api = new ApiClient("", () => new Promise((resolve) => resolvers.push(resolve)));
    const first = api.danmaku("v", 0, 10);
    const second = api.danmaku("v", 0, 20);
    // resolve out of order: the older request completes last
    resolvers[1]({ ok: true, status: 200, json: async () => [{ marker: "new" }] });
    resolvers[0]({ ok: true, status: 200, json: async () => [{ marker: "old" }] });
    assert.equal(await first, null); // superseded
    const fresh = (await second);
    assert.equal(fresh[0].marker, "new");
});
