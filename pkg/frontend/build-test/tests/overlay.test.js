/** Criterion: overlay animation honors the server's crossing duration — a
 * cluster with spec T = 7.8 s traverses the viewport in 7.8 s ± one frame,
 * driven by a headless 60 fps clock.
 */
import assert from "node:assert/strict";
import test from "node:test";
import { OverlayScheduler, isVisible, overlayX, textWidthPx } from "../src/overlay.js";
import { HeadlessPlayer } from "../src/player.js";
const FPS = 60;
const FRAME = 1 / FPS;
function row(t, durationS, text = "我觉得这期讲得特别清楚", size = 4) {
    return {
        cluster_id: 1,
        category: "interpretation-positive",
        size,
        window_id: 0,
        representative: { id: "c1", t, text },
        scroll: { duration_s: durationS, font_scale: 1.4, badge: size >= 2 ? size : null },
    };
}
test("a T=7.8 s cluster leaves the viewport at entry + 7.8 s ± one frame", () => {
    const viewport = 800;
    const scheduler = new OverlayScheduler(viewport, 18);
    const entry = 12.0;
    const spec = row(entry, 7.8);
    scheduler.load([spec]);
    const player = new HeadlessPlayer(60);
    player.seek(entry - 0.5);
    player.play();
    let lastVisible = Number.NaN;
    const visible = new Set(["interpretation-positive"]);
    for (let frame = 0; frame < Math.round(12 * FPS); frame += 1) {
        player.tick(FRAME);
        const drawn = scheduler.tick(player.currentTime, visible);
        if (drawn.length > 0) {
            lastVisible = player.currentTime;
        }
    }
    const exit = lastVisible + FRAME; // gone by the frame after the last visible one
    assert.ok(Math.abs(exit - (entry + 7.8)) <= FRAME + 1e-9, `exit=${exit}, expected ${entry + 7.8}`);
});
test("position math: enters at right edge, exits when right edge hits 0", () => {
    const viewport = 640;
    const item = {
        row: row(10, 6.0, "hello"),
        enteredAt: 10,
        lane: 0,
        widthPx: textWidthPx("hello", 18),
    };
    assert.equal(overlayX(item, 10, viewport), viewport);
    const atExit = overlayX(item, 16, viewport);
    assert.ok(Math.abs(atExit + item.widthPx) < 1e-9); // right edge exactly at 0
    assert.ok(isVisible(item, 15.999, viewport));
    assert.ok(!isVisible(item, 16.0001, viewport));
});
test("filtered categories are not drawn but keep scrolling", () => {
    const scheduler = new OverlayScheduler(800, 18);
    scheduler.load([row(1.0, 8.0)]);
    const none = scheduler.tick(2.0, new Set(["inquiry"]));
    assert.equal(none.length, 0);
    const some = scheduler.tick(2.1, new Set(["interpretation-positive"]));
    assert.equal(some.length, 1);
    // it kept moving during the filtered ticks
    assert.ok(some[0].x < 800);
});
test("seek resets active items and emit cursor", () => {
    const scheduler = new OverlayScheduler(800, 18);
    scheduler.load([row(5, 6), { ...row(50, 6), cluster_id: 2, representative: { id: "c2", t: 50, text: "later" } }]);
    assert.equal(scheduler.tick(6, new Set(["interpretation-positive"])).length, 1);
    scheduler.seek(49);
    assert.equal(scheduler.tick(49, new Set(["interpretation-positive"])).length, 0);
    assert.equal(scheduler.tick(50.5, new Set(["interpretation-positive"])).length, 1);
});
test("cjk text measures wider than latin at equal length", () => {
    assert.ok(textWidthPx("一二三四", 18) > textWidthPx("abcd", 18));
});
test("headless player emits play/pause/time events", () => {
    const seen = [];
    const player = new HeadlessPlayer(10, {
        onPlay: () => seen.push("play"),
        onPause: () => seen.push("pause"),
        onTime: () => void 0,
    });
    player.play();
    player.tick(0.5);
    player.pause();
    assert.deepEqual(seen, ["play", "pause"]);
    assert.ok(Math.abs(player.currentTime - 0.5) < 1e-9);
});
