/** Focused-mode overlay scheduling.
 *
 * Pure position math so the timing contract is testable without a DOM: a
 * comment entering at t_e with crossing duration T has fully left the
 * viewport at exactly t_e + T. The element starts with its left edge at the
 * right viewport border and travels viewportWidth + itemWidth pixels.
 */
/** Left-edge x at player time t. */
export function overlayX(item, t, viewportWidth) {
    const elapsed = t - item.enteredAt;
    const travel = viewportWidth + item.widthPx;
    return viewportWidth - (travel * elapsed) / item.row.scroll.duration_s;
}
export function isVisible(item, t, viewportWidth) {
    const x = overlayX(item, t, viewportWidth);
    return t >= item.enteredAt && x + item.widthPx > 0;
}
/** Fixed width-per-character box model (0.6 em Latin, 1.0 em CJK). */
export function textWidthPx(text, fontPx) {
    let units = 0;
    for (const ch of text) {
        const cp = ch.codePointAt(0) ?? 0;
        const cjk = (cp >= 0x3400 && cp <= 0x4dbf) || (cp >= 0x4e00 && cp <= 0x9fff) || (cp >= 0xf900 && cp <= 0xfaff);
        units += cjk ? 1.0 : 0.6;
    }
    return units * fontPx;
}
export class OverlayScheduler {
    constructor(viewportWidth, baseFontPx = 18, laneCount = 8) {
        this.viewportWidth = viewportWidth;
        this.baseFontPx = baseFontPx;
        this.laneCount = laneCount;
        this.pending = [];
        this.active = [];
        this.nextIndex = 0;
    }
    /** Rows sorted by representative time; resets active items. */
    load(rows) {
        this.pending = [...rows].sort((a, b) => a.representative.t - b.representative.t || a.cluster_id - b.cluster_id);
        this.active = [];
        this.nextIndex = 0;
    }
    /** Jump the playhead (seek): drop actives, reposition the emit cursor. */
    seek(t) {
        this.active = [];
        this.nextIndex = this.pending.findIndex((row) => row.representative.t >= t);
        if (this.nextIndex < 0)
            this.nextIndex = this.pending.length;
    }
    /** Advance to player time t; returns the drawable items with positions. */
    tick(t, visibleCategories) {
        while (this.nextIndex < this.pending.length && this.pending[this.nextIndex].representative.t <= t) {
            const row = this.pending[this.nextIndex];
            this.nextIndex += 1;
            const fontPx = this.baseFontPx * row.scroll.font_scale;
            this.active.push({
                row,
                enteredAt: row.representative.t,
                lane: this.pickLane(row.representative.t),
                widthPx: textWidthPx(row.representative.text, fontPx) + (row.scroll.badge !== null ? fontPx : 0),
            });
        }
        this.active = this.active.filter((item) => isVisible(item, t, this.viewportWidth));
        return this.active
            .filter((item) => visibleCategories.has(item.row.category))
            .map((item) => ({ item, x: overlayX(item, t, this.viewportWidth), visible: true }));
    }
    pickLane(t) {
        // Deterministic round-robin offset by entry order; collisions only
        // matter cosmetically and the lane count keeps them rare.
        const occupied = new Map();
        for (const item of this.active) {
            occupied.set(item.lane, Math.max(occupied.get(item.lane) ?? 0, item.enteredAt));
        }
        let best = 0;
        let bestTime = Number.POSITIVE_INFINITY;
        for (let lane = 0; lane < this.laneCount; lane += 1) {
            const lastEntry = occupied.get(lane) ?? Number.NEGATIVE_INFINITY;
            if (lastEntry < bestTime) {
                best = lane;
                bestTime = lastEntry;
            }
        }
        void t;
        return best;
    }
}
