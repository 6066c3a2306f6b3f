/** Pure projections from (state, data) to what each view shows.
 *
 * All four danmaku surfaces (Wordstream bands, Focused overlay, graph
 * nodes, subtitle-danmaku list) derive their visible set from the same
 * filter in one synchronous pass, which is what keeps them coherent within
 * a single render cycle.
 */
export function visibleBands(layout, filter) {
    return layout.bands.filter((band) => filter.has(band.category));
}
export function visibleOverlayRows(rows, filter) {
    return rows.filter((row) => filter.has(row.category));
}
export function visibleGraph(graph, filter) {
    const danmakuNodes = graph.danmaku_nodes.filter((node) => filter.has(node.category));
    const nodeIds = new Set(danmakuNodes.map((node) => node.id));
    return {
        entities: graph.entities,
        relations: graph.relations,
        danmakuNodes,
        attachments: graph.attachments.filter((attachment) => nodeIds.has(attachment.danmaku)),
    };
}
/** Chronological merge: subtitles left, consolidated comments right. */
export function listRows(lines, rows, filter) {
    const merged = [
        ...lines.map((line) => ({ kind: "subtitle", t: line.start, line })),
        ...rows
            .filter((row) => filter.has(row.category))
            .map((row) => ({ kind: "danmaku", t: row.representative.t, row })),
    ];
    merged.sort((a, b) => a.t - b.t || (a.kind === "subtitle" ? -1 : 1));
    return merged;
}
/** Focused-mode strip: same band shapes, compressed to newHeight, no boxes. */
export function simplifyLayout(layout, newHeight) {
    const k = newHeight / layout.height;
    return {
        ...layout,
        height: newHeight,
        bands: layout.bands.map((band) => ({
            ...band,
            bottoms: band.bottoms.map((y) => y * k),
            tops: band.tops.map((y) => y * k),
        })),
        boxes: [],
    };
}
