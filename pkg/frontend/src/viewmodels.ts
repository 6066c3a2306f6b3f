/** Pure projections from (state, data) to what each view shows.
 *
 * All four danmaku surfaces (Wordstream bands, Focused overlay, graph
 * nodes, subtitle-danmaku list) derive their visible set from the same
 * filter in one synchronous pass, which is what keeps them coherent within
 * a single render cycle.
 */

import { Band, Category, DanmakuRow, GraphResponse, Layout, TranscriptLine } from "./types.js";

export function visibleBands(layout: Layout, filter: ReadonlySet<Category>): Band[] {
  return layout.bands.filter((band) => filter.has(band.category));
}

export function visibleOverlayRows(rows: DanmakuRow[], filter: ReadonlySet<Category>): DanmakuRow[] {
  return rows.filter((row) => filter.has(row.category));
}

export interface GraphView {
  entities: GraphResponse["entities"];
  relations: GraphResponse["relations"];
  danmakuNodes: GraphResponse["danmaku_nodes"];
  attachments: GraphResponse["attachments"];
}

export function visibleGraph(graph: GraphResponse, filter: ReadonlySet<Category>): GraphView {
  const danmakuNodes = graph.danmaku_nodes.filter((node) => filter.has(node.category));
  const nodeIds = new Set(danmakuNodes.map((node) => node.id));
  return {
    entities: graph.entities,
    relations: graph.relations,
    danmakuNodes,
    attachments: graph.attachments.filter((attachment) => nodeIds.has(attachment.danmaku)),
  };
}

export type ListRow =
  | { kind: "subtitle"; t: number; line: TranscriptLine }
  | { kind: "danmaku"; t: number; row: DanmakuRow };

/** Chronological merge: subtitles left, consolidated comments right. */
export function listRows(
  lines: TranscriptLine[],
  rows: DanmakuRow[],
  filter: ReadonlySet<Category>,
): ListRow[] {
  const merged: ListRow[] = [
    ...lines.map((line): ListRow => ({ kind: "subtitle", t: line.start, line })),
    ...rows
      .filter((row) => filter.has(row.category))
      .map((row): ListRow => ({ kind: "danmaku", t: row.representative.t, row })),
  ];
  merged.sort((a, b) => a.t - b.t || (a.kind === "subtitle" ? -1 : 1));
  return merged;
}

/** Focused-mode strip: same band shapes, compressed to newHeight, no boxes. */
export function simplifyLayout(layout: Layout, newHeight: number): Layout {
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
