/** The persistent side view: detail panels (related danmaku, explanation)
 * on top, the auto-scrolling subtitle-danmaku list below.
 */

import { ListRow } from "../viewmodels.js";
import { CATEGORY_COLORS, ExplanationResponse, RelatedResponse } from "../types.js";

export interface SideViewCallbacks {
  onDanmakuClick?: (commentId: string) => void;
  onSeek?: (t: number) => void;
}

export function renderList(
  container: HTMLElement,
  rows: ListRow[],
  currentTime: number,
  callbacks: SideViewCallbacks = {},
): void {
  container.replaceChildren();
  let activeRow: HTMLElement | null = null;
  for (const row of rows) {
    const div = document.createElement("div");
    div.classList.add("list-row", row.kind === "subtitle" ? "list-subtitle" : "list-danmaku");
    if (row.kind === "subtitle") {
      div.textContent = row.line.text;
      div.title = `${fmt(row.line.start)} - ${fmt(row.line.end)}`;
      if (row.line.start <= currentTime && currentTime < row.line.end) {
        div.classList.add("current");
        activeRow = div;
      }
      div.addEventListener("click", () => callbacks.onSeek?.(row.line.start));
    } else {
      const badge = row.row.scroll.badge !== null ? ` ×${row.row.scroll.badge}` : "";
      div.textContent = `${row.row.representative.text}${badge}`;
      div.title = `${fmt(row.t)} · ${row.row.category}`;
      div.style.borderInlineEndColor = CATEGORY_COLORS[row.row.category];
      div.dataset.commentId = row.row.representative.id;
      div.dataset.category = row.row.category;
      div.addEventListener("click", () => callbacks.onDanmakuClick?.(row.row.representative.id));
    }
    container.appendChild(div);
  }
  activeRow?.scrollIntoView({ block: "center" });
}

export function renderRelated(container: HTMLElement, payload: RelatedResponse | null): void {
  container.replaceChildren();
  const heading = document.createElement("h3");
  heading.textContent = "related danmaku (±15 s)";
  container.appendChild(heading);
  if (!payload || payload.related.length === 0) {
    container.appendChild(emptyNote(payload ? "no related comments" : "select a comment"));
    return;
  }
  for (const entry of payload.related) {
    const div = document.createElement("div");
    div.classList.add("related-row");
    div.style.borderInlineStartColor = CATEGORY_COLORS[entry.category];
    div.textContent = `${entry.text} (${entry.cosine.toFixed(2)})`;
    div.title = fmt(entry.t);
    container.appendChild(div);
  }
}

export function renderExplanation(container: HTMLElement, payload: ExplanationResponse | null): void {
  container.replaceChildren();
  const heading = document.createElement("h3");
  heading.textContent = "explanation";
  container.appendChild(heading);
  if (!payload) {
    container.appendChild(emptyNote("select a comment"));
    return;
  }
  const body = document.createElement("p");
  body.textContent = payload.text;
  container.appendChild(body);
  if (payload["offline-stub"]) {
    const tag = document.createElement("span");
    tag.classList.add("stub-tag");
    tag.textContent = "auto-generated (offline)";
    container.appendChild(tag);
  }
}

function emptyNote(text: string): HTMLElement {
  const p = document.createElement("p");
  p.classList.add("empty-note");
  p.textContent = text;
  return p;
}

function fmt(t: number): string {
  const minutes = Math.floor(t / 60);
  const seconds = Math.floor(t % 60);
  return `${minutes}:${String(seconds).padStart(2, "0")}`;
}
