/** Exploration-mode knowledge graph: elliptical entity nodes in a ring,
 * square danmaku nodes placed beside the entity they attach to.
 * Deterministic layout, no physics.
 */

import { GraphView } from "../viewmodels.js";
import { CATEGORY_COLORS } from "../types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface GraphCallbacks {
  onDanmakuClick?: (clusterId: number) => void;
}

interface Point {
  x: number;
  y: number;
}

export function renderGraph(
  container: HTMLElement,
  view: GraphView,
  size: { width: number; height: number },
  callbacks: GraphCallbacks = {},
): void {
  container.replaceChildren();
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${size.width} ${size.height}`);
  svg.classList.add("kg");

  const positions = new Map<string, Point>();
  const cx = size.width / 2;
  const cy = size.height / 2;
  const ring = Math.min(size.width, size.height) * 0.32;
  const real = view.entities.filter((e) => !e.hub);
  const hub = view.entities.find((e) => e.hub);
  real.forEach((entity, i) => {
    const angle = (2 * Math.PI * i) / Math.max(1, real.length) - Math.PI / 2;
    positions.set(entity.id, { x: cx + ring * Math.cos(angle), y: cy + ring * Math.sin(angle) });
  });
  if (hub) {
    positions.set(hub.id, { x: cx, y: cy });
  }

  for (const relation of view.relations) {
    const a = positions.get(relation.source);
    const b = positions.get(relation.target);
    if (!a || !b) continue;
    svg.appendChild(edge(a, b, "kg-relation"));
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String((a.x + b.x) / 2));
    label.setAttribute("y", String((a.y + b.y) / 2 - 4));
    label.setAttribute("text-anchor", "middle");
    label.classList.add("kg-predicate");
    label.textContent = relation.predicate;
    svg.appendChild(label);
  }

  // Danmaku squares fan out around their entity.
  const fanned = new Map<string, number>();
  for (const node of view.danmakuNodes) {
    const attachment = view.attachments.find((a) => a.danmaku === node.id);
    if (!attachment) continue;
    const anchor = positions.get(attachment.entity);
    if (!anchor) continue;
    const slot = fanned.get(attachment.entity) ?? 0;
    fanned.set(attachment.entity, slot + 1);
    const angle = -Math.PI / 3 + slot * (Math.PI / 4);
    const r = 56 + 12 * Math.floor(slot / 6);
    const p = { x: anchor.x + r * Math.cos(angle), y: anchor.y + r * Math.sin(angle) };
    svg.appendChild(edge(anchor, p, "kg-attachment"));

    const square = document.createElementNS(SVG_NS, "rect");
    const side = 16;
    square.setAttribute("x", String(p.x - side / 2));
    square.setAttribute("y", String(p.y - side / 2));
    square.setAttribute("width", String(side));
    square.setAttribute("height", String(side));
    square.setAttribute("fill", CATEGORY_COLORS[node.category]);
    square.classList.add("kg-danmaku");
    square.dataset.clusterId = String(node.cluster_id);
    square.addEventListener("click", () => callbacks.onDanmakuClick?.(node.cluster_id));
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = node.category;
    square.appendChild(title);
    svg.appendChild(square);
  }

  for (const entity of view.entities) {
    const p = positions.get(entity.id);
    if (!p) continue;
    const group = document.createElementNS(SVG_NS, "g");
    const ellipse = document.createElementNS(SVG_NS, "ellipse");
    ellipse.setAttribute("cx", String(p.x));
    ellipse.setAttribute("cy", String(p.y));
    ellipse.setAttribute("rx", String(Math.max(30, entity.label.length * 7)));
    ellipse.setAttribute("ry", "20");
    ellipse.classList.add(entity.hub ? "kg-hub" : "kg-entity");
    group.appendChild(ellipse);
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(p.x));
    label.setAttribute("y", String(p.y));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("dominant-baseline", "middle");
    label.classList.add("kg-label");
    label.textContent = entity.label;
    group.appendChild(label);
    svg.appendChild(group);
  }

  container.appendChild(svg);
}

function edge(a: Point, b: Point, cls: string): SVGLineElement {
  const line = document.createElementNS(SVG_NS, "line");
  line.setAttribute("x1", String(a.x));
  line.setAttribute("y1", String(a.y));
  line.setAttribute("x2", String(b.x));
  line.setAttribute("y2", String(b.y));
  line.classList.add(cls);
  return line;
}
