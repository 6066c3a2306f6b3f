/** SVG rendering of a Wordstream layout (bands + keyword boxes). */

import { Band, CATEGORY_COLORS, Category, KeywordBox, Layout } from "../types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface WordstreamCallbacks {
  onKeywordClick?: (token: string, category: Category) => void;
  onTimeClick?: (t: number) => void;
}

export function renderWordstream(
  container: HTMLElement,
  layout: Layout,
  filter: ReadonlySet<Category>,
  callbacks: WordstreamCallbacks = {},
): void {
  container.replaceChildren();
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${layout.width} ${layout.height}`);
  svg.setAttribute("preserveAspectRatio", "none");
  svg.classList.add("wordstream");

  for (const band of layout.bands) {
    if (!filter.has(band.category) || band.xs.length === 0) continue;
    svg.appendChild(bandPolygon(band));
  }
  for (const box of layout.boxes) {
    if (!filter.has(box.category)) continue;
    svg.appendChild(keywordText(box, callbacks));
  }
  svg.addEventListener("click", (event) => {
    if (event.target === svg && callbacks.onTimeClick) {
      const rect = svg.getBoundingClientRect();
      const frac = (event.clientX - rect.left) / rect.width;
      callbacks.onTimeClick(layout.t_from + frac * (layout.t_to - layout.t_from));
    }
  });
  container.appendChild(svg);
}

function bandPolygon(band: Band): SVGPolygonElement {
  const polygon = document.createElementNS(SVG_NS, "polygon");
  const upper = band.xs.map((x, i) => `${x},${band.tops[i]}`);
  const lower = [...band.xs].reverse().map((x, i) => `${x},${band.bottoms[band.xs.length - 1 - i]}`);
  polygon.setAttribute("points", [...upper, ...lower].join(" "));
  polygon.setAttribute("fill", CATEGORY_COLORS[band.category]);
  polygon.setAttribute("fill-opacity", "0.75");
  polygon.dataset.category = band.category;
  const title = document.createElementNS(SVG_NS, "title");
  title.textContent = band.category;
  polygon.appendChild(title);
  return polygon;
}

function keywordText(box: KeywordBox, callbacks: WordstreamCallbacks): SVGTextElement {
  const text = document.createElementNS(SVG_NS, "text");
  text.setAttribute("x", String(box.x));
  text.setAttribute("y", String(box.y));
  text.setAttribute("font-size", String(box.font));
  text.setAttribute("text-anchor", "middle");
  text.setAttribute("dominant-baseline", "middle");
  text.classList.add("wordstream-keyword");
  text.textContent = box.token;
  text.addEventListener("click", (event) => {
    event.stopPropagation();
    callbacks.onKeywordClick?.(box.token, box.category);
  });
  return text;
}
