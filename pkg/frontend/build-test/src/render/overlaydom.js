/** DOM layer of the Focused-mode overlay: absolutely positioned rows over
 * the player, one element per active consolidated comment.
 */
import { CATEGORY_COLORS } from "../types.js";
export function renderOverlay(container, positions, baseFontPx, laneHeightPx) {
    container.replaceChildren();
    for (const { item, x } of positions) {
        const div = document.createElement("div");
        div.classList.add("overlay-item");
        div.style.transform = `translateX(${x}px)`;
        div.style.top = `${item.lane * laneHeightPx}px`;
        div.style.fontSize = `${baseFontPx * item.row.scroll.font_scale}px`;
        div.style.color = CATEGORY_COLORS[item.row.category];
        div.textContent = item.row.representative.text;
        if (item.row.scroll.badge !== null) {
            const badge = document.createElement("sup");
            badge.classList.add("overlay-badge");
            badge.textContent = `×${item.row.scroll.badge}`;
            div.appendChild(badge);
        }
        container.appendChild(div);
    }
}
