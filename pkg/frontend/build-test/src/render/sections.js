/** Progress-bar directory: sections as proportional segments over the
 * timeline, with hover transcript tooltips and click-to-zoom.
 */
export function renderSections(container, sections, duration, zoomed, currentTime, callbacks = {}) {
    container.replaceChildren();
    for (const section of sections) {
        const div = document.createElement("div");
        div.classList.add("section-segment");
        if (zoomed && zoomed.index === section.index)
            div.classList.add("zoomed");
        div.style.flexGrow = String(section.end - section.start);
        const label = document.createElement("span");
        label.classList.add("section-summary");
        label.textContent = section.summary;
        div.appendChild(label);
        div.addEventListener("click", () => callbacks.onSectionClick?.(section));
        div.addEventListener("mousemove", (event) => {
            const rect = div.getBoundingClientRect();
            const frac = (event.clientX - rect.left) / rect.width;
            const t = section.start + frac * (section.end - section.start);
            const line = callbacks.transcriptAt?.(t);
            div.title = line ? `${t.toFixed(0)}s — ${line.text}` : `${t.toFixed(0)}s`;
        });
        container.appendChild(div);
    }
    const marker = document.createElement("div");
    marker.classList.add("playhead");
    marker.style.left = `${(100 * currentTime) / duration}%`;
    container.appendChild(marker);
}
