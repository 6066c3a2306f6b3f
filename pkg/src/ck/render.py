"""Static SVG rendering of a Wordstream layout.

Consumes the same geometry JSON the viewer uses; no renderer assumptions
leak into the layout itself.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .presentation import WordstreamLayout

CATEGORY_COLORS = {
    "interpretation-positive": "#4caf50",
    "interpretation-neutral": "#9e9e9e",
    "interpretation-negative": "#e53935",
    "inquiry": "#1e88e5",
    "experience-sharing": "#fb8c00",
    "concept-noting": "#8e24aa",
    "supplementary-knowledge": "#00897b",
}


def wordstream_svg(layout: WordstreamLayout, title: str = "") -> str:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{layout.width:g}" height="{layout.height:g}" '
        f'viewBox="0 0 {layout.width:g} {layout.height:g}">',
    ]
    if title:
        parts.append(f"<title>{escape(title)}</title>")
    parts.append(f'<rect width="{layout.width:g}" height="{layout.height:g}" fill="#ffffff"/>')
    for band in layout.bands:
        if not band.xs:
            continue
        points = [(x, top) for x, top in zip(band.xs, band.tops)]
        points += [(x, bottom) for x, bottom in zip(reversed(band.xs), reversed(band.bottoms))]
        path = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
        color = CATEGORY_COLORS.get(band.category, "#607d8b")
        parts.append(f'<polygon points="{path}" fill="{color}" fill-opacity="0.75"><title>{escape(band.category)}</title></polygon>')
    for box in layout.boxes:
        color = CATEGORY_COLORS.get(box.category, "#263238")
        parts.append(
            f'<text x="{box.x:.2f}" y="{box.y:.2f}" font-size="{box.font:.1f}" '
            f'text-anchor="middle" dominant-baseline="middle" fill="{color}" '
            f'font-family="sans-serif">{escape(box.token)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)
