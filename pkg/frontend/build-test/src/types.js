/** Payload shapes of the bundle API, mirrored from the server's JSON. */
export const CATEGORIES = [
    "interpretation-positive",
    "interpretation-neutral",
    "interpretation-negative",
    "inquiry",
    "experience-sharing",
    "concept-noting",
    "supplementary-knowledge",
];
export const CATEGORY_COLORS = {
    "interpretation-positive": "#4caf50",
    "interpretation-neutral": "#9e9e9e",
    "interpretation-negative": "#e53935",
    inquiry: "#1e88e5",
    "experience-sharing": "#fb8c00",
    "concept-noting": "#8e24aa",
    "supplementary-knowledge": "#00897b",
};
export const CATEGORY_LABELS = {
    "interpretation-positive": "interpretation +",
    "interpretation-neutral": "interpretation o",
    "interpretation-negative": "interpretation -",
    inquiry: "inquiry",
    "experience-sharing": "experience",
    "concept-noting": "concept",
    "supplementary-knowledge": "supplementary",
};
