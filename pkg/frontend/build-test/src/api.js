/** Typed client for the bundle API.
 *
 * Every logical view (wordstream, danmaku, graph, ...) keys its requests
 * with a sequence number; a response that arrives after a newer request was
 * issued for the same key resolves to null and must be ignored by the
 * caller. That keeps fast interactions (zooming, scrubbing) from applying
 * stale data out of order.
 */
export class ApiError extends Error {
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
export class ApiClient {
    constructor(base = "", fetchFn = (url) => fetch(url)) {
        this.base = base;
        this.fetchFn = fetchFn;
        this.sequences = new Map();
    }
    async get(path) {
        const response = await this.fetchFn(this.base + path);
        if (!response.ok) {
            const body = (await response.json().catch(() => ({})));
            throw new ApiError(response.status, body.error ?? `HTTP ${response.status}`);
        }
        return (await response.json());
    }
    /** Sequenced fetch: resolves null when a newer request superseded this one. */
    async latest(key, path) {
        const seq = (this.sequences.get(key) ?? 0) + 1;
        this.sequences.set(key, seq);
        const payload = await this.get(path);
        return this.sequences.get(key) === seq ? payload : null;
    }
    videos() {
        return this.get("/api/videos");
    }
    sections(videoId) {
        return this.get(`/api/videos/${videoId}/sections`);
    }
    transcript(videoId, from, to) {
        return this.get(`/api/videos/${videoId}/transcript${rangeQuery(from, to)}`);
    }
    wordstream(videoId, from, to, categories) {
        return this.latest("wordstream", `/api/videos/${videoId}/wordstream${rangeQuery(from, to, categories)}`);
    }
    danmaku(videoId, from, to, categories) {
        return this.latest("danmaku", `/api/videos/${videoId}/danmaku${rangeQuery(from, to, categories)}`);
    }
    graph(videoId, t) {
        return this.latest("graph", `/api/videos/${videoId}/graph?t=${t}`);
    }
    related(videoId, commentId) {
        return this.latest("related", `/api/videos/${videoId}/danmaku/${commentId}/related`);
    }
    explanation(videoId, commentId) {
        return this.latest("explanation", `/api/videos/${videoId}/danmaku/${commentId}/explanation`);
    }
}
function rangeQuery(from, to, categories) {
    const params = [];
    if (from !== undefined)
        params.push(`from=${from}`);
    if (to !== undefined)
        params.push(`to=${to}`);
    if (categories !== undefined)
        params.push(`categories=${categories.join(",")}`);
    return params.length ? `?${params.join("&")}` : "";
}
