/** Typed client for the bundle API.
 *
 * Every logical view (wordstream, danmaku, graph, ...) keys its requests
 * with a sequence number; a response that arrives after a newer request was
 * issued for the same key resolves to null and must be ignored by the
 * caller. That keeps fast interactions (zooming, scrubbing) from applying
 * stale data out of order.
 */

import {
  DanmakuRow,
  ExplanationResponse,
  GraphResponse,
  RelatedResponse,
  Section,
  TranscriptLine,
  VideoSummary,
  WordstreamResponse,
} from "./types.js";

export type FetchLike = (url: string) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  private sequences = new Map<string, number>();

  constructor(
    private base: string = "",
    private fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.base + path);
    if (!response.ok) {
      const body = (await response.json().catch(() => ({}))) as { error?: string };
      throw new ApiError(response.status, body.error ?? `HTTP ${response.status}`);
    }
    return (await response.json()) as T;
  }

  /** Sequenced fetch: resolves null when a newer request superseded this one. */
  private async latest<T>(key: string, path: string): Promise<T | null> {
    const seq = (this.sequences.get(key) ?? 0) + 1;
    this.sequences.set(key, seq);
    const payload = await this.get<T>(path);
    return this.sequences.get(key) === seq ? payload : null;
  }

  videos(): Promise<VideoSummary[]> {
    return this.get("/api/videos");
  }

  sections(videoId: string): Promise<Section[]> {
    return this.get(`/api/videos/${videoId}/sections`);
  }

  transcript(videoId: string, from?: number, to?: number): Promise<TranscriptLine[]> {
    return this.get(`/api/videos/${videoId}/transcript${rangeQuery(from, to)}`);
  }

  wordstream(videoId: string, from?: number, to?: number, categories?: string[]): Promise<WordstreamResponse | null> {
    return this.latest("wordstream", `/api/videos/${videoId}/wordstream${rangeQuery(from, to, categories)}`);
  }

  danmaku(videoId: string, from?: number, to?: number, categories?: string[]): Promise<DanmakuRow[] | null> {
    return this.latest("danmaku", `/api/videos/${videoId}/danmaku${rangeQuery(from, to, categories)}`);
  }

  graph(videoId: string, t: number): Promise<GraphResponse | null> {
    return this.latest("graph", `/api/videos/${videoId}/graph?t=${t}`);
  }

  related(videoId: string, commentId: string): Promise<RelatedResponse | null> {
    return this.latest("related", `/api/videos/${videoId}/danmaku/${commentId}/related`);
  }

  explanation(videoId: string, commentId: string): Promise<ExplanationResponse | null> {
    return this.latest("explanation", `/api/videos/${videoId}/danmaku/${commentId}/explanation`);
  }
}

function rangeQuery(from?: number, to?: number, categories?: string[]): string {
  const params: string[] = [];
  if (from !== undefined) params.push(`from=${from}`);
  if (to !== undefined) params.push(`to=${to}`);
  if (categories !== undefined) params.push(`categories=${categories.join(",")}`);
  return params.length ? `?${params.join("&")}` : "";
}
