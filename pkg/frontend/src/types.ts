/** Payload shapes of the bundle API, mirrored from the server's JSON. */

export const CATEGORIES = [
  "interpretation-positive",
  "interpretation-neutral",
  "interpretation-negative",
  "inquiry",
  "experience-sharing",
  "concept-noting",
  "supplementary-knowledge",
] as const;

export type Category = (typeof CATEGORIES)[number];

export const CATEGORY_COLORS: Record<Category, string> = {
  "interpretation-positive": "#4caf50",
  "interpretation-neutral": "#9e9e9e",
  "interpretation-negative": "#e53935",
  inquiry: "#1e88e5",
  "experience-sharing": "#fb8c00",
  "concept-noting": "#8e24aa",
  "supplementary-knowledge": "#00897b",
};

export const CATEGORY_LABELS: Record<Category, string> = {
  "interpretation-positive": "interpretation +",
  "interpretation-neutral": "interpretation o",
  "interpretation-negative": "interpretation -",
  inquiry: "inquiry",
  "experience-sharing": "experience",
  "concept-noting": "concept",
  "supplementary-knowledge": "supplementary",
};

export interface VideoSummary {
  video_id: string;
  title: string;
  duration: number;
}

export interface Section {
  index: number;
  start: number;
  end: number;
  summary: string;
  first_line: number;
  last_line: number;
}

export interface TranscriptLine {
  index: number;
  start: number;
  end: number;
  text: string;
}

export interface Band {
  category: Category;
  xs: number[];
  bottoms: number[];
  tops: number[];
}

export interface KeywordBox {
  token: string;
  x: number;
  y: number;
  font: number;
  category: Category;
}

export interface Layout {
  width: number;
  height: number;
  t_from: number;
  t_to: number;
  bands: Band[];
  boxes: KeywordBox[];
}

export interface StreamBucket {
  t_start: number;
  width: number;
  counts: Record<string, number>;
  keywords: Record<string, [string, number][]>;
}

export interface WordstreamResponse {
  buckets: StreamBucket[];
  layout: Layout;
}

export interface DanmakuRow {
  cluster_id: number;
  category: Category;
  size: number;
  window_id: number;
  representative: { id: string; t: number; text: string };
  scroll: { duration_s: number; font_scale: number; badge: number | null };
}

export interface GraphEntity {
  id: string;
  label: string;
  salience: number;
  hub: boolean;
}

export interface GraphResponse {
  window: { index: number; start: number; end: number };
  entities: GraphEntity[];
  relations: { source: string; predicate: string; target: string }[];
  danmaku_nodes: { id: string; cluster_id: number; category: Category }[];
  attachments: { danmaku: string; entity: string; score: number }[];
}

export interface RelatedResponse {
  comment_id: string;
  related: { id: string; t: number; text: string; cosine: number; category: Category }[];
}

export interface ExplanationResponse {
  comment_id: string;
  entity: string | null;
  text: string;
  "offline-stub": boolean;
}
