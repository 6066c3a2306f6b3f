/** Viewer bootstrap: wires the state machine, the API client, the player,
 * and the per-mode renderers together. All data flows one way: player/UI
 * events -> reducer -> fetch what the new state needs -> render.
 */

import { ApiClient } from "./api.js";
import { OverlayScheduler } from "./overlay.js";
import { HeadlessPlayer, Player, VideoElementPlayer } from "./player.js";
import { Action, ModeState, initialState, reduce } from "./state.js";
import {
  CATEGORIES,
  CATEGORY_COLORS,
  CATEGORY_LABELS,
  Category,
  DanmakuRow,
  GraphResponse,
  Section,
  TranscriptLine,
  VideoSummary,
  WordstreamResponse,
} from "./types.js";
import { listRows, simplifyLayout, visibleGraph } from "./viewmodels.js";
import { renderGraph } from "./render/graph.js";
import { renderOverlay } from "./render/overlaydom.js";
import { renderSections } from "./render/sections.js";
import { renderExplanation, renderList, renderRelated } from "./render/sideview.js";
import { renderWordstream } from "./render/wordstream.js";

const BASE_FONT_PX = 18;
const LANE_HEIGHT_PX = 26;

class ViewerApp {
  private api = new ApiClient();
  private state: ModeState = initialState();
  private player!: Player;
  private scheduler!: OverlayScheduler;

  private video: VideoSummary | null = null;
  private sections: Section[] = [];
  private transcript: TranscriptLine[] = [];
  private danmaku: DanmakuRow[] = [];
  private wordstream: WordstreamResponse | null = null;
  private graph: GraphResponse | null = null;
  private zoomedSection: Section | null = null;

  private el = {
    videoSelect: document.getElementById("video-select") as HTMLSelectElement,
    modeTabs: document.getElementById("mode-tabs") as HTMLElement,
    legend: document.getElementById("legend") as HTMLElement,
    player: document.getElementById("player") as HTMLVideoElement,
    playerPane: document.getElementById("player-pane") as HTMLElement,
    overlay: document.getElementById("overlay") as HTMLElement,
    sections: document.getElementById("sections") as HTMLElement,
    wordstream: document.getElementById("wordstream") as HTMLElement,
    graph: document.getElementById("graph") as HTMLElement,
    list: document.getElementById("subtitle-danmaku-list") as HTMLElement,
    related: document.getElementById("related") as HTMLElement,
    explanation: document.getElementById("explanation") as HTMLElement,
    banner: document.getElementById("banner") as HTMLElement,
    controls: document.getElementById("controls") as HTMLElement,
    divider: document.getElementById("divider") as HTMLElement,
    main: document.getElementById("main") as HTMLElement,
  };

  async start(): Promise<void> {
    this.buildLegend();
    this.buildModeTabs();
    this.buildControls();
    this.buildDivider();
    try {
      const videos = await this.api.videos();
      this.el.videoSelect.replaceChildren(
        ...videos.map((video) => {
          const option = document.createElement("option");
          option.value = video.video_id;
          option.textContent = `${video.title} (${Math.round(video.duration)}s)`;
          return option;
        }),
      );
      this.el.videoSelect.addEventListener("change", () => void this.loadVideo(this.el.videoSelect.value));
      if (videos.length > 0) {
        await this.loadVideo(videos[0].video_id);
      }
    } catch (error) {
      this.showBanner(`cannot reach the bundle API: ${String(error)}`);
    }
  }

  private dispatch(action: Action): void {
    const before = this.state;
    this.state = reduce(this.state, action);
    if (action.kind === "mode" && this.state.mode === "exploration" && this.player?.playing) {
      this.player.pause(); // Exploration implies a paused player
    }
    if (before.mode !== this.state.mode || action.kind !== "mode") {
      this.render();
    }
    if (action.kind === "mode" && this.state.mode === "exploration") {
      void this.fetchGraph();
    }
    if (action.kind === "set-zoom") {
      void this.fetchWordstream();
    }
    if (action.kind === "select" && this.state.selected) {
      void this.fetchDetails(this.state.selected);
    }
  }

  private async loadVideo(videoId: string): Promise<void> {
    const videos = await this.api.videos();
    this.video = videos.find((v) => v.video_id === videoId) ?? null;
    if (!this.video) return;
    this.dispatch({ kind: "mode", event: { kind: "load" } });
    this.dispatch({ kind: "set-zoom", zoom: null });

    // A real media file can be attached to the <video> element; without one
    // the headless clock drives the same event stream.
    if (this.el.player.dataset.src) {
      this.el.player.src = this.el.player.dataset.src;
      this.player = new VideoElementPlayer(this.el.player, this.playerEvents());
    } else {
      const headless = new HeadlessPlayer(this.video.duration, this.playerEvents());
      this.player = headless;
      let last = performance.now();
      const pump = (now: number) => {
        headless.tick((now - last) / 1000);
        last = now;
        requestAnimationFrame(pump);
      };
      requestAnimationFrame(pump);
    }

    this.scheduler = new OverlayScheduler(this.el.playerPane.clientWidth || 800, BASE_FONT_PX);
    try {
      [this.sections, this.transcript] = await Promise.all([
        this.api.sections(videoId),
        this.api.transcript(videoId),
      ]);
      const rows = await this.api.danmaku(videoId);
      if (rows) {
        this.danmaku = rows;
        this.scheduler.load(rows);
      }
      await this.fetchWordstream();
    } catch (error) {
      this.showBanner(String(error));
    }
    this.render();
  }

  private playerEvents() {
    return {
      onPlay: () => this.dispatch({ kind: "mode", event: { kind: "play" } }),
      onPause: () => this.dispatch({ kind: "mode", event: { kind: "pause" } }),
      onSeek: (t: number) => this.scheduler?.seek(t),
      onTime: (t: number) => this.onTime(t),
    };
  }

  private onTime(t: number): void {
    if (this.state.mode === "focused" && this.scheduler) {
      renderOverlay(this.el.overlay, this.scheduler.tick(t, this.state.filter), BASE_FONT_PX, LANE_HEIGHT_PX);
    }
    const timeLabel = document.getElementById("time-label");
    if (timeLabel) {
      timeLabel.textContent = `${t.toFixed(1)}s`;
    }
    this.highlightListRow(t);
  }

  private highlightListRow(t: number): void {
    const current = this.el.list.querySelector(".current");
    const next = [...this.el.list.querySelectorAll<HTMLElement>(".list-subtitle")].find((el) => {
      const line = this.transcript[Number(el.dataset.index ?? -1)];
      return line && line.start <= t && t < line.end;
    });
    if (next && next !== current) {
      current?.classList.remove("current");
      next.classList.add("current");
      next.scrollIntoView({ block: "center", behavior: "smooth" });
    }
  }

  private async fetchWordstream(): Promise<void> {
    if (!this.video) return;
    try {
      const zoom = this.state.zoom ?? undefined;
      const payload = await this.api.wordstream(this.video.video_id, zoom?.from, zoom?.to);
      if (payload) {
        this.wordstream = payload;
        this.render();
      }
    } catch (error) {
      this.showBanner(String(error));
    }
  }

  private async fetchGraph(): Promise<void> {
    if (!this.video) return;
    try {
      const payload = await this.api.graph(this.video.video_id, this.player.currentTime);
      if (payload) {
        this.graph = payload;
        this.render();
      }
    } catch (error) {
      this.showBanner(String(error));
    }
  }

  private async fetchDetails(commentId: string): Promise<void> {
    if (!this.video) return;
    try {
      const [related, explanation] = await Promise.all([
        this.api.related(this.video.video_id, commentId),
        this.api.explanation(this.video.video_id, commentId),
      ]);
      if (related) renderRelated(this.el.related, related);
      if (explanation) renderExplanation(this.el.explanation, explanation);
    } catch (error) {
      this.showBanner(String(error));
    }
  }

  private render(): void {
    document.body.dataset.mode = this.state.mode;
    this.el.modeTabs.querySelectorAll<HTMLButtonElement>("button").forEach((button) => {
      button.classList.toggle("active", button.dataset.mode === this.state.mode);
    });
    this.el.legend.querySelectorAll<HTMLInputElement>("input").forEach((input) => {
      input.checked = this.state.filter.has(input.value as Category);
    });

    if (this.video) {
      renderSections(this.el.sections, this.sections, this.video.duration, this.zoomedSection, this.player?.currentTime ?? 0, {
        onSectionClick: (section) => {
          this.zoomedSection = this.zoomedSection?.index === section.index ? null : section;
          this.dispatch({
            kind: "set-zoom",
            zoom: this.zoomedSection ? { from: this.zoomedSection.start, to: this.zoomedSection.end } : null,
          });
        },
        transcriptAt: (t) => this.transcript.find((line) => line.start <= t && t < line.end),
      });
    }

    if (this.wordstream) {
      const layout = this.state.mode === "focused" ? simplifyLayout(this.wordstream.layout, 48) : this.wordstream.layout;
      renderWordstream(this.el.wordstream, layout, this.state.filter, {
        onKeywordClick: (token, category) => this.showKeyword(token, category),
        onTimeClick: (t) => this.player?.seek(t),
      });
    }

    if (this.state.mode === "exploration" && this.graph) {
      renderGraph(this.el.graph, visibleGraph(this.graph, this.state.filter), { width: 900, height: 420 }, {
        onDanmakuClick: (clusterId) => {
          const row = this.danmaku.find((r) => r.cluster_id === clusterId);
          if (row) this.dispatch({ kind: "select", commentId: row.representative.id });
        },
      });
    }

    renderList(this.el.list, listRows(this.transcript, this.danmaku, this.state.filter), this.player?.currentTime ?? 0, {
      onDanmakuClick: (commentId) => this.dispatch({ kind: "select", commentId }),
      onSeek: (t) => this.player?.seek(t),
    });
    this.el.list.querySelectorAll<HTMLElement>(".list-subtitle").forEach((el, i) => {
      el.dataset.index = String(i);
    });

    if (this.state.mode === "focused" && this.scheduler) {
      renderOverlay(this.el.overlay, this.scheduler.tick(this.player?.currentTime ?? 0, this.state.filter), BASE_FONT_PX, LANE_HEIGHT_PX);
    } else {
      this.el.overlay.replaceChildren();
    }
  }

  private showKeyword(token: string, category: Category): void {
    const matches = this.danmaku.filter(
      (row) => row.category === category && row.representative.text.toLowerCase().includes(token.toLowerCase()),
    );
    this.el.related.replaceChildren();
    const heading = document.createElement("h3");
    heading.textContent = `keyword: ${token}`;
    this.el.related.appendChild(heading);
    for (const row of matches.slice(0, 20)) {
      const div = document.createElement("div");
      div.classList.add("related-row");
      div.style.borderInlineStartColor = CATEGORY_COLORS[category];
      div.textContent = row.representative.text;
      div.addEventListener("click", () => this.dispatch({ kind: "select", commentId: row.representative.id }));
      this.el.related.appendChild(div);
    }
  }

  private buildLegend(): void {
    this.el.legend.replaceChildren(
      ...CATEGORIES.map((category) => {
        const label = document.createElement("label");
        label.classList.add("legend-item");
        const input = document.createElement("input");
        input.type = "checkbox";
        input.checked = true;
        input.value = category;
        input.addEventListener("change", () => this.dispatch({ kind: "toggle-category", category }));
        const swatch = document.createElement("span");
        swatch.classList.add("swatch");
        swatch.style.background = CATEGORY_COLORS[category];
        label.append(input, swatch, CATEGORY_LABELS[category]);
        return label;
      }),
    );
  }

  private buildModeTabs(): void {
    const modes: { mode: ModeState["mode"]; label: string }[] = [
      { mode: "overview", label: "Overview" },
      { mode: "focused", label: "Focused" },
      { mode: "exploration", label: "Exploration" },
    ];
    this.el.modeTabs.replaceChildren(
      ...modes.map(({ mode, label }) => {
        const button = document.createElement("button");
        button.dataset.mode = mode;
        button.textContent = label;
        button.addEventListener("click", () => this.dispatch({ kind: "mode", event: { kind: "manual", mode } }));
        return button;
      }),
    );
  }

  private buildControls(): void {
    const play = document.createElement("button");
    play.textContent = "play";
    play.addEventListener("click", () => this.player?.play());
    const pause = document.createElement("button");
    pause.textContent = "pause";
    pause.addEventListener("click", () => this.player?.pause());
    const back = document.createElement("button");
    back.textContent = "-10s";
    back.addEventListener("click", () => this.player?.seek(this.player.currentTime - 10));
    const fwd = document.createElement("button");
    fwd.textContent = "+10s";
    fwd.addEventListener("click", () => this.player?.seek(this.player.currentTime + 10));
    const time = document.createElement("span");
    time.id = "time-label";
    time.textContent = "0.0s";
    this.el.controls.replaceChildren(play, pause, back, fwd, time);
  }

  private buildDivider(): void {
    let dragging = false;
    this.el.divider.addEventListener("pointerdown", () => {
      dragging = true;
    });
    window.addEventListener("pointerup", () => {
      dragging = false;
    });
    window.addEventListener("pointermove", (event) => {
      if (!dragging) return;
      const rect = this.el.main.getBoundingClientRect();
      const frac = Math.min(0.8, Math.max(0.35, (event.clientX - rect.left) / rect.width));
      this.el.main.style.gridTemplateColumns = `${(frac * 100).toFixed(1)}% 6px 1fr`;
    });
  }

  private showBanner(message: string): void {
    this.el.banner.textContent = message;
    this.el.banner.classList.add("visible");
    window.setTimeout(() => this.el.banner.classList.remove("visible"), 6000);
  }
}

if (typeof document !== "undefined" && document.getElementById("main")) {
  void new ViewerApp().start();
}
