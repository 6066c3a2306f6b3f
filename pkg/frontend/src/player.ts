/** Player abstraction: the viewer only consumes time/play/pause events, so
 * it works with a real <video> element, any local media file, or a
 * timer-driven headless player in tests.
 */

export interface PlayerEvents {
  onPlay?: () => void;
  onPause?: () => void;
  onTime?: (t: number) => void;
  onSeek?: (t: number) => void;
}

export interface Player {
  readonly currentTime: number;
  readonly playing: boolean;
  play(): void;
  pause(): void;
  seek(t: number): void;
}

export class VideoElementPlayer implements Player {
  constructor(
    private video: HTMLVideoElement,
    private events: PlayerEvents,
  ) {
    video.addEventListener("play", () => this.events.onPlay?.());
    video.addEventListener("pause", () => this.events.onPause?.());
    video.addEventListener("seeked", () => this.events.onSeek?.(video.currentTime));
    const pump = () => {
      this.events.onTime?.(video.currentTime);
      requestAnimationFrame(pump);
    };
    requestAnimationFrame(pump);
  }

  get currentTime(): number {
    return this.video.currentTime;
  }

  get playing(): boolean {
    return !this.video.paused;
  }

  play(): void {
    void this.video.play();
  }

  pause(): void {
    this.video.pause();
  }

  seek(t: number): void {
    this.video.currentTime = t;
  }
}

/** Clock-driven stand-in: drive it with tick() from a timer or a test. */
export class HeadlessPlayer implements Player {
  private t = 0;
  private isPlaying = false;

  constructor(
    public duration: number,
    private events: PlayerEvents = {},
  ) {}

  get currentTime(): number {
    return this.t;
  }

  get playing(): boolean {
    return this.isPlaying;
  }

  play(): void {
    if (!this.isPlaying) {
      this.isPlaying = true;
      this.events.onPlay?.();
    }
  }

  pause(): void {
    if (this.isPlaying) {
      this.isPlaying = false;
      this.events.onPause?.();
    }
  }

  seek(t: number): void {
    this.t = Math.max(0, Math.min(this.duration, t));
    this.events.onSeek?.(this.t);
    this.events.onTime?.(this.t);
  }

  /** Advance the clock by dt seconds while playing. */
  tick(dt: number): void {
    if (this.isPlaying) {
      this.t = Math.min(this.duration, this.t + dt);
      this.events.onTime?.(this.t);
      if (this.t >= this.duration) {
        this.pause();
      }
    }
  }
}
