/** Player abstraction: the viewer only consumes time/play/pause events, so
 * it works with a real <video> element, any local media file, or a
 * timer-driven headless player in tests.
 */
export class VideoElementPlayer {
    constructor(video, events) {
        this.video = video;
        this.events = events;
        video.addEventListener("play", () => this.events.onPlay?.());
        video.addEventListener("pause", () => this.events.onPause?.());
        video.addEventListener("seeked", () => this.events.onSeek?.(video.currentTime));
        const pump = () => {
            this.events.onTime?.(video.currentTime);
            requestAnimationFrame(pump);
        };
        requestAnimationFrame(pump);
    }
    get currentTime() {
        return this.video.currentTime;
    }
    get playing() {
        return !this.video.paused;
    }
    play() {
        void this.video.play();
    }
    pause() {
        this.video.pause();
    }
    seek(t) {
        this.video.currentTime = t;
    }
}
/** Clock-driven stand-in: drive it with tick() from a timer or a test. */
export class HeadlessPlayer {
    constructor(duration, events = {}) {
        this.duration = duration;
        this.events = events;
        this.t = 0;
        this.isPlaying = false;
    }
    get currentTime() {
        return this.t;
    }
    get playing() {
        return this.isPlaying;
    }
    play() {
        if (!this.isPlaying) {
            this.isPlaying = true;
            this.events.onPlay?.();
        }
    }
    pause() {
        if (this.isPlaying) {
            this.isPlaying = false;
            this.events.onPause?.();
        }
    }
    seek(t) {
        this.t = Math.max(0, Math.min(this.duration, t));
        this.events.onSeek?.(this.t);
        this.events.onTime?.(this.t);
    }
    /** Advance the clock by dt seconds while playing. */
    tick(dt) {
        if (this.isPlaying) {
            this.t = Math.min(this.duration, this.t + dt);
            this.events.onTime?.(this.t);
            if (this.t >= this.duration) {
                this.pause();
            }
        }
    }
}
