/** Event-stream subscription with automatic reconnect.
 *
 * One connection per open project. On drop, the stream reconnects with
 * `since=<last revision seen>` so missed revision envelopes replay; the
 * store's duplicate detection absorbs anything delivered twice.
 */

import { EventEnvelope } from "./types.js";

export interface EventSourceLike {
  onmessage: ((event: { data: string }) => void) | null;
  onerror: ((event: unknown) => void) | null;
  close(): void;
}

export type EventSourceFactory = (url: string) => EventSourceLike;

const defaultFactory: EventSourceFactory = (url) =>
  new EventSource(url) as unknown as EventSourceLike;

export class ProjectEventStream {
  private source: EventSourceLike | null = null;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;
  private closed = false;
  connectCount = 0;

  constructor(
    private readonly urlFor: (since: number) => string,
    private readonly sinceProvider: () => number,
    private readonly onEnvelope: (envelope: EventEnvelope) => void,
    private readonly factory: EventSourceFactory = defaultFactory,
    private readonly reconnectDelayMs = 1000,
  ) {}

  start() {
    if (this.closed) return;
    this.connectCount += 1;
    this.source = this.factory(this.urlFor(this.sinceProvider()));
    this.source.onmessage = (event) => {
      try {
        this.onEnvelope(JSON.parse(event.data) as EventEnvelope);
      } catch (error) {
        console.warn("undecodable event payload", error);
      }
    };
    this.source.onerror = () => {
      this.source?.close();
      this.source = null;
      if (!this.closed && this.reconnectTimer === null) {
        this.reconnectTimer = setTimeout(() => {
          this.reconnectTimer = null;
          this.start();
        }, this.reconnectDelayMs);
      }
    };
  }

  close() {
    this.closed = true;
    if (this.reconnectTimer !== null) clearTimeout(this.reconnectTimer);
    this.source?.close();
    this.source = null;
  }
}
