/** Client-side project store.
 *
 * Holds only what the server sent plus envelope-driven adjustments; the
 * server stays authoritative. Badge counts equal the latest thread-count
 * snapshot plus CommentPosted envelopes applied since. Revision envelopes
 * mark the touched entity stale so a collapsed hierarchy branch refetches
 * when expanded. Duplicate revision envelopes (same number) are ignored;
 * unknown event kinds are logged and dropped.
 */

import { EntityRef, EventEnvelope, entityKey } from "./types.js";

export const FEED_LIMIT = 200;

export type StoreListener = (store: ProjectStore, envelope: EventEnvelope | null) => void;

export class ProjectStore {
  readonly projectId: string;
  lastRevision = 0;
  private seenRevisions = new Set<number>();
  private badges = new Map<string, number>();
  private stale = new Set<string>();
  feed: EventEnvelope[] = [];
  /** Bumped whenever the thread list may have changed server-side. */
  threadsVersion = 0;
  private listeners = new Set<StoreListener>();

  constructor(projectId: string, headRevision = 0) {
    this.projectId = projectId;
    this.lastRevision = headRevision;
    for (let n = 1; n <= headRevision; n++) this.seenRevisions.add(n);
  }

  subscribe(listener: StoreListener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private notify(envelope: EventEnvelope | null) {
    for (const listener of this.listeners) listener(this, envelope);
  }

  badgeCount(entity: EntityRef): number {
    return this.badges.get(entityKey(entity)) ?? 0;
  }

  /** Replace badge state from a fresh thread-count snapshot. */
  setThreadCounts(counts: Map<string, number> | Record<string, number>) {
    this.badges = new Map(
      counts instanceof Map ? counts : Object.entries(counts),
    );
    this.notify(null);
  }

  isStale(entity: EntityRef): boolean {
    return this.stale.has(entityKey(entity));
  }

  clearStale(entity: EntityRef) {
    this.stale.delete(entityKey(entity));
  }

  applyEvent(envelope: EventEnvelope): boolean {
    switch (envelope.event) {
      case "RevisionAppended": {
        const number = envelope.revisionNumber;
        if (number !== null) {
          if (this.seenRevisions.has(number)) {
            return false; // duplicate delivery, e.g. replay after reconnect
          }
          this.seenRevisions.add(number);
          this.lastRevision = Math.max(this.lastRevision, number);
        }
        if (envelope.entity) {
          this.stale.add(entityKey(envelope.entity));
        }
        this.pushFeed(envelope);
        this.notify(envelope);
        return true;
      }
      case "CommentPosted": {
        if (envelope.entity) {
          const key = entityKey(envelope.entity);
          this.badges.set(key, (this.badges.get(key) ?? 0) + 1);
        }
        this.threadsVersion += 1;
        this.pushFeed(envelope);
        this.notify(envelope);
        return true;
      }
      case "ThreadStatusChanged": {
        // direction is unknown from the envelope; the comments view refetches
        this.threadsVersion += 1;
        this.pushFeed(envelope);
        this.notify(envelope);
        return true;
      }
      default:
        console.warn("dropping unknown project event:", envelope.event);
        return false;
    }
  }

  private pushFeed(envelope: EventEnvelope) {
    this.feed.unshift(envelope);
    if (this.feed.length > FEED_LIMIT) this.feed.length = FEED_LIMIT;
  }
}
