import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import {
  defaultLayout,
  LayoutSaver,
  parseLayout,
  serializeLayout,
  TabLayout,
} from "../src/layout.js";

function layoutWith(rows: number): TabLayout {
  const layout = defaultLayout();
  layout.tabs[0].views[0].rows = rows;
  return layout;
}

describe("layout serialization", () => {
  it("round-trips the default layout", () => {
    const layout = defaultLayout();
    expect(parseLayout(serializeLayout(layout))).toEqual(layout);
  });

  it("rejects unknown view kinds and malformed documents", () => {
    expect(parseLayout("{nope")).toBeNull();
    expect(parseLayout('{"tabs": "x"}')).toBeNull();
    expect(
      parseLayout('{"tabs":[{"name":"Classes","views":[{"kind":"Teleporter"}]}]}'),
    ).toBeNull();
  });
});

describe("LayoutSaver", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("saves exactly once after the quiet period", async () => {
    const puts: string[] = [];
    const saver = new LayoutSaver(async (doc) => void puts.push(doc));
    saver.change(layoutWith(3));
    expect(puts).toHaveLength(0);
    await vi.advanceTimersByTimeAsync(1999);
    expect(puts).toHaveLength(0);
    await vi.advanceTimersByTimeAsync(1);
    expect(puts).toHaveLength(1);
  });

  it("coalesces rapid edits into one save carrying the final state", async () => {
    const puts: string[] = [];
    const saver = new LayoutSaver(async (doc) => void puts.push(doc));
    for (let i = 1; i <= 5; i++) {
      saver.change(layoutWith(i));
      await vi.advanceTimersByTimeAsync(300);
    }
    await vi.advanceTimersByTimeAsync(2000);
    expect(puts).toHaveLength(1);
    expect(parseLayout(puts[0])!.tabs[0].views[0].rows).toBe(5);
  });

  it("retries with backoff on failure and keeps the document", async () => {
    let failures = 2;
    const puts: string[] = [];
    const saver = new LayoutSaver(async (doc) => {
      if (failures > 0) {
        failures -= 1;
        throw new Error("offline");
      }
      puts.push(doc);
    });
    saver.change(layoutWith(7));
    await vi.advanceTimersByTimeAsync(2000); // first attempt fails
    expect(puts).toHaveLength(0);
    await vi.advanceTimersByTimeAsync(1000); // retry #1 fails
    expect(puts).toHaveLength(0);
    await vi.advanceTimersByTimeAsync(5000); // retry #2 succeeds
    expect(puts).toHaveLength(1);
    expect(parseLayout(puts[0])!.tabs[0].views[0].rows).toBe(7);
  });

  it("a change landing during an in-flight save is saved afterwards", async () => {
    const puts: string[] = [];
    let resolveFirst: (() => void) | null = null;
    const saver = new LayoutSaver(async (doc) => {
      puts.push(doc);
      if (puts.length === 1) {
        await new Promise<void>((resolve) => (resolveFirst = resolve));
      }
    });
    saver.change(layoutWith(1));
    await vi.advanceTimersByTimeAsync(2000); // first save starts, hangs
    saver.change(layoutWith(2));
    resolveFirst!();
    await vi.advanceTimersByTimeAsync(2000);
    expect(puts).toHaveLength(2);
    expect(parseLayout(puts[1])!.tabs[0].views[0].rows).toBe(2);
  });
});
