import { existsSync, readFileSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { render } from "../src/renderer.js";
import { applyFrame, emptyView } from "../src/view.js";

import golden from "./golden/golden_state.json";

const here = dirname(fileURLToPath(import.meta.url));
const SNAPSHOT = join(here, "golden", "golden_render_ops.json");

function goldenView() {
  let view = applyFrame(emptyView(), {
    type: "joined", session: "t", condition: "bi", buttons_enabled: true,
    templates: {}, tick_hz: 5, episode_ticks: 500, layout: golden.layout as any,
  });
  view = applyFrame(view, { type: "countdown", seconds_left: 0 });
  view = applyFrame(view, {
    type: "state_full", tick: golden.state.tick, state: golden.state as any,
  });
  view = applyFrame(view, golden.progress as any);
  return view;
}

describe("renderer", () => {
  it("renders the golden state to a stable snapshot", () => {
    const ops = render(goldenView());
    if (!existsSync(SNAPSHOT)) {
      writeFileSync(SNAPSHOT, JSON.stringify(ops, null, 1)); // recorded at first run
    }
    const recorded = JSON.parse(readFileSync(SNAPSHOT, "utf-8"));
    expect(ops).toEqual(recorded);
  });

  it("covers every grid cell with a tile op", () => {
    const ops = render(goldenView());
    const tiles = ops.filter((op) => op.op === "tile");
    expect(tiles.length).toBe(golden.layout.width * golden.layout.height);
  });

  it("draws both chefs with their held items", () => {
    const ops = render(goldenView());
    const chefs = ops.filter((op) => op.op === "chef") as any[];
    expect(chefs.map((c) => c.who).sort()).toEqual(["agent", "human"]);
    for (const chef of chefs) {
      const source = golden.state.chefs[chef.who as "agent" | "human"];
      expect([chef.y, chef.x]).toEqual(source.position);
    }
  });

  it("shows a fire overlay on burning pans", () => {
    const view = goldenView();
    const burning = {
      ...view,
      state: {
        ...view.state!,
        pans: {
          "0,5": { beef: { type: "beef", id: 1, state: "overcooked", ticks: 0 },
                   on_fire: true, extinguish_progress: 0, last_extinguish_tick: -2 },
        },
      },
    } as any;
    const ops = render(burning);
    const fires = ops.filter((op) => op.op === "fire") as any[];
    expect(fires).toEqual([{ op: "fire", x: 5, y: 0 }]);
  });

  it("order countdown bars reflect remaining lifetime linearly", () => {
    const view = goldenView();
    const state = view.state!;
    const order = { id: 99, kind: "BeefBurger", created_tick: state.tick - 75,
                    deadline_tick: state.tick + 75 };
    const half = {
      ...view,
      progress: null,
      state: { ...state, orders: [order] },
    } as any;
    const ops = render(half);
    const cards = ops.filter((op) => op.op === "orderCard") as any[];
    expect(cards.length).toBe(1);
    expect(cards[0].frac).toBeCloseTo(0.5, 5);
  });

  it("renders a waiting banner before any state arrives", () => {
    const ops = render(emptyView());
    expect(ops).toEqual([{ op: "banner", text: "waiting for server state" }]);
  });

  it("score and tick are printed from server truth only", () => {
    const ops = render(goldenView());
    const texts = ops.filter((op) => op.op === "text") as any[];
    expect(texts.some((t) => t.text === `score ${golden.state.score}`)).toBe(true);
    expect(texts.some((t) => t.text.startsWith(`tick ${golden.state.tick}`))).toBe(true);
  });
});
