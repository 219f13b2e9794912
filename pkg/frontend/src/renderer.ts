/**
 * Pure scene builder: ClientView -> ordered draw ops. The canvas adapter
 * executes ops; tests snapshot them. Keeping this pure gives the golden
 * render fixtures and makes live view and replay share one code path.
 */

import { ItemView, OrderUpdateFrame, parseCell, StateView } from "./protocol.js";
import { ClientView } from "./view.js";

export const TILE = 48; // px per grid cell

export type DrawOp =
  | { op: "clear"; w: number; h: number }
  | { op: "tile"; x: number; y: number; kind: string }
  | { op: "item"; x: number; y: number; icon: string; label: string }
  | { op: "chef"; x: number; y: number; who: "agent" | "human"; facing: string;
      held: string | null }
  | { op: "fire"; x: number; y: number }
  | { op: "bar"; x: number; y: number; w: number; frac: number; color: string }
  | { op: "orderCard"; slot: number; kind: string; frac: number }
  | { op: "text"; x: number; y: number; text: string; size: number }
  | { op: "banner"; text: string };

const TILE_COLORS: Record<string, string> = {
  floor: "#d8cfc0",
  counter: "#8a7f70",
  center_counter: "#a4937d",
  pan: "#4a4a55",
  cutboard: "#b98d5a",
  bread: "#e0b648",
  beef: "#b4554f",
  lettuce: "#6aa84f",
  plate: "#cfd8dc",
  serve: "#5b7fa6",
  extinguisher: "#c0392b",
};

export function tileColor(kind: string): string {
  return TILE_COLORS[kind] ?? "#ff00ff";
}

export function itemIcon(item: ItemView): string {
  switch (item.type) {
    case "bread":
      return "bread";
    case "lettuce":
      return (item.chop_progress ?? 0) > 0 ? "lettuce_chopped" : "lettuce";
    case "beef":
      return `beef_${item.state}`;
    case "extinguisher":
      return "extinguisher";
    case "plate":
      if (item.burger) return `burger_${item.burger}`;
      if (item.garbage_id != null) return "plate_burnt";
      return (item.entries?.length ?? 0) > 0 ? "plate_partial" : "plate";
  }
}

export function itemLabel(item: ItemView): string {
  if (item.type === "plate") {
    if (item.burger) return item.burger;
    const parts = (item.entries ?? []).map(([ingredient]) => ingredient);
    if (item.garbage_id != null) parts.push("burnt");
    return parts.join("+") || "plate";
  }
  return itemIcon(item);
}

export function render(view: ClientView): DrawOp[] {
  const ops: DrawOp[] = [];
  const layout = view.layout;
  if (!layout || !view.state) {
    ops.push({ op: "banner", text: "waiting for server state" });
    return ops;
  }
  const state = view.state;
  ops.push({ op: "clear", w: layout.width * TILE, h: layout.height * TILE });

  for (let r = 0; r < layout.height; r++) {
    for (let c = 0; c < layout.width; c++) {
      ops.push({ op: "tile", x: c, y: r, kind: layout.tiles[r][c] });
    }
  }

  // docked extinguishers read as station contents
  for (const [key, docked] of Object.entries(state.extinguisher_docks).sort()) {
    if (docked) {
      const [r, c] = parseCell(key);
      ops.push({ op: "item", x: c, y: r, icon: "extinguisher", label: "extinguisher" });
    }
  }
  for (const [key, item] of Object.entries(state.counters).sort()) {
    const [r, c] = parseCell(key);
    ops.push({ op: "item", x: c, y: r, icon: itemIcon(item), label: itemLabel(item) });
  }
  for (const [key, lettuce] of Object.entries(state.cutboards).sort()) {
    if (lettuce) {
      const [r, c] = parseCell(key);
      ops.push({ op: "item", x: c, y: r, icon: itemIcon(lettuce), label: itemLabel(lettuce) });
    }
  }
  for (const [key, pan] of Object.entries(state.pans).sort()) {
    const [r, c] = parseCell(key);
    if (pan.beef) {
      ops.push({ op: "item", x: c, y: r, icon: itemIcon(pan.beef), label: itemLabel(pan.beef) });
    }
    if (pan.on_fire) {
      ops.push({ op: "fire", x: c, y: r });
    }
  }

  for (const who of ["agent", "human"] as const) {
    const chef = state.chefs[who];
    ops.push({
      op: "chef",
      x: chef.position[1],
      y: chef.position[0],
      who,
      facing: chef.facing,
      held: chef.held ? itemLabel(chef.held) : null,
    });
  }

  ops.push(...progressOps(state, view.progress));

  view.state.orders.forEach((order, slot) => {
    const update = view.progress?.orders.find((o) => o.id === order.id);
    const total = Math.max(1, order.deadline_tick - order.created_tick);
    const frac = update ? update.frac
      : Math.max(0, order.deadline_tick - state.tick) / total;
    ops.push({ op: "orderCard", slot, kind: order.kind, frac });
  });

  ops.push({ op: "text", x: 0, y: -1, text: `score ${state.score}`, size: 20 });
  ops.push({
    op: "text", x: 6, y: -1, size: 16,
    text: `tick ${state.tick}/${view.episodeTicks}`,
  });

  if (view.phase === "countdown" && view.countdown !== null && view.countdown > 0) {
    ops.push({ op: "banner", text: `starting in ${view.countdown}` });
  }
  if (view.phase === "over" && view.finalScore !== null) {
    ops.push({ op: "banner", text: `game over — final score ${view.finalScore}` });
  }
  return ops;
}

function progressOps(state: StateView, progress: OrderUpdateFrame | null): DrawOp[] {
  const ops: DrawOp[] = [];
  if (!progress) return ops;
  for (const cook of progress.cook) {
    if (cook.phase === "empty") continue;
    const color = cook.phase === "cooking" ? "#f2a33c"
      : cook.phase === "well_done" ? "#d9534f" : "#555555";
    ops.push({ op: "bar", x: cook.cell[1], y: cook.cell[0], w: 1, frac: cook.frac, color });
    if (cook.on_fire && cook.extinguish_frac !== undefined) {
      ops.push({ op: "bar", x: cook.cell[1], y: cook.cell[0], w: 1,
                 frac: cook.extinguish_frac, color: "#4fc3f7" });
    }
  }
  for (const chop of progress.chop) {
    ops.push({ op: "bar", x: chop.cell[1], y: chop.cell[0], w: 1, frac: chop.frac,
               color: "#8bc34a" });
  }
  return ops;
}
