/** Canvas adapter: executes draw ops. Browser-only; tests stop at the ops. */

import { DrawOp, TILE, tileColor } from "./renderer.js";

const ICON_COLORS: Record<string, string> = {
  bread: "#e8c35a",
  lettuce: "#4e7d32",
  lettuce_chopped: "#7cb342",
  beef_fresh: "#c62828",
  beef_cooking: "#a04000",
  beef_well_done: "#6d4c41",
  beef_overcooked: "#333333",
  extinguisher: "#e53935",
  plate: "#eceff1",
  plate_partial: "#cfd8dc",
  plate_burnt: "#616161",
  burger_BeefBurger: "#8d5524",
  burger_LettuceBurger: "#7cb342",
  burger_BeefLettuceBurger: "#5d4037",
};

const MARGIN_TOP = 96; // order cards + score strip above the grid

export function canvasSize(width: number, height: number): [number, number] {
  return [width * TILE, height * TILE + MARGIN_TOP];
}

export function drawOps(ctx: CanvasRenderingContext2D, ops: DrawOp[]): void {
  const px = (x: number) => x * TILE;
  const py = (y: number) => y * TILE + MARGIN_TOP;
  for (const op of ops) {
    switch (op.op) {
      case "clear":
        ctx.fillStyle = "#2b2b31";
        ctx.fillRect(0, 0, ctx.canvas.width, ctx.canvas.height);
        break;
      case "tile":
        ctx.fillStyle = tileColor(op.kind);
        ctx.fillRect(px(op.x), py(op.y), TILE - 1, TILE - 1);
        break;
      case "item": {
        ctx.fillStyle = ICON_COLORS[op.icon] ?? "#ffffff";
        ctx.beginPath();
        ctx.arc(px(op.x) + TILE / 2, py(op.y) + TILE / 2, TILE / 3.2, 0, Math.PI * 2);
        ctx.fill();
        ctx.fillStyle = "#111";
        ctx.font = "9px sans-serif";
        ctx.fillText(op.label.slice(0, 10), px(op.x) + 2, py(op.y) + TILE - 3);
        break;
      }
      case "chef": {
        ctx.fillStyle = op.who === "agent" ? "#1e64c8" : "#222222";
        ctx.fillRect(px(op.x) + 6, py(op.y) + 6, TILE - 12, TILE - 12);
        ctx.fillStyle = "#ffffff";
        const cx = px(op.x) + TILE / 2;
        const cy = py(op.y) + TILE / 2;
        const d = TILE / 2 - 7;
        const tip = op.facing === "up" ? [cx, cy - d]
          : op.facing === "down" ? [cx, cy + d]
          : op.facing === "left" ? [cx - d, cy] : [cx + d, cy];
        ctx.beginPath();
        ctx.arc(tip[0], tip[1], 4, 0, Math.PI * 2);
        ctx.fill();
        if (op.held) {
          ctx.font = "9px sans-serif";
          ctx.fillStyle = "#ffff99";
          ctx.fillText(op.held.slice(0, 12), px(op.x), py(op.y) + 4);
        }
        break;
      }
      case "fire":
        ctx.fillStyle = "rgba(255, 90, 0, 0.85)";
        ctx.beginPath();
        ctx.moveTo(px(op.x) + TILE / 2, py(op.y) + 4);
        ctx.lineTo(px(op.x) + TILE - 6, py(op.y) + TILE - 6);
        ctx.lineTo(px(op.x) + 6, py(op.y) + TILE - 6);
        ctx.closePath();
        ctx.fill();
        break;
      case "bar":
        ctx.fillStyle = "#00000088";
        ctx.fillRect(px(op.x) + 3, py(op.y) - 7, TILE - 6, 5);
        ctx.fillStyle = op.color;
        ctx.fillRect(px(op.x) + 3, py(op.y) - 7, (TILE - 6) * Math.min(1, op.frac), 5);
        break;
      case "orderCard": {
        const x = 8 + op.slot * 130;
        ctx.fillStyle = "#faf6ee";
        ctx.fillRect(x, 30, 120, 54);
        ctx.fillStyle = "#222";
        ctx.font = "12px sans-serif";
        ctx.fillText(op.kind, x + 6, 48);
        ctx.fillStyle = "#00000022";
        ctx.fillRect(x + 6, 62, 108, 8);
        ctx.fillStyle = op.frac > 0.33 ? "#58a55c" : "#d9534f";
        ctx.fillRect(x + 6, 62, 108 * Math.min(1, op.frac), 8);
        break;
      }
      case "text":
        ctx.fillStyle = "#f2f2f2";
        ctx.font = `${op.size}px sans-serif`;
        ctx.fillText(op.text, px(op.x) + 8, op.y < 0 ? 20 : py(op.y));
        break;
      case "banner": {
        ctx.fillStyle = "rgba(0,0,0,0.72)";
        ctx.fillRect(0, ctx.canvas.height / 2 - 34, ctx.canvas.width, 68);
        ctx.fillStyle = "#ffffff";
        ctx.font = "24px sans-serif";
        ctx.textAlign = "center";
        ctx.fillText(op.text, ctx.canvas.width / 2, ctx.canvas.height / 2 + 8);
        ctx.textAlign = "left";
        break;
      }
    }
  }
}
