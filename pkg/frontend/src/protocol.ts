/**
 * Wire protocol types, mirroring docs/protocol.md on the server side.
 * The client renders server truth only: no scores, timers, or legality
 * are ever computed here.
 */

export type Condition = "bi" | "human_only" | "agent_only" | "none";

export interface ItemView {
  type: "bread" | "lettuce" | "beef" | "plate" | "extinguisher";
  id: number;
  chop_progress?: number;
  state?: string;
  ticks?: number;
  entries?: [string, number][];
  garbage_id?: number | null;
  burger?: string | null;
}

export interface ChefView {
  position: [number, number];
  facing: "up" | "down" | "left" | "right";
  held: ItemView | null;
}

export interface PanView {
  beef: ItemView | null;
  on_fire: boolean;
  extinguish_progress: number;
  last_extinguish_tick: number;
}

export interface OrderView {
  id: number;
  kind: string;
  created_tick: number;
  deadline_tick: number;
}

export interface StateView {
  tick: number;
  score: number;
  chefs: { agent: ChefView; human: ChefView };
  pans: Record<string, PanView>;
  cutboards: Record<string, ItemView | null>;
  counters: Record<string, ItemView>;
  extinguisher_docks: Record<string, boolean>;
  orders: OrderView[];
}

export interface LayoutView {
  width: number;
  height: number;
  tiles: string[][];
  spawns: [number, number][];
}

export interface OrderProgress {
  id: number;
  kind: string;
  remaining: number;
  total: number;
  frac: number;
}

export interface CookProgress {
  cell: [number, number];
  phase: string;
  frac: number;
  on_fire: boolean;
  extinguish_frac?: number;
}

export interface ChopProgress {
  cell: [number, number];
  frac: number;
}

export interface OrderUpdateFrame {
  type: "order_update";
  tick: number;
  orders: OrderProgress[];
  cook: CookProgress[];
  chop: ChopProgress[];
}

export interface ChatEntry {
  tick: number;
  sender: "agent" | "human";
  text: string;
}

// server -> client
export type ServerFrame =
  | { type: "joined"; session: string; condition: Condition; buttons_enabled: boolean;
      templates: Record<string, string>; tick_hz: number; episode_ticks: number;
      layout: LayoutView }
  | { type: "countdown"; seconds_left: number }
  | { type: "state_full"; tick: number; state: StateView }
  | { type: "state_delta"; tick: number; changes: Partial<StateView> }
  | OrderUpdateFrame
  | { type: "message"; sender: "agent" | "human"; text: string; tick: number;
      template_id?: number }
  | { type: "score"; tick: number; score: number }
  | { type: "game_over"; final_score: number; report: unknown; log_file: string }
  | { type: "error"; code: string; detail?: string }
  | { type: "replay_joined"; verified: boolean; ticks: number; tick_hz: number;
      final_score: number; chat: ChatEntry[]; layout: LayoutView }
  | { type: "replay_done"; final_score: number };

// client -> server
export type ClientFrame =
  | { type: "join"; session?: string; seed?: number; comm?: Condition; tom?: boolean;
      mode?: "replay"; log?: string }
  | { type: "key"; action: "up" | "down" | "left" | "right" | "interact" }
  | { type: "button"; template_id: number }
  | { type: "replay_ctl"; cmd: "play" | "pause" | "seek"; tick?: number };

export function parseCell(key: string): [number, number] {
  const [r, c] = key.split(",");
  return [parseInt(r, 10), parseInt(c, 10)];
}
