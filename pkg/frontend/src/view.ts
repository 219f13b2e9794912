/**
 * ClientView: everything the renderer needs, folded from server frames.
 * applyFrame is a pure reducer so reconnect + full resync reproduces the
 * identical view.
 */

import {
  ChatEntry,
  Condition,
  LayoutView,
  OrderUpdateFrame,
  ServerFrame,
  StateView,
} from "./protocol.js";

export type Phase = "lobby" | "countdown" | "playing" | "over" | "replay";

export interface ClientView {
  connection: "connecting" | "live" | "closed";
  phase: Phase;
  condition: Condition | null;
  buttonsEnabled: boolean;
  templates: Record<string, string>;
  tickHz: number;
  episodeTicks: number;
  layout: LayoutView | null;
  state: StateView | null;
  progress: OrderUpdateFrame | null;
  chat: ChatEntry[];
  countdown: number | null;
  finalScore: number | null;
  replayVerified: boolean | null;
  lastError: string | null;
}

export function emptyView(): ClientView {
  return {
    connection: "connecting",
    phase: "lobby",
    condition: null,
    buttonsEnabled: false,
    templates: {},
    tickHz: 5,
    episodeTicks: 500,
    layout: null,
    state: null,
    progress: null,
    chat: [],
    countdown: null,
    finalScore: null,
    replayVerified: null,
    lastError: null,
  };
}

export function applyFrame(view: ClientView, frame: ServerFrame): ClientView {
  switch (frame.type) {
    case "joined":
      return {
        ...view,
        connection: "live",
        phase: "countdown",
        condition: frame.condition,
        buttonsEnabled: frame.buttons_enabled,
        templates: frame.templates,
        tickHz: frame.tick_hz,
        episodeTicks: frame.episode_ticks,
        layout: frame.layout,
      };
    case "replay_joined":
      return {
        ...view,
        connection: "live",
        phase: "replay",
        layout: frame.layout,
        tickHz: frame.tick_hz,
        episodeTicks: frame.ticks,
        chat: frame.chat,
        finalScore: frame.final_score,
        replayVerified: frame.verified,
      };
    case "countdown":
      return {
        ...view,
        countdown: frame.seconds_left,
        phase: frame.seconds_left > 0 ? "countdown" : "playing",
      };
    case "state_full":
      return { ...view, state: frame.state };
    case "state_delta": {
      if (view.state === null) return view; // need a full state first
      const next = { ...view.state, ...frame.changes, tick: frame.tick + 1 };
      if (frame.changes.tick !== undefined) next.tick = frame.changes.tick;
      return { ...view, state: next };
    }
    case "order_update":
      return { ...view, progress: frame };
    case "message":
      return {
        ...view,
        chat: [...view.chat, { tick: frame.tick, sender: frame.sender, text: frame.text }],
      };
    case "score":
      if (view.state === null) return view;
      return { ...view, state: { ...view.state, score: frame.score } };
    case "game_over":
      return { ...view, phase: "over", finalScore: frame.final_score };
    case "replay_done":
      return { ...view, finalScore: frame.final_score };
    case "error":
      return { ...view, lastError: frame.detail ?? frame.code };
    default:
      return view;
  }
}

/** Chat entries visible at a replay cursor position. */
export function chatUpTo(view: ClientView, tick: number): ChatEntry[] {
  return view.chat.filter((entry) => entry.tick <= tick);
}

/** True when keyboard/button input should reach the wire at all. */
export function inputLive(view: ClientView): boolean {
  return view.phase === "playing" && view.connection === "live";
}
