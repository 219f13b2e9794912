/**
 * Scrubbable playback over a server replay stream. The server owns the
 * states; this controller just tracks the cursor and emits control frames.
 */

import { ClientFrame, ServerFrame } from "./protocol.js";

export interface ReplayState {
  cursor: number;
  totalTicks: number;
  playing: boolean;
  done: boolean;
  finalScore: number | null;
}

export function emptyReplay(): ReplayState {
  return { cursor: 0, totalTicks: 0, playing: false, done: false, finalScore: null };
}

export function applyReplayFrame(rs: ReplayState, frame: ServerFrame): ReplayState {
  switch (frame.type) {
    case "replay_joined":
      return { ...rs, totalTicks: frame.ticks, finalScore: frame.final_score };
    case "state_full":
      return { ...rs, cursor: frame.tick, done: false };
    case "replay_done":
      return { ...rs, playing: false, done: true, finalScore: frame.final_score };
    default:
      return rs;
  }
}

export function play(rs: ReplayState, send: (f: ClientFrame) => void): ReplayState {
  send({ type: "replay_ctl", cmd: "play" });
  return { ...rs, playing: true };
}

export function pause(rs: ReplayState, send: (f: ClientFrame) => void): ReplayState {
  send({ type: "replay_ctl", cmd: "pause" });
  return { ...rs, playing: false };
}

export function seek(rs: ReplayState, tick: number,
                     send: (f: ClientFrame) => void): ReplayState {
  const clamped = Math.max(0, Math.min(rs.totalTicks, Math.round(tick)));
  send({ type: "replay_ctl", cmd: "seek", tick: clamped });
  return { ...rs, cursor: clamped, done: false };
}
