/**
 * Keyboard and button presses -> wire frames. Pure mapping functions plus a
 * thin DOM binder; nothing is sent while the game is not live.
 */

import { ClientFrame } from "./protocol.js";
import { ClientView, inputLive } from "./view.js";

const KEY_MAP: Record<string, "up" | "down" | "left" | "right" | "interact"> = {
  ArrowUp: "up",
  ArrowDown: "down",
  ArrowLeft: "left",
  ArrowRight: "right",
  " ": "interact",
  Spacebar: "interact", // older browsers
};

export function frameForKey(key: string): ClientFrame | null {
  const action = KEY_MAP[key];
  return action ? { type: "key", action } : null;
}

export function frameForButton(templateId: number): ClientFrame {
  return { type: "button", template_id: templateId };
}

/**
 * Attach keyboard capture. `currentView` is read at event time so the
 * guard always sees the latest phase; between games nothing is sent.
 */
export function bindKeyboard(
  target: { addEventListener(type: string, cb: (e: KeyboardEvent) => void): void },
  currentView: () => ClientView,
  send: (frame: ClientFrame) => void,
): void {
  target.addEventListener("keydown", (event: KeyboardEvent) => {
    const frame = frameForKey(event.key);
    if (!frame) return;
    event.preventDefault?.();
    if (!inputLive(currentView())) return;
    send(frame);
  });
}
