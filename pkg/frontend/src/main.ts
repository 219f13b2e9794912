/** Entry point: websocket wiring, DOM chat pane, buttons, replay controls. */

import { canvasSize, drawOps } from "./canvas.js";
import { bindKeyboard, frameForButton } from "./input.js";
import { ClientFrame, ServerFrame } from "./protocol.js";
import { render } from "./renderer.js";
import { applyReplayFrame, emptyReplay, pause, play, ReplayState, seek } from "./replay.js";
import { applyFrame, chatUpTo, ClientView, emptyView } from "./view.js";

let view: ClientView = emptyView();
let replay: ReplayState = emptyReplay();

const canvas = document.getElementById("game") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const chatPane = document.getElementById("chat")!;
const buttonsPane = document.getElementById("buttons")!;
const statusLine = document.getElementById("status")!;
const replayBar = document.getElementById("replaybar") as HTMLElement;
const scrubber = document.getElementById("scrubber") as HTMLInputElement;

const params = new URLSearchParams(location.search);
const replayLog = params.get("replay");

const ws = new WebSocket(`ws://${location.host}/ws`);
const send = (frame: ClientFrame) => ws.send(JSON.stringify(frame));

ws.onopen = () => {
  if (replayLog) {
    send({ type: "join", mode: "replay", log: replayLog });
    replayBar.style.display = "flex";
  } else {
    const join: ClientFrame = { type: "join" };
    if (params.get("seed")) join.seed = parseInt(params.get("seed")!, 10);
    if (params.get("comm")) join.comm = params.get("comm") as any;
    if (params.get("tom")) join.tom = params.get("tom") === "1";
    send(join);
  }
};

ws.onclose = () => {
  view = { ...view, connection: "closed" };
  paint();
};

ws.onmessage = (event) => {
  const frame = JSON.parse(event.data) as ServerFrame;
  view = applyFrame(view, frame);
  replay = applyReplayFrame(replay, frame);
  if (frame.type === "joined") {
    setupButtons();
    const [w, h] = canvasSize(frame.layout.width, frame.layout.height);
    canvas.width = w;
    canvas.height = h;
  }
  if (frame.type === "replay_joined") {
    const [w, h] = canvasSize(frame.layout.width, frame.layout.height);
    canvas.width = w;
    canvas.height = h;
    scrubber.max = String(frame.ticks);
  }
  paint();
};

bindKeyboard(window, () => view, send);

function setupButtons(): void {
  buttonsPane.innerHTML = "";
  if (!view.buttonsEnabled) {
    buttonsPane.textContent = "messages disabled in this condition";
    return;
  }
  for (const [id, text] of Object.entries(view.templates)) {
    const button = document.createElement("button");
    button.textContent = text;
    button.onclick = () => send(frameForButton(parseInt(id, 10)));
    buttonsPane.appendChild(button);
  }
}

function paint(): void {
  drawOps(ctx, render(view));
  statusLine.textContent =
    view.lastError ? `error: ${view.lastError}`
    : view.connection === "closed" ? "disconnected"
    : view.phase === "replay"
      ? `replay tick ${replay.cursor}/${replay.totalTicks}` +
        (view.replayVerified ? " (verified)" : "") +
        (replay.done ? ` — final score ${view.finalScore}` : "")
      : `${view.phase}${view.condition ? " | " + view.condition : ""}`;

  const visible = view.phase === "replay" ? chatUpTo(view, replay.cursor) : view.chat;
  chatPane.innerHTML = "";
  for (const entry of visible.slice(-40)) {
    const row = document.createElement("div");
    row.className = `msg ${entry.sender}`;
    row.textContent = `[t${entry.tick}] ${entry.sender}: ${entry.text}`;
    chatPane.appendChild(row);
  }
  chatPane.scrollTop = chatPane.scrollHeight;
  if (view.phase === "replay") scrubber.value = String(replay.cursor);
}

(document.getElementById("play") as HTMLButtonElement).onclick = () => {
  replay = replay.playing ? pause(replay, send) : play(replay, send);
};
scrubber.oninput = () => {
  replay = seek(replay, parseInt(scrubber.value, 10), send);
};

// agent messages get a short highlight so they are harder to overlook;
// set ?highlight=0 to disable for faithful replication
if (params.get("highlight") !== "0") {
  const style = document.createElement("style");
  style.textContent = ".msg.agent:last-child { animation: pulse 1.2s ease-out; }";
  document.head.appendChild(style);
}
