// App entry: create a session, open the live stream, mount the canvas and
// the dashboard. Events buffered while offline replay on reconnect.

import { CanvasApp } from "./canvas.js";
import { SessionClient, type Transport } from "./client.js";
import { fetchPanels } from "./dashboard.js";
import type { StrokeState } from "./types.js";

const base = location.origin;

class WebSocketTransport implements Transport {
  constructor(private readonly socket: WebSocket) {}

  get open(): boolean {
    return this.socket.readyState === WebSocket.OPEN;
  }

  send(envelope: unknown): void {
    this.socket.send(JSON.stringify(envelope));
  }
}

async function createSession(): Promise<string> {
  const response = await fetch(`${base}/sessions`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ group: "live" }),
  });
  if (!response.ok) {
    throw new Error(`create session failed: HTTP ${response.status}`);
  }
  return ((await response.json()) as { id: string }).id;
}

function connectLive(sessionId: string, client: SessionClient, app: CanvasApp): void {
  const wsBase = base.replace(/^http/, "ws");
  const socket = new WebSocket(`${wsBase}/sessions/${sessionId}/live`);
  socket.addEventListener("open", () => client.attach(new WebSocketTransport(socket)));
  socket.addEventListener("message", (e) => app.handleServerMessage(JSON.parse(e.data)));
  socket.addEventListener("close", () => {
    client.detach();
    // rebuild from the server's stroke state, then reconnect and replay
    setTimeout(async () => {
      try {
        const response = await fetch(`${base}/sessions/${sessionId}/strokes`);
        if (response.ok) {
          const body = (await response.json()) as { strokes: StrokeState[] };
          app.resetFromServer(body.strokes);
        }
      } finally {
        connectLive(sessionId, client, app);
      }
    }, 500);
  });
}

function mountDashboard(sessionId: string, container: HTMLElement): void {
  const refresh = document.createElement("button");
  refresh.textContent = "Refresh analysis";
  const panels = document.createElement("div");
  panels.className = "panels";
  container.append(refresh, panels);

  const load = async () => {
    panels.textContent = "Loading…";
    try {
      const svg = await fetchPanels(base, sessionId);
      panels.innerHTML = "";
      for (const markup of [svg.curve, svg.trends, svg.rhythm]) {
        const cell = document.createElement("div");
        cell.className = "panel";
        cell.innerHTML = markup;
        panels.append(cell);
      }
    } catch (error) {
      panels.textContent = `No data yet (${String(error)})`;
      const retry = document.createElement("button");
      retry.textContent = "Retry";
      retry.addEventListener("click", load);
      panels.append(retry);
    }
  };
  refresh.addEventListener("click", load);
  void load();
}

async function start(): Promise<void> {
  const sessionId = await createSession();
  const client = new SessionClient(() => performance.now());
  client.markSessionStart();
  const app = new CanvasApp(client);
  document.body.append(app.root);
  const dashboard = document.createElement("div");
  dashboard.className = "dashboard";
  document.body.append(dashboard);
  connectLive(sessionId, client, app);
  mountDashboard(sessionId, dashboard);
}

start().catch((error) => {
  document.body.textContent = `Failed to start: ${String(error)}`;
});
