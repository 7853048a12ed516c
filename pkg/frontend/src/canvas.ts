// DOM wiring for the drawing surface and the four control regions:
// menu (top), paint menu (left), chat interface (bottom left), voting
// buttons (right). Every control emits at least one event kind; all
// analysis stays on the server.

import { SessionClient } from "./client.js";
import { CanvasModel } from "./model.js";
import type { StrokeState } from "./types.js";

const MODES = [
  ["ai", "AI Mode"],
  ["draw_together", "Draw Together"],
  ["extend", "Extend"],
  ["mimic", "Mimic"],
  ["shade", "Shade"],
  ["predictive", "Predictive Drawing"],
  ["style", "Style"],
  ["teach_object", "Teach Object"],
  ["teach_style", "Teach Style"],
] as const;

const SKETCHABLE = ["house", "tree", "sun", "star", "fish", "bird", "cat", "dog"];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text) {
    node.textContent = text;
  }
  return node;
}

export class CanvasApp {
  readonly model = new CanvasModel();
  readonly root: HTMLElement;
  private ctx: CanvasRenderingContext2D;
  private canvas: HTMLCanvasElement;
  private bubble: HTMLElement;
  private avatar: HTMLElement;
  private modeBadge: HTMLElement;
  private thumbnailBox: HTMLElement;
  private brushWidth = 2;
  private brushColor = [0, 0, 0, 255];
  private placing = false;

  constructor(private readonly client: SessionClient, width = 960, height = 600) {
    this.root = el("div", "cosketch");

    const menu = el("div", "menu");
    this.modeBadge = el("span", "mode-badge", "AI Mode");
    menu.append(this.modeBadge);
    const modeSelect = el("select", "mode-select");
    for (const [value, label] of MODES) {
      const option = el("option", undefined, label);
      option.value = value;
      modeSelect.append(option);
    }
    modeSelect.addEventListener("change", () => {
      this.client.emit("mode_change", { mode: modeSelect.value });
      this.modeBadge.textContent =
        MODES.find(([value]) => value === modeSelect.value)?.[1] ?? modeSelect.value;
    });
    menu.append(modeSelect);
    for (const [kind, label] of [
      ["undo", "Undo"],
      ["redo", "Redo"],
      ["clear_canvas", "Clear"],
      ["panel_toggle", "Panel"],
    ] as const) {
      const button = el("button", kind, label);
      button.addEventListener("click", () => {
        this.client.emit(kind, {});
        if (kind === "clear_canvas") {
          this.model.clear();
          this.redraw();
        }
      });
      menu.append(button);
    }
    this.root.append(menu);

    const body = el("div", "body");

    const paint = el("div", "paint-menu");
    const color = el("input") as HTMLInputElement;
    color.type = "color";
    color.addEventListener("change", () => {
      this.brushColor = hexToRgba(color.value);
      this.client.emit("choose_color", { color: this.brushColor });
    });
    paint.append(color);
    const widthSlider = el("input") as HTMLInputElement;
    widthSlider.type = "range";
    widthSlider.min = "1";
    widthSlider.max = "24";
    widthSlider.value = "2";
    widthSlider.addEventListener("change", () => {
      this.brushWidth = Number(widthSlider.value);
      this.client.emit("choose_line_width", { width: this.brushWidth });
    });
    paint.append(widthSlider);
    for (const [kind, label] of [
      ["brush_change", "Brush"],
      ["fill", "Fill"],
      ["erase", "Erase"],
      ["smudge", "Smudge"],
    ] as const) {
      const button = el("button", kind, label);
      button.addEventListener("click", () => this.client.emit(kind, {}));
      paint.append(button);
    }
    body.append(paint);

    const stage = el("div", "stage");
    this.canvas = el("canvas") as HTMLCanvasElement;
    this.canvas.width = width;
    this.canvas.height = height;
    this.ctx = this.canvas.getContext("2d")!;
    this.wirePointer();
    stage.append(this.canvas);

    this.avatar = el("div", "avatar", "(o_o)");
    this.bubble = el("div", "speech-bubble");
    this.thumbnailBox = el("div", "thumbnail");
    stage.append(this.avatar, this.bubble, this.thumbnailBox);
    body.append(stage);

    const votes = el("div", "voting");
    const voteUp = el("button", "vote-up", "▲");
    voteUp.addEventListener("click", () => this.client.emit("vote_up", {}));
    const voteDown = el("button", "vote-down", "▼");
    voteDown.addEventListener("click", () => this.client.emit("vote_down", {}));
    votes.append(voteUp, voteDown);
    body.append(votes);
    this.root.append(body);

    const chat = el("div", "chat");
    const sketchSelect = el("select", "sketch-select");
    for (const label of SKETCHABLE) {
      const option = el("option", undefined, label);
      option.value = label;
      sketchSelect.append(option);
    }
    const sketchButton = el("button", "request-sketch", "Sketch it");
    sketchButton.addEventListener("click", () =>
      this.client.emit("request_sketch", { label: sketchSelect.value }),
    );
    const prompt = el("input", "prompt") as HTMLInputElement;
    prompt.placeholder = "Describe an image…";
    const promptButton = el("button", "request-image", "Generate");
    promptButton.addEventListener("click", () => {
      if (prompt.value.trim()) {
        this.client.emit("request_image", { prompt: prompt.value.trim() });
      }
    });
    const teachInput = el("input", "teach-label") as HTMLInputElement;
    teachInput.placeholder = "Name what you drew…";
    const teachButton = el("button", "teach-object", "Teach");
    teachButton.addEventListener("click", () => {
      if (teachInput.value.trim()) {
        this.client.emit("teach_object", { label: teachInput.value.trim() });
      }
    });
    chat.append(sketchSelect, sketchButton, prompt, promptButton, teachInput, teachButton);
    this.root.append(chat);
  }

  private wirePointer(): void {
    this.canvas.addEventListener("pointerdown", (e) => {
      if (this.placing && this.model.pending) {
        this.client.emit("place_artifact", { x: e.offsetX, y: e.offsetY, scale: 1.0 });
        this.placing = false;
        this.model.pending = null;
        this.renderThumbnail();
        return;
      }
      this.model.beginLocalStroke(e.offsetX, e.offsetY, this.brushWidth, this.brushColor);
      this.client.emit("pen_down", {
        x: e.offsetX,
        y: e.offsetY,
        width: this.brushWidth,
        color: this.brushColor,
      });
      this.redraw();
    });
    this.canvas.addEventListener("pointermove", (e) => {
      if (this.model.current) {
        this.model.extendLocalStroke(e.offsetX, e.offsetY);
        this.client.emit("pen_move", { x: e.offsetX, y: e.offsetY });
        this.redraw();
      }
    });
    this.canvas.addEventListener("pointerup", (e) => {
      if (this.model.current) {
        this.model.endLocalStroke(e.offsetX, e.offsetY);
        this.client.emit("pen_up", { x: e.offsetX, y: e.offsetY });
        this.redraw();
      }
    });
  }

  handleServerMessage(raw: unknown): void {
    this.client.dispatch(raw, {
      onAgentEvent: (event) => {
        this.model.applyAgentEvent(event);
        if (event.kind === "agent_speech") {
          this.bubble.textContent = this.model.speech;
        }
        if (event.kind === "agent_animation") {
          this.avatar.className = `avatar ${this.model.animation}`;
          this.avatar.textContent = this.model.animation === "frown" ? "(n_n)" : "(^o^)";
        }
        this.redraw();
      },
      onPreview: (strokes) => {
        this.model.preview = strokes;
        this.redraw();
      },
      onThumbnail: (message) => {
        this.model.applyMessage(message);
        this.placing = true;
        this.renderThumbnail();
      },
      onError: (detail) => console.warn("live stream:", detail),
    });
  }

  /** Rebuild from the server's stroke state after a reconnect. */
  resetFromServer(strokes: StrokeState[]): void {
    this.model.reset(strokes);
    this.redraw();
  }

  private renderThumbnail(): void {
    this.thumbnailBox.textContent = "";
    const pending = this.model.pending;
    if (!pending) {
      return;
    }
    const note = el(
      "div",
      "thumbnail-note",
      pending.kind === "sketch"
        ? `Sketch of "${pending.label}" ready - click the canvas to place it`
        : "Generated image ready - click the canvas to place it",
    );
    this.thumbnailBox.append(note);
    if (pending.data) {
      const image = el("img") as HTMLImageElement;
      image.src = `data:image/x-portable-pixmap;base64,${pending.data}`;
      this.thumbnailBox.append(image);
    }
  }

  private drawStroke(stroke: StrokeState): void {
    if (stroke.points.length === 0) {
      return;
    }
    this.ctx.beginPath();
    this.ctx.lineWidth = stroke.width;
    const [r, g, b, a] = stroke.color;
    this.ctx.strokeStyle = `rgba(${r},${g},${b},${(a ?? 255) / 255})`;
    this.ctx.moveTo(stroke.points[0][0], stroke.points[0][1]);
    for (const [x, y] of stroke.points.slice(1)) {
      this.ctx.lineTo(x, y);
    }
    this.ctx.stroke();
  }

  redraw(): void {
    this.ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    this.ctx.lineCap = "round";
    this.ctx.lineJoin = "round";
    for (const stroke of this.model.strokes) {
      this.drawStroke(stroke);
    }
    if (this.model.current) {
      this.drawStroke(this.model.current);
    }
    if (this.model.agentCurrent) {
      this.drawStroke(this.model.agentCurrent);
    }
    this.ctx.setLineDash([4, 4]);
    for (const preview of this.model.preview) {
      this.drawStroke({
        actor: "agent",
        points: preview,
        width: 1.5,
        color: [120, 120, 120, 255],
      });
    }
    this.ctx.setLineDash([]);
  }
}

function hexToRgba(hex: string): number[] {
  const value = hex.replace("#", "");
  return [
    parseInt(value.slice(0, 2), 16),
    parseInt(value.slice(2, 4), 16),
    parseInt(value.slice(4, 6), 16),
    255,
  ];
}
