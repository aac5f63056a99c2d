// Browser wiring: forms in, server-validated state out.

import { ApiClient, ElementObj, PointObj } from "./api.js";
import { GameView, ViewUpdate } from "./view.js";
import { hasseLayout, renderHasse } from "./hasse.js";
import { intervalBars, renderCertificate, renderHistory } from "./render.js";

const api = new ApiClient("");
const view = new GameView(api);

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function parseOpen(kind: string, text: string): ElementObj {
  const t = text.trim();
  if (kind === "cantor") return { type: "cylinder", stem: t };
  if (kind === "finite") {
    return { type: "finite", atoms: t.split(",").map((s) => s.trim()) };
  }
  const m = t.match(/^\(?\s*(-?\d+(?:\/\d+)?)\s*,\s*(-?\d+(?:\/\d+)?)\s*\)?$/);
  if (!m) throw new Error("expected an interval like (1/4, 1/2)");
  const norm = (q: string) => (q.includes("/") ? q : `${q}/1`);
  return { type: "interval", lo: norm(m[1]), hi: norm(m[2]) };
}

function parsePoint(kind: string, text: string): PointObj {
  const t = text.trim();
  if (kind === "cantor") {
    const support = t ? t.split(",").map((s) => Number(s.trim())) : [];
    return { type: "bits", support };
  }
  if (kind === "finite") return { type: "atom", id: t };
  return { type: "rational", value: t.includes("/") ? t : `${t}/1` };
}

function show(update: ViewUpdate): void {
  const s = update.state;
  el("banner").textContent = update.error
    ? `illegal move: ${update.error}`
    : `turn: ${s.turn}`;
  el("banner").className = update.error ? "error" : "";
  el("history").textContent = renderHistory(s.moves);
  const bars = intervalBars(s.moves.map((m) => m.open));
  el("bars").textContent = bars
    .map((b) => `|${b.cells}| ${b.label}`)
    .join("\n");
  el("certificate").textContent = renderCertificate(s.certificate);
}

async function startSession(): Promise<void> {
  const kind = el<HTMLSelectElement>("space").value;
  const mode = el<HTMLSelectElement>("mode").value as "bm" | "ch";
  const role = el<HTMLSelectElement>("role").value as "alpha" | "beta";
  const engine = el<HTMLInputElement>("engine").value || undefined;
  try {
    const update = await view.start({ space: kind, mode, human_role: role,
                                      engine });
    el("point-row").style.display = mode === "ch" && role === "beta"
      ? "" : "none";
    show(update);
  } catch (e) {
    el("banner").textContent = String(e);
    el("banner").className = "error";
  }
}

async function submitMove(): Promise<void> {
  const kind = el<HTMLSelectElement>("space").value;
  const s = view.current;
  try {
    const open = parseOpen(kind, el<HTMLInputElement>("open").value);
    const needPoint = s.mode === "ch" && s.human_role === "beta";
    const point = needPoint
      ? parsePoint(kind, el<HTMLInputElement>("point").value)
      : undefined;
    show(await view.submit(open, point));
  } catch (e) {
    el("banner").textContent = String(e);
    el("banner").className = "error";
  }
}

async function showRep(): Promise<void> {
  try {
    const frag = await api.fetchRep(view.current.game_id);
    const layout = hasseLayout(frag.elements.map((e) => e.id), frag.leq);
    el("rep").textContent = renderHasse(layout);
  } catch (e) {
    el("rep").textContent = String(e);
  }
}

el("start").addEventListener("click", () => void startSession());
el("move").addEventListener("click", () => void submitMove());
el("show-rep").addEventListener("click", () => void showRep());
