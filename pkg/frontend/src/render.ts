// Pure text renderers for game state. Rationals stay exact "p/q" strings;
// numeric conversion happens only for bar geometry, never for verdicts.

import type { ElementObj, MoveObj } from "./api.js";

export function qToNumber(q: string): number {
  const [p, d] = q.split("/");
  return Number(p) / Number(d);
}

export function formatElement(e: ElementObj): string {
  switch (e.type) {
    case "interval":
      return `(${e.lo}, ${e.hi})`;
    case "cylinder":
      return `[${e.stem === "" ? "ε" : e.stem}]`;
    case "finite":
      return `{${(e.atoms ?? []).join(",")}}`;
    case "box": {
      const parts = Object.entries(e.assignments ?? {})
        .sort(([a], [b]) => Number(a) - Number(b))
        .map(([i, c]) => `${i}→${formatElement(c)}`);
      return parts.length ? `∏{${parts.join(", ")}}` : "∏{}";
    }
    default:
      return JSON.stringify(e);
  }
}

export function formatPoint(p: { type: string; value?: string; id?: string;
                                 support?: number[] }): string {
  if (p.type === "rational") return p.value ?? "?";
  if (p.type === "atom") return p.id ?? "?";
  if (p.type === "bits") {
    const sup = [...(p.support ?? [])].sort((a, b) => a - b);
    return sup.length ? `bits{${sup.join(",")}}` : "bits{}";
  }
  return JSON.stringify(p);
}

export function formatMove(m: MoveObj): string {
  const pt = m.point ? ` @ ${formatPoint(m.point)}` : "";
  return `${m.role} ${formatElement(m.open)}${pt}`;
}

export function renderHistory(moves: MoveObj[]): string {
  const lines: string[] = [];
  for (let i = 0; i < moves.length; i += 2) {
    const round = [`round ${i / 2}:`, formatMove(moves[i])];
    if (i + 1 < moves.length) round.push("|", formatMove(moves[i + 1]));
    lines.push(round.join(" "));
  }
  return lines.join("\n");
}

// Nested-interval bars on a log-scaled zoom: each row is drawn relative to
// the first interval, but the viewport re-centers once the current interval
// would shrink below a couple of cells, so 2^-n shrinkage stays visible.
export interface Bar {
  label: string;
  cells: string;
}

export function intervalBars(opens: ElementObj[], width = 40): Bar[] {
  const ivs = opens.filter((o) => o.type === "interval")
    .map((o) => ({ lo: qToNumber(o.lo!), hi: qToNumber(o.hi!),
                   label: `(${o.lo}, ${o.hi})` }));
  if (ivs.length === 0) return [];
  let viewLo = ivs[0].lo;
  let viewHi = ivs[0].hi;
  const bars: Bar[] = [];
  for (const iv of ivs) {
    const span = viewHi - viewLo;
    if (span > 0 && (iv.hi - iv.lo) / span < 2 / width) {
      // zoom the viewport to the previous bar
      const pad = (iv.hi - iv.lo) * (width / 4);
      viewLo = Math.max(viewLo, iv.lo - pad);
      viewHi = Math.min(viewHi, iv.hi + pad);
    }
    const s = viewHi - viewLo;
    const a = Math.round(((iv.lo - viewLo) / s) * width);
    const b = Math.round(((iv.hi - viewLo) / s) * width);
    const from = Math.max(0, Math.min(width, a));
    const to = Math.max(from + 1, Math.min(width, b));
    const cells = " ".repeat(from) + "█".repeat(to - from)
      + " ".repeat(width - to);
    bars.push({ label: iv.label, cells });
  }
  return bars;
}

export function renderCertificate(cert: Record<string, unknown> | null): string {
  if (!cert) return "";
  const kind = cert.kind as string;
  if (kind === "shrinking-closures") {
    const steps = cert.steps as { diameter: string; bound: string }[];
    return steps.map((s, i) =>
      `step ${i}: diam ${s.diameter} ≤ ${s.bound}`).join("\n");
  }
  if (kind === "exclusion-list") {
    const ex = cert.excluded as string[];
    return `excluded: ${ex.join(", ")}`;
  }
  if (kind === "stabilized") {
    return `stable ${formatElement(cert.stable as ElementObj)} `
      + `since round ${cert.since_round}`;
  }
  if (kind === "rep-chain") {
    const chain = cert.chain as { id: string; B: ElementObj }[];
    return chain.map((c) => `${c.id}: ${formatElement(c.B)}`).join(" ≪ ");
  }
  return JSON.stringify(cert);
}
