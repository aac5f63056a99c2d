// Order-diagram layout for a carrier fragment: transitive reduction of the
// below-relation, then layer assignment by longest path from the bottom.

export interface HasseLayout {
  covers: [string, string][];
  layers: string[][];
}

export function hasseLayout(ids: string[],
                            leq: [string, string][]): HasseLayout {
  const below = new Map<string, Set<string>>();
  for (const id of ids) below.set(id, new Set());
  for (const [p, q] of leq) {
    if (p !== q && below.has(p) && below.has(q)) below.get(p)!.add(q);
  }

  // covering pairs: p < q with nothing strictly between
  const covers: [string, string][] = [];
  for (const p of ids) {
    for (const q of below.get(p)!) {
      let direct = true;
      for (const mid of below.get(p)!) {
        if (mid !== q && below.get(mid)!.has(q)) {
          direct = false;
          break;
        }
      }
      if (direct) covers.push([p, q]);
    }
  }

  // layer = longest chain below the element, via memoized recursion over
  // the covering predecessors
  const preds = new Map<string, string[]>();
  for (const id of ids) preds.set(id, []);
  for (const [p, q] of covers) preds.get(q)!.push(p);
  const depth = new Map<string, number>();
  const visiting = new Set<string>();
  const depthOf = (id: string): number => {
    const known = depth.get(id);
    if (known !== undefined) return known;
    if (visiting.has(id)) return 0; // cycle guard: mutual pairs share a layer
    visiting.add(id);
    const d = Math.max(0, ...preds.get(id)!.map((p) => depthOf(p) + 1));
    visiting.delete(id);
    depth.set(id, d);
    return d;
  };
  const layers: string[][] = [];
  for (const id of ids) {
    const d = depthOf(id);
    while (layers.length <= d) layers.push([]);
    layers[d].push(id);
  }
  return { covers, layers };
}

export function renderHasse(layout: HasseLayout): string {
  return layout.layers
    .map((layer, i) => `${i}: ${layer.join("  ")}`)
    .join("\n");
}
