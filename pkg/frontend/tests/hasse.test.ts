import { describe, expect, it } from "vitest";

import { hasseLayout, renderHasse } from "../src/hasse.js";

describe("hasseLayout", () => {
  it("reduces a chain to its covering pairs", () => {
    const ids = ["a", "b", "c"];
    const leq: [string, string][] = [
      ["a", "a"], ["b", "b"], ["c", "c"],
      ["a", "b"], ["b", "c"], ["a", "c"],
    ];
    const { covers, layers } = hasseLayout(ids, leq);
    expect(covers).toEqual([["a", "b"], ["b", "c"]]);
    expect(layers).toEqual([["a"], ["b"], ["c"]]);
  });

  it("puts incomparable elements on the same layer", () => {
    const ids = ["bot", "x", "y"];
    const leq: [string, string][] = [
      ["bot", "x"], ["bot", "y"],
    ];
    const { covers, layers } = hasseLayout(ids, leq);
    expect(covers).toHaveLength(2);
    expect(layers).toEqual([["bot"], ["x", "y"]]);
  });

  it("tolerates mutual pairs without looping", () => {
    const ids = ["p", "q"];
    const leq: [string, string][] = [["p", "q"], ["q", "p"]];
    const { layers } = hasseLayout(ids, leq);
    expect(layers.flat().sort()).toEqual(["p", "q"]);
  });

  it("renders one line per layer", () => {
    const out = renderHasse({ covers: [], layers: [["a"], ["b", "c"]] });
    expect(out).toBe("0: a\n1: b  c");
  });
});
