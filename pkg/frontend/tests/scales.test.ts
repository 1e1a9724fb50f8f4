import { describe, expect, test } from "vitest";

import { clamp, divergingColor, extent, linearScale, rampPosition } from "../src/scales.js";

describe("linearScale", () => {
  test("maps domain endpoints to range endpoints", () => {
    const s = linearScale([0, 1], [40, 440]);
    expect(s(0)).toBe(40);
    expect(s(1)).toBe(440);
    expect(s(0.5)).toBe(240);
  });

  test("supports inverted ranges for canvas y axes", () => {
    const s = linearScale([0, 10], [360, 40]);
    expect(s(0)).toBe(360);
    expect(s(10)).toBe(40);
  });

  test("invert round-trips", () => {
    const s = linearScale([-0.2, 0.3], [40, 440]);
    for (const v of [-0.2, -0.05, 0.11, 0.3]) {
      expect(s.invert(s(v))).toBeCloseTo(v, 12);
    }
  });

  test("degenerate domain maps to mid-range", () => {
    const s = linearScale([5, 5], [0, 100]);
    expect(s(5)).toBe(50);
    expect(s(123)).toBe(50);
  });
});

describe("extent", () => {
  test("finds the min and max of a field", () => {
    expect(extent([{ v: 3 }, { v: -1 }, { v: 7 }], (p) => p.v)).toEqual([-1, 7]);
  });

  test("empty list falls back to the unit interval", () => {
    expect(extent([], () => 0)).toEqual([0, 1]);
  });
});

describe("clamp", () => {
  test("clamps on both sides", () => {
    expect(clamp(-2, 0, 1)).toBe(0);
    expect(clamp(0.4, 0, 1)).toBe(0.4);
    expect(clamp(9, 0, 1)).toBe(1);
  });
});

describe("divergingColor", () => {
  test("endpoints and midpoint are the ramp anchors", () => {
    expect(divergingColor(0)).toBe("rgb(202,59,65)");
    expect(divergingColor(0.5)).toBe("rgb(245,243,240)");
    expect(divergingColor(1)).toBe("rgb(33,102,172)");
  });

  test("out-of-range inputs clamp to the anchors", () => {
    expect(divergingColor(-5)).toBe(divergingColor(0));
    expect(divergingColor(5)).toBe(divergingColor(1));
  });
});

describe("rampPosition", () => {
  test("pins the midpoint value to 0.5", () => {
    expect(rampPosition(0, -100, 300)).toBe(0.5);
    expect(rampPosition(300, -100, 300)).toBe(1);
    expect(rampPosition(-100, -100, 300)).toBe(0);
  });

  test("asymmetric ranges stay on the correct side of the midpoint", () => {
    expect(rampPosition(150, -100, 300)).toBe(0.75);
    expect(rampPosition(-50, -100, 300)).toBe(0.25);
  });

  test("degenerate range sits at the middle", () => {
    expect(rampPosition(7, 7, 7)).toBe(0.5);
  });
});
