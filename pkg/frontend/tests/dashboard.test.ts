import { describe, expect, it } from "vitest";

import {
  fetchComparison,
  fetchPanels,
  isWellFormedSvg,
  significantMetrics,
  type ComparisonDocument,
} from "../src/dashboard.js";

function fakeFetch(routes: Record<string, { status?: number; body: string }>): typeof fetch {
  return (async (input: RequestInfo | URL) => {
    const url = String(input);
    const match = Object.keys(routes).find((suffix) => url.endsWith(suffix));
    if (!match) {
      return new Response("not found", { status: 404 });
    }
    const { status = 200, body } = routes[match];
    return new Response(body, { status });
  }) as typeof fetch;
}

const SVG = '<svg xmlns="http://www.w3.org/2000/svg"><rect/></svg>';

describe("isWellFormedSvg", () => {
  it("accepts an svg document", () => {
    expect(isWellFormedSvg(SVG)).toBe(true);
    expect(isWellFormedSvg(`  ${SVG}\n`)).toBe(true);
  });

  it("rejects other payloads", () => {
    expect(isWellFormedSvg("<html></html>")).toBe(false);
    expect(isWellFormedSvg("<svg unterminated")).toBe(false);
    expect(isWellFormedSvg("")).toBe(false);
  });
});

describe("fetchPanels", () => {
  it("fetches the three panels", async () => {
    const panels = await fetchPanels(
      "http://x",
      "s1",
      fakeFetch({
        "curve.svg": { body: SVG },
        "trends.svg": { body: SVG },
        "rhythm.svg": { body: SVG },
      }),
    );
    expect(panels.curve).toBe(SVG);
    expect(panels.trends).toBe(SVG);
    expect(panels.rhythm).toBe(SVG);
  });

  it("throws on an http failure so the UI can show the retry state", async () => {
    await expect(
      fetchPanels(
        "http://x",
        "s1",
        fakeFetch({
          "curve.svg": { body: "nope", status: 404 },
          "trends.svg": { body: SVG },
          "rhythm.svg": { body: SVG },
        }),
      ),
    ).rejects.toThrow(/HTTP 404/);
  });

  it("throws on a malformed panel", async () => {
    await expect(
      fetchPanels(
        "http://x",
        "s1",
        fakeFetch({
          "curve.svg": { body: "<html>oops</html>" },
          "trends.svg": { body: SVG },
          "rhythm.svg": { body: SVG },
        }),
      ),
    ).rejects.toThrow(/not an svg/);
  });
});

describe("comparison view data", () => {
  const doc: ComparisonDocument = {
    alpha: 0.05,
    metrics: {
      user_slope: { mean_a: -0.3, mean_b: 0.2, t: -5, df: 7, p: 0.001, significant: true },
      user_wait_count: { mean_a: 300, mean_b: 310, t: -0.4, df: 7.5, p: 0.7, significant: false },
      user_mean_code: { mean_a: -0.4, mean_b: 0.1, t: -6, df: 7.2, p: 0.0005, significant: true },
    },
    excluded: { user_r_squared: "undefined in 2 session(s)" },
  };

  it("lists significant metrics sorted", () => {
    expect(significantMetrics(doc)).toEqual(["user_mean_code", "user_slope"]);
  });

  it("fetchComparison posts both groups", async () => {
    let captured: unknown = null;
    const fetcher = (async (_url: RequestInfo | URL, init?: RequestInit) => {
      captured = JSON.parse(String(init?.body));
      return new Response(JSON.stringify(doc), { status: 200 });
    }) as typeof fetch;
    const result = await fetchComparison("http://x", ["a1"], ["b1", "b2"], 0.05, fetcher);
    expect(result.metrics.user_slope.significant).toBe(true);
    expect(captured).toEqual({ group_a: ["a1"], group_b: ["b1", "b2"], alpha: 0.05 });
  });
});
