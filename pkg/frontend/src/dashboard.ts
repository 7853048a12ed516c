// Dashboard data access: the three server-rendered SVG panels and the
// two-group comparison. All numbers come from the service.

export interface SvgPanels {
  curve: string;
  trends: string;
  rhythm: string;
}

export interface ComparisonMetric {
  mean_a: number;
  mean_b: number;
  t: number | null;
  df: number;
  p: number;
  significant: boolean;
}

export interface ComparisonDocument {
  alpha: number;
  metrics: Record<string, ComparisonMetric>;
  excluded: Record<string, string>;
}

export function isWellFormedSvg(text: string): boolean {
  const trimmed = text.trim();
  return trimmed.startsWith("<svg") && trimmed.endsWith("</svg>");
}

export async function fetchPanels(
  base: string,
  sessionId: string,
  fetcher: typeof fetch = fetch,
): Promise<SvgPanels> {
  const names = ["curve.svg", "trends.svg", "rhythm.svg"] as const;
  const [curve, trends, rhythm] = await Promise.all(
    names.map(async (name) => {
      const response = await fetcher(`${base}/sessions/${sessionId}/${name}`);
      if (!response.ok) {
        throw new Error(`${name}: HTTP ${response.status}`);
      }
      const text = await response.text();
      if (!isWellFormedSvg(text)) {
        throw new Error(`${name}: not an svg document`);
      }
      return text;
    }),
  );
  return { curve, trends, rhythm };
}

export async function fetchComparison(
  base: string,
  groupA: string[],
  groupB: string[],
  alpha = 0.05,
  fetcher: typeof fetch = fetch,
): Promise<ComparisonDocument> {
  const response = await fetcher(`${base}/compare`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ group_a: groupA, group_b: groupB, alpha }),
  });
  if (!response.ok) {
    throw new Error(`compare: HTTP ${response.status}`);
  }
  return (await response.json()) as ComparisonDocument;
}

export function significantMetrics(doc: ComparisonDocument): string[] {
  return Object.keys(doc.metrics)
    .filter((name) => doc.metrics[name].significant)
    .sort();
}
