/** Typed fetch wrappers over the analytics endpoints (the UI's only
 *  network surface). Layout documents are cached: they are immutable for a
 *  running server. */

import type {
  AnalysisEntry,
  DistributionDoc,
  EmbeddingDoc,
  RadarDoc,
  ScriptDoc,
  SpeechDetail,
  SpeechSummary,
  SpiralDoc,
  StripDoc,
  TypeDoc,
} from "./types.js";

async function getJson<T>(path: string): Promise<T> {
  const response = await fetch(path);
  const body = await response.json();
  if (!response.ok) {
    throw new Error(body?.error ?? `${path} failed with ${response.status}`);
  }
  return body as T;
}

const layoutCache = new Map<string, unknown>();

async function cached<T>(path: string): Promise<T> {
  if (!layoutCache.has(path)) {
    layoutCache.set(path, await getJson<T>(path));
  }
  return layoutCache.get(path) as T;
}

export const api = {
  speeches: () => getJson<SpeechSummary[]>("/api/speeches"),
  speech: (id: string) => cached<SpeechDetail>(`/api/speeches/${id}`),
  analysis: () => getJson<AnalysisEntry[]>("/api/analysis"),
  distribution: (factor: string) =>
    cached<DistributionDoc>(`/api/analysis/${factor}/distribution`),
  embedding: () => getJson<EmbeddingDoc>("/api/embedding"),
  radar: (id: string) => cached<RadarDoc>(`/api/radar/${id}`),
  spiral: (id: string) => cached<SpiralDoc>(`/api/layout/spiral/${id}`),
  script: (id: string) => cached<ScriptDoc>(`/api/layout/script/${id}`),
  typeStrip: (id: string) => cached<TypeDoc>(`/api/layout/type/${id}`),
  factorStrip: (factor: string) => cached<StripDoc>(`/api/layout/factor-strip/${factor}`),
};

export function clearApiCache(): void {
  layoutCache.clear();
}
