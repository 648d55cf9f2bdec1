import { readFileSync } from "node:fs";
import { join } from "node:path";

const FIXTURES = join(__dirname, "fixtures");

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf-8")) as T;
}

/** Installs a fetch stub that serves the captured server responses. */
export function installFetchFixtures(): void {
  const routes: Record<string, string> = {
    "/api/speeches": "speeches.json",
    "/api/speeches/s000": "speech_s000.json",
    "/api/analysis": "analysis.json",
    "/api/analysis/facial_arousal_average/distribution": "distribution_planted.json",
    "/api/embedding": "embedding.json",
    "/api/radar/s032": "radar_s032.json",
    "/api/layout/spiral/s000": "spiral_s000.json",
    "/api/layout/script/s000": "script_s000.json",
    "/api/layout/type/s000": "type_s000.json",
    "/api/layout/factor-strip/facial_arousal_average": "strip_planted.json",
  };
  globalThis.fetch = (async (input: RequestInfo | URL) => {
    const path = String(input);
    const name = routes[path];
    if (!name) {
      return new Response(JSON.stringify({ error: `no fixture for ${path}` }), {
        status: 404,
        headers: { "content-type": "application/json" },
      });
    }
    return new Response(readFileSync(join(FIXTURES, name), "utf-8"), {
      status: 200,
      headers: { "content-type": "application/json" },
    });
  }) as typeof fetch;
}
