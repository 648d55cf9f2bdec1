/** View C: the selected speech in detail. Renders the spiral, script and
 *  type layouts exactly as served, a valence/arousal timeline, and an
 *  interval inspector that follows clicks on spiral circles (circle k jumps
 *  the cursor to the start of interval k, i.e. k * interval_s seconds). */

import { strokeWidthForWeight } from "../palette.js";
import { clear, el, svgElement, svgRoot } from "../svg.js";
import type { ScriptDoc, SpeechDetail, SpiralDoc, TypeDoc } from "../types.js";

export interface IntervalInfo {
  index: number;
  startS: number;
  endS: number;
  cumulativeValence: number;
  dominantEmotion: string;
  meanArousal: number;
}

/** Per-interval data recomputed from the record series for the inspector
 *  (display only; all drawn geometry still comes from the layout docs). */
export function intervalInfo(speech: SpeechDetail, spiral: SpiralDoc, index: number): IntervalInfo {
  const intervalS = spiral.params.interval_s;
  const startS = index * intervalS;
  const endS = Math.min(speech.duration_s, startS + intervalS);
  let cumulative = 0;
  let arousal = 0;
  const counts = new Map<string, number>();
  let n = 0;
  for (let k = 0; k < speech.facial.valence.length; k++) {
    const t = k / speech.facial.fps;
    if (t >= startS && t < startS + intervalS) {
      cumulative += speech.facial.valence[k];
      arousal += speech.facial.arousal[k];
      counts.set(speech.facial.emotion[k], (counts.get(speech.facial.emotion[k]) ?? 0) + 1);
      n += 1;
    }
  }
  const circle = spiral.circles[index];
  let dominant = "";
  let best = -1;
  for (const [label, count] of counts) {
    if (count > best) {
      dominant = label;
      best = count;
    }
  }
  return {
    index,
    startS,
    endS,
    cumulativeValence: cumulative,
    dominantEmotion: dominant || (circle ? "(inherited)" : ""),
    meanArousal: n ? arousal / n : 0,
  };
}

export function renderSpiral(
  container: HTMLElement,
  doc: SpiralDoc,
  onCircleClick: (intervalIndex: number) => void,
): void {
  clear(container);
  const scale = 100;
  let extent = 0.1;
  for (const c of doc.circles) {
    extent = Math.max(extent, Math.max(Math.abs(c.cx), Math.abs(c.cy)) + c.radius);
  }
  const e = (extent + 0.05) * scale;
  const svg = svgRoot(`${-e} ${-e} ${2 * e} ${2 * e}`, 300, 300);
  svg.classList.add("spiral");
  for (const c of doc.circles) {
    const node = svgElement("circle", {
      cx: c.cx * scale,
      cy: c.cy * scale,
      r: c.radius * scale,
      fill: c.color,
      "fill-opacity": c.opacity,
      "data-interval": c.interval_index,
      "data-start": c.start_s,
    });
    node.addEventListener("click", () => onCircleClick(c.interval_index));
    svg.appendChild(node);
  }
  container.appendChild(svg);
}

export function renderScript(container: HTMLElement, doc: ScriptDoc): void {
  clear(container);
  const height = (doc.line_count + 1) * doc.params.line_height;
  const svg = svgRoot(`0 0 ${doc.width} ${height}`, doc.width, Math.min(height, 420));
  svg.classList.add("script");
  for (const run of doc.runs) {
    const text = svgElement("text", {
      x: run.x,
      y: run.y,
      "font-size": run.font_size,
      "letter-spacing": run.tracking,
      fill: run.color,
      stroke: run.color,
      "stroke-width": strokeWidthForWeight(run.shape_weight),
      "data-weight": run.shape_weight,
      "data-start": run.start_s,
    });
    text.textContent = run.text;
    svg.appendChild(text);
  }
  container.appendChild(svg);
}

export function renderTypeStrip(container: HTMLElement, doc: TypeDoc): void {
  clear(container);
  const svg = svgRoot(`0 0 ${doc.width} ${doc.height}`, doc.width, doc.height);
  svg.classList.add("type-strip");
  const rectW = doc.width / doc.rects.length;
  for (const r of doc.rects) {
    svg.appendChild(
      svgElement("rect", {
        x: r.x,
        y: r.y_center - r.height / 2,
        width: rectW,
        height: r.height,
        fill: r.color,
      }),
    );
  }
  const points = doc.polyline.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
  svg.appendChild(
    svgElement("polyline", { points, fill: "none", stroke: "#d62728", "stroke-width": 1.5 }),
  );
  container.appendChild(svg);
}

/** Raw valence/arousal series with a cursor at the inspected time. */
export function renderTimeline(container: HTMLElement, speech: SpeechDetail, cursorS: number | null): void {
  clear(container);
  const width = 460;
  const height = 120;
  const sx = (t: number) => (t / speech.duration_s) * width;
  const svg = svgRoot(`0 0 ${width} ${height}`, width, height);
  svg.classList.add("timeline");
  const lines: [keyof Pick<SpeechDetail["facial"], "valence" | "arousal">, string, (v: number) => number][] = [
    ["valence", "#d62728", (v) => (height / 2) * (1 - v)],
    ["arousal", "#1f77b4", (v) => height * (1 - v)],
  ];
  for (const [key, color, sy] of lines) {
    const series = speech.facial[key];
    const points = series
      .map((v, k) => `${sx(k / speech.facial.fps).toFixed(1)},${sy(v).toFixed(1)}`)
      .join(" ");
    svg.appendChild(
      svgElement("polyline", { points, fill: "none", stroke: color, "stroke-width": 1, "data-series": key }),
    );
  }
  if (cursorS !== null) {
    svg.appendChild(
      svgElement("line", {
        x1: sx(cursorS), y1: 0, x2: sx(cursorS), y2: height,
        stroke: "#000", "stroke-width": 1.5, "data-role": "cursor",
      }),
    );
  }
  container.appendChild(svg);
}

export function renderInspector(container: HTMLElement, info: IntervalInfo | null): void {
  clear(container);
  container.appendChild(el("h3", "panel-title", "interval inspector"));
  if (info === null) {
    container.appendChild(el("p", "hint", "click a spiral circle to inspect its interval"));
    return;
  }
  const list = el("dl", "inspector");
  container.dataset.time = String(info.startS);
  const rows: [string, string][] = [
    ["interval", String(info.index)],
    ["time", `${info.startS.toFixed(1)}s - ${info.endS.toFixed(1)}s`],
    ["cumulative valence", info.cumulativeValence.toFixed(3)],
    ["dominant emotion", info.dominantEmotion],
    ["mean arousal", info.meanArousal.toFixed(3)],
  ];
  for (const [term, value] of rows) {
    list.appendChild(el("dt", undefined, term));
    list.appendChild(el("dd", undefined, value));
  }
  container.appendChild(list);
}
