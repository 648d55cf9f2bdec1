/** View B: all-speeches sub-views. B1 renders the per-level strip for the
 *  selected factor, the similarity tab shows the embedding scatter with a
 *  radar panel for the clicked speech, and the remaining tabs aggregate
 *  per-speech thumbnails grouped by level (geometry always comes from the
 *  server; nothing is recomputed client side). */

import { LEVEL_COLORS, LEVEL_NAMES } from "../palette.js";
import { clear, el, svgElement, svgRoot } from "../svg.js";
import type { EmbeddingDoc, RadarDoc, SpeechSummary, StripDoc } from "../types.js";

export function renderStrip(
  container: HTMLElement,
  doc: StripDoc,
  visibleIds: ReadonlySet<string>,
  selectedSpeechId: string | null,
  onSelect: (id: string) => void,
): void {
  clear(container);
  container.appendChild(el("h3", "panel-title", `distribution by level: ${doc.factor}`));
  const width = 460;
  const rowH = 34;
  const margin = 24;
  const [lo, hi] = doc.x_domain;
  const sx = (v: number) => margin + ((v - lo) / (hi - lo || 1)) * (width - 2 * margin);
  const svg = svgRoot(`0 0 ${width} ${doc.rows.length * rowH}`, width, doc.rows.length * rowH);
  svg.dataset.factor = doc.factor;
  doc.rows.forEach((row, i) => {
    const cy = (i + 0.5) * rowH;
    svg.appendChild(
      svgElement("rect", {
        x: sx(row.x25),
        y: cy - 8,
        width: Math.max(0, sx(row.x75) - sx(row.x25)),
        height: 16,
        fill: row.color,
        "fill-opacity": 0.4,
      }),
    );
    svg.appendChild(
      svgElement("line", {
        x1: sx(row.median_x), y1: cy - 10, x2: sx(row.median_x), y2: cy + 10,
        stroke: "#08306b", "stroke-width": 2,
      }),
    );
    for (const [id, value] of row.dots) {
      if (!visibleIds.has(id)) continue;
      const dot = svgElement("circle", {
        cx: sx(value), cy, r: id === selectedSpeechId ? 5 : 3,
        fill: row.color, stroke: "#333", "stroke-width": 0.5,
        "data-id": id,
      });
      dot.addEventListener("click", () => onSelect(id));
      svg.appendChild(dot);
    }
    svg.appendChild(
      svgElement("text", { x: 2, y: cy + 4, "font-size": 10, fill: "#333" }),
    ).textContent = row.label;
  });
  container.appendChild(svg);
}

export function renderSimilarity(
  container: HTMLElement,
  embedding: EmbeddingDoc,
  visibleIds: ReadonlySet<string>,
  selectedSpeechId: string | null,
  onSelect: (id: string) => void,
): void {
  clear(container);
  container.appendChild(
    el("h3", "panel-title", `similarity map (factors: ${embedding.selected_factors.join(", ")})`),
  );
  const size = 320;
  const margin = 16;
  const xs = embedding.points.map((p) => p.x);
  const ys = embedding.points.map((p) => p.y);
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yLo = Math.min(...ys);
  const yHi = Math.max(...ys);
  const sx = (x: number) => margin + ((x - xLo) / (xHi - xLo || 1)) * (size - 2 * margin);
  const sy = (y: number) => margin + ((y - yLo) / (yHi - yLo || 1)) * (size - 2 * margin);
  const svg = svgRoot(`0 0 ${size} ${size}`, size, size);
  svg.classList.add("similarity-map");
  for (const point of embedding.points) {
    if (!visibleIds.has(point.id)) continue;
    const dot = svgElement("circle", {
      cx: sx(point.x), cy: sy(point.y), r: point.id === selectedSpeechId ? 6 : 4,
      fill: LEVEL_COLORS[point.level], stroke: "#222", "stroke-width": 0.6,
      "data-id": point.id, "data-level": point.level,
    });
    dot.addEventListener("click", () => onSelect(point.id));
    svg.appendChild(dot);
  }
  container.appendChild(svg);
}

/** Radar of predicted levels for the selected speech's critical factors:
 *  radius fraction 0.2..1.0 maps level 1..5. */
export function renderRadar(container: HTMLElement, doc: RadarDoc): void {
  clear(container);
  container.appendChild(el("h3", "panel-title", `predicted levels: ${doc.speech_id}`));
  const size = 260;
  const center = size / 2;
  const rMax = size / 2 - 30;
  const radiusFor = (level: number) => rMax * (0.2 + 0.8 * ((level - 1) / 4));
  const angleFor = (i: number) => -Math.PI / 2 + (2 * Math.PI * i) / doc.axes.length;
  const svg = svgRoot(`0 0 ${size} ${size}`, size, size);
  svg.classList.add("radar");
  for (let level = 1; level <= 5; level++) {
    const ring = doc.axes
      .map((_, i) => {
        const a = angleFor(i);
        const r = radiusFor(level);
        return `${(center + r * Math.cos(a)).toFixed(1)},${(center + r * Math.sin(a)).toFixed(1)}`;
      })
      .join(" ");
    svg.appendChild(
      svgElement("polygon", { points: ring, fill: "none", stroke: "#ddd", "data-ring": level }),
    );
  }
  const filled: string[] = [];
  doc.axes.forEach((axis, i) => {
    const a = angleFor(i);
    const predicted = doc.predicted_levels[i];
    const label = svgElement("text", {
      x: center + (rMax + 12) * Math.cos(a),
      y: center + (rMax + 12) * Math.sin(a),
      "font-size": 8,
      "text-anchor": "middle",
      fill: doc.missing_axes.includes(axis) ? "#bbb" : "#333",
    });
    label.textContent = doc.missing_axes.includes(axis) ? `${axis} (n/a)` : axis;
    svg.appendChild(label);
    if (predicted !== null) {
      const r = radiusFor(predicted);
      filled.push(`${(center + r * Math.cos(a)).toFixed(1)},${(center + r * Math.sin(a)).toFixed(1)}`);
    }
  });
  if (filled.length >= 3) {
    svg.appendChild(
      svgElement("polygon", {
        points: filled.join(" "),
        fill: LEVEL_COLORS[doc.true_level],
        "fill-opacity": 0.45,
        stroke: LEVEL_COLORS[doc.true_level],
        "stroke-width": 2,
        "data-role": "prediction",
      }),
    );
  }
  container.appendChild(svg);
  container.appendChild(
    el("p", "radar-caption", `true level: ${LEVEL_NAMES[doc.true_level]}`),
  );
}

/** Aggregated thumbnails grouped by level for the spiral/script/type tabs. */
export function renderThumbnails(
  container: HTMLElement,
  speeches: SpeechSummary[],
  kind: "spiral" | "script" | "type",
  selectedSpeechId: string | null,
  onSelect: (id: string) => void,
): void {
  clear(container);
  container.appendChild(el("h3", "panel-title", `${kind} thumbnails by level`));
  for (let level = 5; level >= 1; level--) {
    const group = speeches.filter((s) => s.level === level);
    if (!group.length) continue;
    const rowEl = el("div", "thumb-row");
    const tag = el("span", "thumb-level", LEVEL_NAMES[level]);
    tag.style.background = LEVEL_COLORS[level];
    rowEl.appendChild(tag);
    for (const speech of group) {
      const card = el("button", "thumb", speech.id);
      card.dataset.id = speech.id;
      if (speech.id === selectedSpeechId) card.classList.add("selected");
      card.appendChild(el("img")).setAttribute(
        "data-src",
        `/api/layout/${kind}/${speech.id}`,
      );
      card.addEventListener("click", () => onSelect(speech.id));
      rowEl.appendChild(card);
    }
    container.appendChild(rowEl);
  }
}
