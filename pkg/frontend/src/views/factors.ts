/** View A: the factor table with p-values, and the level-probability
 *  distribution panel for the selected factor. */

import { LEVEL_COLORS, LEVEL_NAMES } from "../palette.js";
import { clear, el, svgElement, svgRoot } from "../svg.js";
import type { AnalysisEntry, DistributionDoc } from "../types.js";

export function renderFactorTable(
  container: HTMLElement,
  analysis: AnalysisEntry[],
  selectedFactor: string | null,
  onSelect: (factor: string) => void,
): void {
  clear(container);
  container.appendChild(el("h2", "panel-title", "factors"));
  const table = el("table", "factor-table");
  const head = el("tr");
  for (const label of ["factor", "p-value", "beta", "fit"]) {
    head.appendChild(el("th", undefined, label));
  }
  table.appendChild(head);
  for (const entry of analysis) {
    const row = el("tr", entry.factor === selectedFactor ? "selected" : "");
    row.dataset.factor = entry.factor;
    if (entry.significant) row.classList.add("significant");
    row.appendChild(el("td", "factor-name", entry.factor));
    const p = entry.p_value;
    row.appendChild(el("td", "num", p === null ? "-" : p < 1e-4 ? p.toExponential(1) : p.toFixed(4)));
    row.appendChild(el("td", "num", entry.beta === null ? "-" : entry.beta.toFixed(3)));
    row.appendChild(el("td", undefined, entry.converged ? (entry.significant ? "*" : "") : "no fit"));
    row.addEventListener("click", () => onSelect(entry.factor));
    table.appendChild(row);
  }
  container.appendChild(table);
}

/** Five probability curves over the factor's domain; one per level. */
export function renderDistribution(container: HTMLElement, doc: DistributionDoc): void {
  clear(container);
  container.appendChild(el("h3", "panel-title", `level probabilities: ${doc.factor}`));
  const width = 420;
  const height = 180;
  const margin = 14;
  const svg = svgRoot(`0 0 ${width} ${height}`, width, height);
  svg.dataset.factor = doc.factor;
  const lo = doc.xs[0];
  const hi = doc.xs[doc.xs.length - 1];
  const sx = (x: number) => margin + ((x - lo) / (hi - lo || 1)) * (width - 2 * margin);
  const sy = (p: number) => height - margin - p * (height - 2 * margin);
  doc.lines.forEach((line, j) => {
    const points = doc.xs.map((x, i) => `${sx(x).toFixed(2)},${sy(line[i]).toFixed(2)}`).join(" ");
    svg.appendChild(
      svgElement("polyline", {
        points,
        fill: "none",
        stroke: doc.colors[j] ?? LEVEL_COLORS[j + 1],
        "stroke-width": 2,
        "data-level": j + 1,
      }),
    );
  });
  container.appendChild(svg);
  const legend = el("div", "legend");
  for (let level = 1; level <= 5; level++) {
    const item = el("span", "legend-item", LEVEL_NAMES[level]);
    item.style.borderLeft = `10px solid ${LEVEL_COLORS[level]}`;
    legend.appendChild(item);
  }
  container.appendChild(legend);
}
