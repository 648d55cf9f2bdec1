/** View D: metadata of the selected speech plus the country/level filters
 *  (the geographic map is deliberately a plain filter list). */

import { LEVEL_NAMES } from "../palette.js";
import { clear, el } from "../svg.js";
import type { Filters } from "../state.js";
import type { SpeechSummary } from "../types.js";

export function renderContext(
  container: HTMLElement,
  speech: SpeechSummary | null,
  speeches: SpeechSummary[],
  filters: Filters,
  onFilters: (next: Partial<Filters>) => void,
): void {
  clear(container);
  container.appendChild(el("h2", "panel-title", "context"));

  const countries = [...new Set(speeches.map((s) => s.country))].sort();
  const filterBox = el("div", "filters");

  const countrySelect = el("select");
  countrySelect.id = "filter-country";
  countrySelect.appendChild(new Option("all countries", ""));
  for (const c of countries) {
    countrySelect.appendChild(new Option(c, c, false, filters.country === c));
  }
  countrySelect.addEventListener("change", () =>
    onFilters({ country: countrySelect.value || null }),
  );
  filterBox.appendChild(countrySelect);

  const levelSelect = el("select");
  levelSelect.id = "filter-level";
  levelSelect.appendChild(new Option("all levels", ""));
  for (let level = 1; level <= 5; level++) {
    levelSelect.appendChild(
      new Option(LEVEL_NAMES[level], String(level), false, filters.level === level),
    );
  }
  levelSelect.addEventListener("change", () =>
    onFilters({ level: levelSelect.value ? Number(levelSelect.value) : null }),
  );
  filterBox.appendChild(levelSelect);
  container.appendChild(filterBox);

  if (speech === null) {
    container.appendChild(el("p", "hint", "select a speech to see its contest context"));
    return;
  }
  const list = el("dl", "metadata");
  const rows: [string, string][] = [
    ["title", speech.title],
    ["speaker", speech.speaker],
    ["country", speech.country],
    ["year", String(speech.year)],
    ["level", `${speech.level} (${LEVEL_NAMES[speech.level]})`],
    ["rank", speech.rank === null ? "-" : String(speech.rank)],
    ["duration", `${speech.duration_s.toFixed(0)}s`],
  ];
  for (const [term, value] of rows) {
    list.appendChild(el("dt", undefined, term));
    list.appendChild(el("dd", undefined, value));
  }
  container.appendChild(list);
}
