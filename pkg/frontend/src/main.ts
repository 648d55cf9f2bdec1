/** Bootstraps the explorer: loads the corpus-wide artifacts, then treats
 *  the screen as a pure function of (artifacts, ExplorerState). The state
 *  lives in the URL hash, so a reload reproduces the view; async renders
 *  are guarded by a version counter so stale fetches never paint. */

import { api } from "./api.js";
import {
  applyFilters,
  ExplorerState,
  Filters,
  parseState,
  selectFactor,
  selectSpeech,
  serializeState,
  setFilters,
  setSubview,
  Subview,
  SUBVIEWS,
} from "./state.js";
import { el } from "./svg.js";
import type { AnalysisEntry, EmbeddingDoc, SpeechSummary } from "./types.js";
import {
  renderRadar,
  renderSimilarity,
  renderStrip,
  renderThumbnails,
} from "./views/allSpeeches.js";
import { renderContext } from "./views/context.js";
import {
  intervalInfo,
  renderInspector,
  renderScript,
  renderSpiral,
  renderTimeline,
  renderTypeStrip,
} from "./views/detail.js";
import { renderDistribution, renderFactorTable } from "./views/factors.js";

interface Artifacts {
  speeches: SpeechSummary[];
  analysis: AnalysisEntry[];
  embedding: EmbeddingDoc;
}

export class Explorer {
  state: ExplorerState;
  private version = 0;
  private inspectedInterval: number | null = null;

  constructor(
    private readonly root: Document,
    private readonly artifacts: Artifacts,
  ) {
    this.state = parseState(root.defaultView?.location.hash ?? "");
    root.defaultView?.addEventListener("hashchange", () => {
      this.state = parseState(root.defaultView?.location.hash ?? "");
      void this.render();
    });
  }

  private knownFactors(): Set<string> {
    return new Set(this.artifacts.analysis.map((a) => a.factor));
  }

  visibleSpeeches(): SpeechSummary[] {
    return applyFilters(this.artifacts.speeches, this.state.filters);
  }

  private commit(next: ExplorerState, toast?: string): void {
    if (toast) this.showToast(toast);
    if (next === this.state) return;
    this.state = next;
    const window = this.root.defaultView;
    if (window) {
      window.location.hash = serializeState(next);
    }
    void this.render();
  }

  showToast(message: string): void {
    const box = this.root.getElementById("toast");
    if (!box) return;
    box.textContent = message;
    box.classList.add("visible");
    setTimeout(() => box.classList.remove("visible"), 2500);
  }

  onSelectFactor = (factor: string): void => {
    const { state, toast } = selectFactor(this.state, factor, this.knownFactors());
    this.commit(state, toast);
  };

  onSelectSpeech = (id: string): void => {
    const visible = new Set(this.visibleSpeeches().map((s) => s.id));
    const { state, toast } = selectSpeech(this.state, id, visible);
    if (state !== this.state) this.inspectedInterval = null;
    this.commit(state, toast);
  };

  onSubview = (view: Subview): void => {
    this.commit(setSubview(this.state, view));
  };

  onFilters = (next: Partial<Filters>): void => {
    let state = setFilters(this.state, next);
    const visible = new Set(applyFilters(this.artifacts.speeches, state.filters).map((s) => s.id));
    if (state.selectedSpeechId && !visible.has(state.selectedSpeechId)) {
      state = { ...state, selectedSpeechId: null };
    }
    this.commit(state);
  };

  onSpiralCircle = (intervalIndex: number): void => {
    this.inspectedInterval = intervalIndex;
    void this.render();
  };

  async render(): Promise<void> {
    const version = ++this.version;
    const fresh = () => version === this.version;
    const state = this.state;
    const byId = (id: string) => this.root.getElementById(id);
    const visible = this.visibleSpeeches();
    const visibleIds = new Set(visible.map((s) => s.id));

    renderFactorTable(byId("factor-table")!, this.artifacts.analysis, state.selectedFactor, this.onSelectFactor);

    const tabs = byId("subview-tabs")!;
    tabs.replaceChildren();
    for (const view of SUBVIEWS) {
      const tab = el("button", view === state.activeSubview ? "tab active" : "tab", view);
      tab.dataset.view = view;
      tab.addEventListener("click", () => this.onSubview(view));
      tabs.appendChild(tab);
    }

    const distBox = byId("distribution")!;
    if (state.selectedFactor) {
      const entry = this.artifacts.analysis.find((a) => a.factor === state.selectedFactor);
      if (entry?.converged) {
        const doc = await api.distribution(state.selectedFactor);
        if (!fresh()) return;
        renderDistribution(distBox, doc);
      } else {
        distBox.replaceChildren(el("p", "hint", "no converged fit for this factor"));
      }
    } else {
      distBox.replaceChildren(el("p", "hint", "select a factor"));
    }

    const main = byId("all-speeches")!;
    const side = byId("all-speeches-side")!;
    if (state.activeSubview === "factor") {
      side.replaceChildren();
      if (state.selectedFactor) {
        const strip = await api.factorStrip(state.selectedFactor);
        if (!fresh()) return;
        renderStrip(main, strip, visibleIds, state.selectedSpeechId, this.onSelectSpeech);
      } else {
        main.replaceChildren(el("p", "hint", "select a factor to compare speeches by level"));
      }
    } else if (state.activeSubview === "similarity") {
      renderSimilarity(main, this.artifacts.embedding, visibleIds, state.selectedSpeechId, this.onSelectSpeech);
      if (state.selectedSpeechId) {
        const radar = await api.radar(state.selectedSpeechId);
        if (!fresh()) return;
        renderRadar(side, radar);
      } else {
        side.replaceChildren(el("p", "hint", "click a dot to see predicted levels"));
      }
    } else {
      side.replaceChildren();
      renderThumbnails(main, visible, state.activeSubview, state.selectedSpeechId, this.onSelectSpeech);
    }

    const detailBoxes = {
      spiral: byId("detail-spiral")!,
      script: byId("detail-script")!,
      type: byId("detail-type")!,
      timeline: byId("detail-timeline")!,
      inspector: byId("detail-inspector")!,
    };
    if (state.selectedSpeechId) {
      const id = state.selectedSpeechId;
      const [speech, spiral, script, typeDoc] = await Promise.all([
        api.speech(id),
        api.spiral(id),
        api.script(id),
        api.typeStrip(id),
      ]);
      if (!fresh()) return;
      renderSpiral(detailBoxes.spiral, spiral, this.onSpiralCircle);
      renderScript(detailBoxes.script, script);
      renderTypeStrip(detailBoxes.type, typeDoc);
      const info =
        this.inspectedInterval === null ? null : intervalInfo(speech, spiral, this.inspectedInterval);
      renderTimeline(detailBoxes.timeline, speech, info?.startS ?? null);
      renderInspector(detailBoxes.inspector, info);
    } else {
      for (const box of Object.values(detailBoxes)) {
        box.replaceChildren(el("p", "hint", "select a speech"));
      }
    }

    const selected = this.artifacts.speeches.find((s) => s.id === state.selectedSpeechId) ?? null;
    renderContext(byId("context")!, selected, this.artifacts.speeches, state.filters, this.onFilters);
  }
}

export async function boot(root: Document): Promise<Explorer> {
  const [speeches, analysis, embedding] = await Promise.all([
    api.speeches(),
    api.analysis(),
    api.embedding(),
  ]);
  const explorer = new Explorer(root, { speeches, analysis, embedding });
  await explorer.render();
  return explorer;
}

declare global {
  interface Window {
    podiumExplorer?: Explorer;
  }
}

if (typeof document !== "undefined" && document.getElementById("factor-table")) {
  void boot(document).then((explorer) => {
    window.podiumExplorer = explorer;
  });
}
