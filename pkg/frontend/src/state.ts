/** Explorer state and its URL-hash serialization.
 *
 *  The state is the single input (besides server artifacts) that determines
 *  the screen, so a reload with the same hash reproduces the same view.
 *  Transitions are pure: they return a new state plus an optional notice.
 */

export type Subview = "factor" | "similarity" | "spiral" | "script" | "type";

export const SUBVIEWS: Subview[] = ["factor", "similarity", "spiral", "script", "type"];

export interface Filters {
  country: string | null;
  level: number | null;
}

export interface ExplorerState {
  selectedFactor: string | null;
  selectedSpeechId: string | null;
  activeSubview: Subview;
  filters: Filters;
  /** transient hover target; never serialized */
  hover: string | null;
}

export const initialState: ExplorerState = {
  selectedFactor: null,
  selectedSpeechId: null,
  activeSubview: "factor",
  filters: { country: null, level: null },
  hover: null,
};

export function serializeState(state: ExplorerState): string {
  const params = new URLSearchParams();
  if (state.selectedFactor) params.set("factor", state.selectedFactor);
  if (state.selectedSpeechId) params.set("speech", state.selectedSpeechId);
  if (state.activeSubview !== "factor") params.set("view", state.activeSubview);
  if (state.filters.country) params.set("country", state.filters.country);
  if (state.filters.level !== null) params.set("level", String(state.filters.level));
  return params.toString();
}

export function parseState(hash: string): ExplorerState {
  const params = new URLSearchParams(hash.replace(/^#/, ""));
  const view = params.get("view");
  const levelRaw = params.get("level");
  const level = levelRaw === null ? null : Number(levelRaw);
  return {
    selectedFactor: params.get("factor"),
    selectedSpeechId: params.get("speech"),
    activeSubview: SUBVIEWS.includes(view as Subview) ? (view as Subview) : "factor",
    filters: {
      country: params.get("country"),
      level: level !== null && Number.isInteger(level) && level >= 1 && level <= 5 ? level : null,
    },
    hover: null,
  };
}

export interface Transition {
  state: ExplorerState;
  /** user-visible notice when the request was a no-op */
  toast?: string;
}

export function selectFactor(
  state: ExplorerState,
  factor: string,
  knownFactors: ReadonlySet<string>,
): Transition {
  if (!knownFactors.has(factor)) {
    return { state, toast: `unknown factor: ${factor}` };
  }
  if (state.selectedFactor === factor) {
    return { state };
  }
  return { state: { ...state, selectedFactor: factor } };
}

export function selectSpeech(
  state: ExplorerState,
  speechId: string,
  visibleIds: ReadonlySet<string>,
): Transition {
  if (!visibleIds.has(speechId)) {
    return { state, toast: `speech ${speechId} is not in the current selection` };
  }
  if (state.selectedSpeechId === speechId) {
    return { state };
  }
  return { state: { ...state, selectedSpeechId: speechId } };
}

export function setSubview(state: ExplorerState, view: Subview): ExplorerState {
  return state.activeSubview === view ? state : { ...state, activeSubview: view };
}

export function setFilters(state: ExplorerState, filters: Partial<Filters>): ExplorerState {
  return { ...state, filters: { ...state.filters, ...filters } };
}

export function applyFilters<T extends { country: string; level: number }>(
  speeches: T[],
  filters: Filters,
): T[] {
  return speeches.filter(
    (s) =>
      (filters.country === null || s.country === filters.country) &&
      (filters.level === null || s.level === filters.level),
  );
}
