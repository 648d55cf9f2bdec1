/** Level palette: the single source used by every level-colored view.
 *  Values mirror the server's layout palette so static markup and fetched
 *  geometry agree. */

export const LEVEL_COLORS: Record<number, string> = {
  1: "#c6dbef",
  2: "#9ecae1",
  3: "#6baed6",
  4: "#3182bd",
  5: "#08519c",
};

export const LEVEL_NAMES: Record<number, string> = {
  1: "area",
  2: "division",
  3: "district",
  4: "semi-final",
  5: "final",
};

/** Monotone mapping from a glyph's shape weight to its stroke width. */
export function strokeWidthForWeight(weight: number): number {
  return 0.5 + 1.5 * weight;
}
