/** Payload shapes of the analytics API (mirrors the server's JSON schemas). */

export interface SpeechSummary {
  id: string;
  title: string;
  speaker: string;
  country: string;
  year: number;
  level: number;
  rank: number | null;
  duration_s: number;
}

export interface FacialSeries {
  fps: number;
  valence: number[];
  arousal: number[];
  emotion: string[];
  confidence: number[];
}

export interface SpeechDetail extends SpeechSummary {
  facial: FacialSeries;
  sentences: {
    start_s: number;
    end_s: number;
    text: string;
    text_valence: number;
    text_arousal: number;
    vocal_valence: number;
    vocal_arousal: number;
  }[];
  words: { word: string; start_s: number; end_s: number }[];
  script: string;
}

export interface AnalysisEntry {
  factor: string;
  beta: number | null;
  cutpoints: (number | null)[];
  p_value: number | null;
  significant: boolean;
  parallel_lines_p: number | null;
  n_used: number;
  converged: boolean;
}

export interface EmbeddingDoc {
  selected_factors: string[];
  points: { id: string; x: number; y: number; level: number }[];
  kl_final: number;
}

export interface RadarDoc {
  speech_id: string;
  axes: string[];
  predicted_levels: (number | null)[];
  missing_axes: string[];
  true_level: number;
}

export interface SpiralCircle {
  cx: number;
  cy: number;
  radius: number;
  color: string;
  opacity: number;
  interval_index: number;
  start_s: number;
}

export interface SpiralDoc {
  kind: "spiral";
  circles: SpiralCircle[];
  turn_points: number[];
  thetas: number[];
  params: { interval_s: number; [k: string]: unknown };
}

export interface GlyphRun {
  text: string;
  x: number;
  y: number;
  font_size: number;
  tracking: number;
  shape_weight: number;
  color: string;
  gap_after: number;
  start_s: number;
}

export interface ScriptDoc {
  kind: "script";
  runs: GlyphRun[];
  width: number;
  line_count: number;
  params: { line_height: number; [k: string]: unknown };
}

export interface TypeDoc {
  kind: "type";
  rects: { x: number; y_center: number; height: number; color: string }[];
  polyline: [number, number][];
  width: number;
  height: number;
}

export interface StripRow {
  level: number;
  label: string;
  color: string;
  dots: [string, number][];
  x25: number;
  median_x: number;
  x75: number;
}

export interface StripDoc {
  kind: "factor-strip";
  factor: string;
  rows: StripRow[];
  x_domain: [number, number];
}

export interface DistributionDoc {
  kind: "distribution";
  factor: string;
  xs: number[];
  lines: number[][];
  colors: string[];
}
