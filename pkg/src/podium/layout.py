"""Renderer-agnostic geometry for the five visualization forms.

Every function here is a pure mapping from record/table data plus params to
plain dataclasses of coordinates and style attributes; SVG emission lives in
`podium.svg`, and the browser UI consumes the same JSON shapes.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .corpus import SpeechRecord
from .factors import FactorTable
from .ordinal import OrdinalFit, level_probabilities
from .palette import EMOTION_COLORS, LEVEL_COLORS, LEVEL_NAMES


@dataclass(frozen=True)
class SpiralParams:
    delta_r: float = 0.04
    interval_s: float = 5.0
    flip_threshold: float = 10.0
    theta_0: float = 0.0
    r_0: float = 0.04  # defaults to delta_r so the first circle clears the origin
    circle_r_min: float = 0.01
    circle_r_max: float = 0.02


@dataclass(frozen=True)
class ScriptParams:
    max_width: float = 800.0
    font_min: float = 12.0
    font_max: float = 28.0
    base_gap: float = 6.0
    gap_per_pause_s: float = 30.0
    pause_cap_s: float = 2.0
    tracking_per_s_per_char: float = 20.0
    tracking_max: float = 6.0
    line_height: float = 40.0


@dataclass(frozen=True)
class TypeParams:
    width: float = 800.0
    height: float = 200.0
    samples: int = 200


@dataclass(frozen=True)
class EmotionAccumulator:
    """Per 5-second interval: summed valence, dominant label, mean arousal
    and confidence. Empty intervals carry zero sum and inherit the previous
    interval's label/arousal/confidence."""

    interval_s: float
    cumulative_valence: tuple[float, ...]
    dominant_emotion: tuple[str, ...]
    mean_arousal: tuple[float, ...]
    mean_confidence: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.cumulative_valence)


@dataclass(frozen=True)
class SpiralCircle:
    cx: float
    cy: float
    radius: float
    color: str
    opacity: float
    interval_index: int
    start_s: float


@dataclass(frozen=True)
class SpiralLayout:
    circles: tuple[SpiralCircle, ...]
    turn_points: tuple[int, ...]
    thetas: tuple[float, ...]
    params: dict


@dataclass(frozen=True)
class GlyphRun:
    text: str
    x: float
    y: float
    font_size: float
    tracking: float
    shape_weight: float
    color: str
    gap_after: float
    start_s: float


@dataclass(frozen=True)
class ScriptLayout:
    runs: tuple[GlyphRun, ...]
    width: float
    line_count: int
    params: dict


@dataclass(frozen=True)
class TypeRect:
    x: float
    y_center: float
    height: float
    color: str


@dataclass(frozen=True)
class TypeLayout:
    rects: tuple[TypeRect, ...]
    polyline: tuple[tuple[float, float], ...]
    width: float
    height: float


@dataclass(frozen=True)
class StripRow:
    level: int
    label: str
    color: str
    dots: tuple[tuple[str, float], ...]  # (speech_id, value)
    x25: float
    median_x: float
    x75: float


@dataclass(frozen=True)
class StripLayout:
    factor: str
    rows: tuple[StripRow, ...]
    x_domain: tuple[float, float]


@dataclass(frozen=True)
class DistributionLayout:
    factor: str
    xs: tuple[float, ...]
    lines: tuple[tuple[float, ...], ...]  # one y-tuple per level 1..5
    colors: tuple[str, ...] = field(default_factory=lambda: tuple(LEVEL_COLORS[j] for j in (1, 2, 3, 4, 5)))


def accumulate_intervals(speech: SpeechRecord, interval_s: float = 5.0) -> EmotionAccumulator:
    """Bucket the facial series into [k*interval, (k+1)*interval) windows."""
    n_frames = len(speech.facial.valence)
    if n_frames == 0:
        raise ValueError("empty facial series")
    n_intervals = max(1, math.ceil(speech.duration_s / interval_s))
    sums = [0.0] * n_intervals
    arousals: list[list[float]] = [[] for _ in range(n_intervals)]
    confidences: list[list[float]] = [[] for _ in range(n_intervals)]
    labels: list[list[str]] = [[] for _ in range(n_intervals)]
    for k in range(n_frames):
        t = k / speech.facial.fps
        i = min(int(t // interval_s), n_intervals - 1)
        sums[i] += speech.facial.valence[k]
        arousals[i].append(speech.facial.arousal[k])
        confidences[i].append(speech.facial.confidence[k])
        labels[i].append(speech.facial.emotion[k])

    dominant: list[str] = []
    mean_aro: list[float] = []
    mean_conf: list[float] = []
    for i in range(n_intervals):
        if labels[i]:
            # modal label; ties resolve to the earliest-seen label
            best, best_count = None, -1
            seen = []
            for lab in labels[i]:
                if lab not in seen:
                    seen.append(lab)
            for lab in seen:
                c = labels[i].count(lab)
                if c > best_count:
                    best, best_count = lab, c
            dominant.append(best)
            mean_aro.append(sum(arousals[i]) / len(arousals[i]))
            mean_conf.append(sum(confidences[i]) / len(confidences[i]))
        else:
            dominant.append(dominant[-1] if dominant else "neutral")
            mean_aro.append(mean_aro[-1] if mean_aro else 0.0)
            mean_conf.append(mean_conf[-1] if mean_conf else 1.0)

    return EmotionAccumulator(
        interval_s=interval_s,
        cumulative_valence=tuple(sums),
        dominant_emotion=tuple(dominant),
        mean_arousal=tuple(mean_aro),
        mean_confidence=tuple(mean_conf),
    )


def winding_signs(cumulative: tuple[float, ...] | list[float], flip_threshold: float) -> list[int]:
    """Per-interval winding direction: starts at the sign of the first
    interval sum, flips when consecutive sums change sign by more than the
    threshold."""
    e = list(cumulative)
    signs = [1 if e[0] >= 0 else -1]
    for i in range(1, len(e)):
        prev = signs[-1]
        if e[i] * e[i - 1] < 0 and abs(e[i] - e[i - 1]) > flip_threshold:
            signs.append(-prev)
        else:
            signs.append(prev)
    return signs


def spiral_layout(acc: EmotionAccumulator, params: SpiralParams | None = None) -> SpiralLayout:
    """Circles on an expanding spiral, one per interval; winding direction
    carries the sign shifts of the accumulated valence."""
    params = params or SpiralParams()
    n = len(acc)
    if n == 0:
        raise ValueError("no intervals")
    signs = winding_signs(acc.cumulative_valence, params.flip_threshold)
    turn_points = tuple(i for i in range(1, n) if signs[i] != signs[i - 1])

    circles = []
    thetas = []
    theta = params.theta_0
    for i in range(n):
        if i > 0:
            theta = theta + 2.0 * math.pi * params.delta_r * signs[i]
        radius = params.r_0 + i * params.delta_r
        size = params.circle_r_min + acc.mean_arousal[i] * (params.circle_r_max - params.circle_r_min)
        circles.append(
            SpiralCircle(
                cx=radius * math.cos(theta),
                cy=radius * math.sin(theta),
                radius=size,
                color=EMOTION_COLORS[acc.dominant_emotion[i]],
                opacity=acc.mean_confidence[i],
                interval_index=i,
                start_s=i * acc.interval_s,
            )
        )
        thetas.append(theta)
    return SpiralLayout(
        circles=tuple(circles),
        turn_points=turn_points,
        thetas=tuple(thetas),
        params=asdict(params),
    )


def _word_color(valence: float, arousal: float) -> str:
    hue = 120.0 * (1.0 - valence)  # -1 -> 240 (blue), +1 -> 0 (red)
    lightness = 50.0 - 15.0 * arousal
    return f"hsl({hue:.1f},70%,{lightness:.1f}%)"


def script_layout(speech: SpeechRecord, params: ScriptParams | None = None) -> ScriptLayout:
    """Word glyph runs: size/shape from sentence arousal, tracking from word
    speed, gaps from pauses (capped), color from sentence valence."""
    params = params or ScriptParams()
    if not speech.words or not speech.sentences:
        raise ValueError("words and sentences required")

    def enclosing_sentence(t: float):
        for s in speech.sentences:
            if s.start_s <= t < s.end_s:
                return s
        return min(speech.sentences, key=lambda s: min(abs(s.start_s - t), abs(s.end_s - t)))

    runs = []
    x = 0.0
    y = params.line_height
    lines = 1
    for i, w in enumerate(speech.words):
        s = enclosing_sentence(w.start_s)
        arousal = max(s.text_arousal, s.vocal_arousal)
        valence = 0.5 * (s.text_valence + s.vocal_valence)
        font_size = params.font_min + arousal * (params.font_max - params.font_min)
        secs_per_char = (w.end_s - w.start_s) / max(1, len(w.word))
        tracking = min(params.tracking_max, params.tracking_per_s_per_char * secs_per_char)
        width = len(w.word) * 0.6 * font_size + tracking * max(0, len(w.word) - 1)
        if x > 0 and x + width > params.max_width:
            x = 0.0
            y += params.line_height
            lines += 1
        if i + 1 < len(speech.words):
            pause = max(0.0, speech.words[i + 1].start_s - w.end_s)
            gap = params.base_gap + params.gap_per_pause_s * min(pause, params.pause_cap_s)
        else:
            gap = params.base_gap
        runs.append(
            GlyphRun(
                text=w.word,
                x=x,
                y=y,
                font_size=font_size,
                tracking=tracking,
                shape_weight=arousal,
                color=_word_color(valence, arousal),
                gap_after=gap,
                start_s=w.start_s,
            )
        )
        x += width + gap
    return ScriptLayout(runs=tuple(runs), width=params.max_width, line_count=lines, params=asdict(params))


def type_layout(speech: SpeechRecord, params: TypeParams | None = None) -> TypeLayout:
    """Resample the facial series at `samples` midpoints; one rectangle per
    sample (height = arousal, vertical position = valence, color = label)
    plus the valence polyline through the rectangle centers."""
    params = params or TypeParams()
    n_frames = len(speech.facial.valence)
    if n_frames < 1:
        raise ValueError("empty facial series")
    rect_w = params.width / params.samples
    rects = []
    centers = []
    for k in range(params.samples):
        t = (k + 0.5) * speech.duration_s / params.samples
        idx = min(n_frames - 1, max(0, int(round(t * speech.facial.fps))))
        arousal = speech.facial.arousal[idx]
        valence = speech.facial.valence[idx]
        y_center = params.height * (1.0 - valence) / 2.0
        rects.append(
            TypeRect(
                x=k * rect_w,
                y_center=y_center,
                height=arousal * params.height,
                color=EMOTION_COLORS[speech.facial.emotion[idx]],
            )
        )
        centers.append((k * rect_w + rect_w / 2.0, y_center))
    return TypeLayout(rects=tuple(rects), polyline=tuple(centers), width=params.width, height=params.height)


def _percentile(values: np.ndarray, q: float) -> float:
    return float(np.percentile(values, q, method="linear"))


def factor_strip_layout(table: FactorTable, factor: str, levels: dict[str, int]) -> StripLayout:
    """Dots plus interquartile box and median per level row; the x domain is
    the factor's observed range over all speeches."""
    col = table.column(factor)
    finite = np.isfinite(col)
    if not finite.any():
        raise ValueError(f"factor {factor!r} has no values")
    x_domain = (float(col[finite].min()), float(col[finite].max()))

    rows = []
    for level in (1, 2, 3, 4, 5):
        pairs = [
            (sid, float(col[i]))
            for i, sid in enumerate(table.speech_ids)
            if finite[i] and levels[sid] == level
        ]
        if not pairs:
            continue
        vals = np.array([v for _, v in pairs])
        rows.append(
            StripRow(
                level=level,
                label=LEVEL_NAMES[level],
                color=LEVEL_COLORS[level],
                dots=tuple(pairs),
                x25=_percentile(vals, 25),
                median_x=_percentile(vals, 50),
                x75=_percentile(vals, 75),
            )
        )
    return StripLayout(factor=factor, rows=tuple(rows), x_domain=x_domain)


def distribution_layout(fit: OrdinalFit, domain: tuple[float, float], samples: int = 101) -> DistributionLayout:
    """Level-probability curves across the factor's domain."""
    lo, hi = domain
    if not lo < hi:
        raise ValueError("domain must have min < max")
    xs = np.linspace(lo, hi, samples)
    probs = np.array([level_probabilities(fit, float(x)) for x in xs])
    return DistributionLayout(
        factor=fit.factor_name,
        xs=tuple(float(x) for x in xs),
        lines=tuple(tuple(float(v) for v in probs[:, j]) for j in range(5)),
    )


def layout_to_json(layout) -> dict:
    """Dataclass layout -> plain JSON-ready dict, tagged with its kind."""
    kind = {
        SpiralLayout: "spiral",
        ScriptLayout: "script",
        TypeLayout: "type",
        StripLayout: "factor-strip",
        DistributionLayout: "distribution",
    }[type(layout)]
    doc = asdict(layout)
    doc["kind"] = kind
    return doc
