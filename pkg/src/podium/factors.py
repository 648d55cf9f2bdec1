"""Per-speech factor computation.

Every operation here is a pure function of its inputs. A failure computing
one factor for one speech becomes a missing (NaN) cell in the table, never
a crash.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .corpus import AlignedTriples, Corpus, WordRecord, align_sentences
from .palette import EMOTIONS

MEAN_EPS = 1e-6  # cross-modal triples with |mean| below this are excluded

FACTOR_COLUMNS = tuple(
    [f"{m}_{k}_average" for m in ("facial", "textual", "vocal") for k in ("arousal", "valence")]
    + [f"{m}_{k}_volatility" for m in ("facial", "textual", "vocal") for k in ("arousal", "valence")]
    + ["facial_diversity", "facial_final_arousal", "facial_final_valence"]
    + ["coherence_arousal", "coherence_valence"]
    + [f"ratio_{e}" for e in EMOTIONS]
    + ["mean_pause_s", "vocabulary"]
)


@dataclass(frozen=True)
class Series:
    """A single-modality time series of valence or arousal samples."""

    values: tuple[float, ...]
    modality: str = ""
    kind: str = ""


@dataclass(frozen=True)
class PauseStats:
    mean_pause_s: float
    total_pause_s: float
    words_per_minute: float


@dataclass(frozen=True)
class FactorTable:
    """Speeches x factors matrix; NaN marks a missing cell."""

    speech_ids: tuple[str, ...]
    factor_names: tuple[str, ...]
    values: np.ndarray

    def column(self, factor: str) -> np.ndarray:
        if factor not in self.factor_names:
            raise KeyError(f"unknown factor {factor!r}")
        return self.values[:, self.factor_names.index(factor)]

    def row(self, speech_id: str) -> np.ndarray:
        if speech_id not in self.speech_ids:
            raise KeyError(f"unknown speech {speech_id!r}")
        return self.values[self.speech_ids.index(speech_id), :]


def _values(series) -> np.ndarray:
    vals = getattr(series, "values", series)
    return np.asarray(vals, dtype=float)


def average(series) -> float:
    """Arithmetic mean of the series."""
    v = _values(series)
    if v.size == 0:
        raise ValueError("empty series")
    return float(v.sum() / v.size)


def volatility(series) -> float:
    """Root of the summed squared one-step differences after min-max
    normalizing the series to [0, 1]. A constant series has volatility 0."""
    v = _values(series)
    if v.size < 2:
        raise ValueError("volatility needs at least 2 samples")
    lo, hi = float(v.min()), float(v.max())
    if hi == lo:
        return 0.0
    norm = (v - lo) / (hi - lo)
    diff = np.diff(norm)
    return float(math.sqrt(float(diff @ diff)))


def diversity(emotions) -> float:
    """Sum of r*ln(r) over the emotion types present; always <= 0, with 0
    meaning a single type and -ln(7) the uniform seven-type mix."""
    labels = list(emotions)
    if not labels:
        raise ValueError("empty emotion list")
    n = len(labels)
    total = 0.0
    for label in sorted(set(labels)):
        r = labels.count(label) / n
        total += r * math.log(r)
    return total


def coherence(aligned: AlignedTriples, kind: str) -> float:
    """Mean cross-modal coefficient of variation: population std over the
    three modalities divided by their mean, averaged over sentences.

    Triples whose |mean| < MEAN_EPS are excluded (the ratio is undefined
    there); the average runs over the included triples only."""
    if kind not in ("valence", "arousal"):
        raise ValueError(f"kind must be valence or arousal, got {kind!r}")
    triples = aligned.valence if kind == "valence" else aligned.arousal
    total = 0.0
    used = 0
    for w, v, f in triples:
        mean = (w + v + f) / 3.0
        if abs(mean) < MEAN_EPS:
            continue
        std = math.sqrt(((w - mean) ** 2 + (v - mean) ** 2 + (f - mean) ** 2) / 3.0)
        total += std / mean
        used += 1
    if used == 0:
        raise ValueError("no valid triples")
    return total / used


def final_segment(series, mode: str = "literal") -> float:
    """Weight of the last 20% of the series.

    literal: sum of the last w = round(0.2*T) samples divided by T.
    window_mean: the same sum divided by w.
    """
    v = _values(series)
    t = v.size
    if t < 5:
        raise ValueError("final segment needs at least 5 samples")
    w = max(1, int(math.floor(0.2 * t + 0.5)))
    window_sum = float(v[-w:].sum())
    if mode == "literal":
        return window_sum / t
    if mode == "window_mean":
        return window_sum / w
    raise ValueError(f"unknown mode {mode!r}")


def emotion_ratio(emotions, target: str) -> float:
    """Fraction of samples labeled `target`; the seven ratios partition 1."""
    labels = list(emotions)
    if not labels:
        raise ValueError("empty emotion list")
    if target not in EMOTIONS:
        raise ValueError(f"unknown emotion label {target!r}")
    return labels.count(target) / len(labels)


def pause_stats(words: list[WordRecord] | tuple[WordRecord, ...], duration_s: float) -> PauseStats:
    """Inter-word pause statistics plus speaking rate."""
    if len(words) < 2:
        raise ValueError("pause statistics need at least 2 words")
    if duration_s <= 0:
        raise ValueError("duration must be positive")
    gaps = [max(0.0, words[i + 1].start_s - words[i].end_s) for i in range(len(words) - 1)]
    total = sum(gaps)
    return PauseStats(
        mean_pause_s=total / len(gaps),
        total_pause_s=total,
        words_per_minute=60.0 * len(words) / duration_s,
    )


_WORD_RE = re.compile(r"[A-Za-z']+|\d+(?:\.\d+)?")


def vocabulary_level(script: str, familiar: frozenset[str] | set[str]) -> float:
    """Dale-Chall style readability: 0.1579*PDW + 0.0496*ASL, plus 3.6365
    when PDW exceeds 5. PDW is the percentage of words outside the familiar
    set (numerals count as familiar), ASL the mean words per sentence."""
    sentences = [s for s in re.split(r"[.!?]+", script) if s.strip()]
    tokens = _WORD_RE.findall(script)
    if not sentences or not tokens:
        raise ValueError("script has no parseable sentences")
    difficult = sum(
        1 for tok in tokens if not tok[0].isdigit() and tok.lower() not in familiar
    )
    pdw = 100.0 * difficult / len(tokens)
    asl = len(tokens) / len(sentences)
    score = 0.1579 * pdw + 0.0496 * asl
    if pdw > 5.0:
        score += 3.6365
    return score


def _sentence_series(record, modality: str, kind: str) -> tuple[float, ...]:
    attr = {"textual": "text", "vocal": "vocal"}[modality] + "_" + kind
    return tuple(getattr(s, attr) for s in record.sentences)


def compute_factor_table(corpus: Corpus) -> FactorTable:
    """All factors for all speeches, columns fixed to FACTOR_COLUMNS order."""
    if len(corpus) == 0:
        raise ValueError("empty corpus")

    rows = []
    for rec in corpus:
        cells: dict[str, float] = {}

        series = {
            ("facial", "arousal"): rec.facial.arousal,
            ("facial", "valence"): rec.facial.valence,
            ("textual", "arousal"): _sentence_series(rec, "textual", "arousal"),
            ("textual", "valence"): _sentence_series(rec, "textual", "valence"),
            ("vocal", "arousal"): _sentence_series(rec, "vocal", "arousal"),
            ("vocal", "valence"): _sentence_series(rec, "vocal", "valence"),
        }
        for (m, k), vals in series.items():
            cells[f"{m}_{k}_average"] = _try(average, vals)
            cells[f"{m}_{k}_volatility"] = _try(volatility, vals)

        cells["facial_diversity"] = _try(diversity, rec.facial.emotion)
        cells["facial_final_arousal"] = _try(final_segment, rec.facial.arousal)
        cells["facial_final_valence"] = _try(final_segment, rec.facial.valence)

        aligned = None
        try:
            aligned = align_sentences(rec)
        except ValueError:
            pass
        for kind in ("arousal", "valence"):
            cells[f"coherence_{kind}"] = (
                _try(coherence, aligned, kind) if aligned is not None else math.nan
            )

        for e in EMOTIONS:
            cells[f"ratio_{e}"] = _try(emotion_ratio, rec.facial.emotion, e)

        try:
            cells["mean_pause_s"] = pause_stats(rec.words, rec.duration_s).mean_pause_s
        except ValueError:
            cells["mean_pause_s"] = math.nan

        if corpus.familiar_words:
            cells["vocabulary"] = _try(vocabulary_level, rec.script, corpus.familiar_words)
        else:
            cells["vocabulary"] = math.nan

        rows.append([cells[name] for name in FACTOR_COLUMNS])

    return FactorTable(
        speech_ids=tuple(r.id for r in corpus),
        factor_names=FACTOR_COLUMNS,
        values=np.array(rows, dtype=float),
    )


def _try(fn, *args) -> float:
    try:
        return float(fn(*args))
    except (ValueError, ZeroDivisionError):
        return math.nan


def factor_table_to_csv(table: FactorTable) -> str:
    """CSV export with header `speech_id,<factors...>`; missing cells empty."""
    lines = ["speech_id," + ",".join(table.factor_names)]
    for i, sid in enumerate(table.speech_ids):
        cells = [
            "" if math.isnan(v) else repr(float(v))
            for v in table.values[i, :]
        ]
        lines.append(sid + "," + ",".join(cells))
    return "\n".join(lines) + "\n"


def factor_table_from_csv(text: str) -> FactorTable:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = lines[0].split(",")
    names = tuple(header[1:])
    ids = []
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        ids.append(parts[0])
        rows.append([math.nan if c == "" else float(c) for c in parts[1:]])
    return FactorTable(speech_ids=tuple(ids), factor_names=names, values=np.array(rows, dtype=float))
