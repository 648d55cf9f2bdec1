"""Deterministic synthetic corpus generator.

Stands in for a real contest-video dataset in tests and demos. One factor
(`planted_factor`) gets a per-level mean shift so its relation to level is
recoverable by the ordinal analysis; one factor (`decoy_factor`) is drawn
level-independent by construction.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, FacialSeries, SentenceRecord, SpeechRecord, WordRecord
from .palette import EMOTIONS

# (modality, kind) channels whose per-speech mean can carry a planted shift.
PLANTABLE_FACTORS = tuple(
    f"{modality}_{kind}_average"
    for modality in ("facial", "textual", "vocal")
    for kind in ("arousal", "valence")
)

_COUNTRIES = ("US", "CN", "IN", "GB", "CA", "JP", "DE", "BR")

_HARD_WORDS = (
    "magnanimous", "perseverance", "extraordinary", "quintessential", "resilience",
    "arduous", "eloquence", "ubiquitous", "catalyst", "epiphany",
    "tenacity", "audacious", "profound", "meticulous", "iridescent",
    "sonorous", "venerable", "luminous", "indomitable", "transcend",
)


@dataclass(frozen=True)
class SynthConfig:
    speeches_per_level: int = 8
    duration_range: tuple[float, float] = (60.0, 120.0)
    fps: float = 2.0
    planted_factor: str = "facial_arousal_average"
    level_shift: float = 0.08
    decoy_factor: str = "textual_valence_average"
    base_year: int = 2015


def default_familiar_words() -> frozenset[str]:
    """The 200-word familiar list shipped with the package."""
    text = importlib.resources.files("podium.data").joinpath("familiar_words.txt").read_text("utf-8")
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def _channel_of(factor_name: str) -> tuple[str, str]:
    modality, kind, _ = factor_name.split("_", 2)
    return modality, kind


def _clip(v: float, lo: float, hi: float) -> float:
    return float(min(hi, max(lo, v)))


def _ar1(rng: np.random.Generator, n: int, center: float, sigma: float, lo: float, hi: float) -> np.ndarray:
    """Mean-reverting walk clipped to the canonical range."""
    out = np.empty(n)
    x = center
    for t in range(n):
        x = center + 0.9 * (x - center) + rng.normal(0.0, sigma)
        x = min(hi, max(lo, x))
        out[t] = x
    return out


def synth_corpus(config: SynthConfig, seed: int) -> Corpus:
    """Generate a validated corpus, a pure function of (config, seed)."""
    if config.speeches_per_level <= 0:
        raise ValueError("speeches_per_level must be positive")
    if config.planted_factor not in PLANTABLE_FACTORS:
        raise ValueError(f"unknown planted factor {config.planted_factor!r}; choose from {PLANTABLE_FACTORS}")
    if config.decoy_factor not in PLANTABLE_FACTORS:
        raise ValueError(f"unknown decoy factor {config.decoy_factor!r}; choose from {PLANTABLE_FACTORS}")

    rng = np.random.default_rng(seed)
    familiar = default_familiar_words()
    bank = sorted(familiar)
    planted_channel = _channel_of(config.planted_factor)

    records = []
    idx = 0
    for level in (1, 2, 3, 4, 5):
        for _ in range(config.speeches_per_level):
            records.append(_synth_speech(rng, config, level, idx, bank, planted_channel))
            idx += 1
    ordered = tuple(sorted(records, key=lambda r: r.id))
    return Corpus(records=ordered, familiar_words=familiar)


def _center(rng: np.random.Generator, modality: str, kind: str, level: int,
            config: SynthConfig, planted: tuple[str, str]) -> float:
    base = {"arousal": 0.35, "valence": 0.10}[kind]
    if (modality, kind) == planted:
        base += config.level_shift * (level - 1)
    jitter = float(np.clip(rng.normal(0.0, 0.05), -0.12, 0.12))
    lo, hi = ((-0.85, 0.85) if kind == "valence" else (0.05, 0.95))
    return _clip(base + jitter, lo, hi)


def _synth_speech(rng: np.random.Generator, config: SynthConfig, level: int, idx: int,
                  bank: list[str], planted: tuple[str, str]) -> SpeechRecord:
    duration = float(np.round(rng.uniform(*config.duration_range), 3))
    n_frames = max(10, int(round(duration * config.fps)))

    centers = {
        (m, k): _center(rng, m, k, level, config, planted)
        for m in ("facial", "textual", "vocal")
        for k in ("arousal", "valence")
    }

    f_aro = _ar1(rng, n_frames, centers[("facial", "arousal")], 0.04, 0.0, 1.0)
    f_val = _ar1(rng, n_frames, centers[("facial", "valence")], 0.05, -1.0, 1.0)

    # Emotion labels: sticky runs over a per-speech preference ordering.
    pref = rng.permutation(len(EMOTIONS))
    weights = np.array([0.34, 0.22, 0.16, 0.12, 0.08, 0.05, 0.03])[np.argsort(pref)]
    labels = []
    current = str(EMOTIONS[int(rng.choice(len(EMOTIONS), p=weights / weights.sum()))])
    for _ in range(n_frames):
        if rng.random() < 0.08:
            current = str(EMOTIONS[int(rng.choice(len(EMOTIONS), p=weights / weights.sum()))])
        labels.append(current)
    confidence = np.clip(rng.uniform(0.55, 1.0, n_frames), 0.0, 1.0)

    facial = FacialSeries(
        fps=config.fps,
        valence=tuple(float(np.round(v, 6)) for v in f_val),
        arousal=tuple(float(np.round(v, 6)) for v in f_aro),
        emotion=tuple(labels),
        confidence=tuple(float(np.round(c, 6)) for c in confidence),
    )

    # Sentences tile the speech with small pauses between them.
    sentences = []
    words = []
    texts = []
    difficult_rate = float(rng.beta(2.0, 14.0))
    t = float(rng.uniform(0.2, 1.0))
    while t < duration - 6.0:
        n_words = int(rng.integers(6, 14))
        sent_dur = float(np.round(rng.uniform(3.0, 6.5), 3))
        end = min(duration, t + sent_dur)
        chosen = []
        for _ in range(n_words):
            if rng.random() < difficult_rate:
                chosen.append(_HARD_WORDS[int(rng.integers(0, len(_HARD_WORDS)))])
            else:
                chosen.append(bank[int(rng.integers(0, len(bank)))])
        texts.append(" ".join(chosen))
        sentences.append(
            SentenceRecord(
                start_s=float(np.round(t, 3)),
                end_s=float(np.round(end, 3)),
                text=texts[-1],
                text_valence=float(np.round(_clip(centers[("textual", "valence")] + rng.normal(0, 0.10), -1, 1), 6)),
                text_arousal=float(np.round(_clip(centers[("textual", "arousal")] + rng.normal(0, 0.08), 0, 1), 6)),
                vocal_valence=float(np.round(_clip(centers[("vocal", "valence")] + rng.normal(0, 0.10), -1, 1), 6)),
                vocal_arousal=float(np.round(_clip(centers[("vocal", "arousal")] + rng.normal(0, 0.08), 0, 1), 6)),
            )
        )
        # Word timings partition the sentence span with small gaps.
        starts = np.linspace(t, end, n_words + 1)
        for j in range(n_words):
            w_start = float(np.round(starts[j], 3))
            w_end = float(np.round(starts[j] - 0.02 + (starts[j + 1] - starts[j]) * rng.uniform(0.7, 0.98), 3))
            w_end = max(w_start, min(w_end, float(np.round(starts[j + 1], 3))))
            words.append(WordRecord(word=chosen[j], start_s=w_start, end_s=w_end))
        t = end + float(np.round(rng.uniform(0.2, 1.8), 3))

    script = ". ".join(texts) + "."
    rank = int(rng.integers(1, 11)) if rng.random() < 0.6 else None

    return SpeechRecord(
        id=f"s{idx:03d}",
        title=f"talk {idx:03d}",
        speaker=f"speaker {idx:03d}",
        country=str(_COUNTRIES[int(rng.integers(0, len(_COUNTRIES)))]),
        year=int(config.base_year + rng.integers(0, 6)),
        level=level,
        rank=rank,
        duration_s=duration,
        facial=facial,
        sentences=tuple(sentences),
        words=tuple(words),
        script=script,
    )
