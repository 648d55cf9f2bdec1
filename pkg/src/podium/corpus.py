"""Canonical speech-record schema: validation, loading, and sentence alignment.

One speech is one UTF-8 JSON document (`<id>.json`) whose fields mirror the
dataclasses below. A corpus directory may additionally carry `wordlist.txt`
(one familiar word per line, lowercase) consumed by the vocabulary factor.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .palette import EMOTIONS

VALENCE_RANGE = (-1.0, 1.0)
AROUSAL_RANGE = (0.0, 1.0)

_COUNTRY_RE = re.compile(r"^[A-Z]{2}$")


class CorpusError(ValueError):
    """Validation or IO failure; carries the offending file and field."""

    def __init__(self, message: str, *, file: str | None = None, field_name: str | None = None):
        self.file = file
        self.field_name = field_name
        prefix = ""
        if file:
            prefix += f"{file}: "
        if field_name:
            prefix += f"field '{field_name}': "
        super().__init__(prefix + message)


@dataclass(frozen=True)
class FacialSeries:
    """Frame-level facial emotion series sampled at a constant rate."""

    fps: float
    valence: tuple[float, ...]
    arousal: tuple[float, ...]
    emotion: tuple[str, ...]
    confidence: tuple[float, ...]

    def timestamps(self) -> list[float]:
        return [k / self.fps for k in range(len(self.valence))]


@dataclass(frozen=True)
class SentenceRecord:
    start_s: float
    end_s: float
    text: str
    text_valence: float
    text_arousal: float
    vocal_valence: float
    vocal_arousal: float


@dataclass(frozen=True)
class WordRecord:
    word: str
    start_s: float
    end_s: float


@dataclass(frozen=True)
class SpeechRecord:
    id: str
    title: str
    speaker: str
    country: str
    year: int
    level: int
    rank: int | None
    duration_s: float
    facial: FacialSeries
    sentences: tuple[SentenceRecord, ...]
    words: tuple[WordRecord, ...]
    script: str


@dataclass(frozen=True)
class AlignedTriples:
    """Per-sentence (textual, vocal, facial) values, facial averaged over the
    sentence's half-open time span. Sentences without facial coverage are
    dropped and counted, not fatal."""

    sentence_indices: tuple[int, ...]
    valence: tuple[tuple[float, float, float], ...]
    arousal: tuple[tuple[float, float, float], ...]
    dropped: int


@dataclass(frozen=True)
class Corpus:
    """Immutable, id-ordered collection of validated speech records."""

    records: tuple[SpeechRecord, ...]
    familiar_words: frozenset[str] = field(default_factory=frozenset)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def get(self, speech_id: str) -> SpeechRecord | None:
        for rec in self.records:
            if rec.id == speech_id:
                return rec
        return None

    def ids(self) -> list[str]:
        return [rec.id for rec in self.records]


def _require(cond: bool, message: str, field_name: str) -> None:
    if not cond:
        raise CorpusError(message, field_name=field_name)


def _check_range(name: str, values, lo: float, hi: float) -> None:
    for v in values:
        _require(lo <= v <= hi, f"value {v} outside [{lo}, {hi}]", name)


def validate_speech(rec: SpeechRecord) -> None:
    """Check every schema invariant; raises CorpusError naming the field."""
    _require(bool(rec.id), "empty id", "id")
    _require(bool(_COUNTRY_RE.match(rec.country)), f"not an alpha-2 code: {rec.country!r}", "country")
    _require(rec.level in (1, 2, 3, 4, 5), f"level must be 1..5, got {rec.level}", "level")
    _require(rec.rank is None or rec.rank >= 1, f"rank must be >= 1, got {rec.rank}", "rank")
    _require(rec.duration_s > 0, f"duration must be positive, got {rec.duration_s}", "duration_s")
    _require(isinstance(rec.year, int) and 1900 <= rec.year <= 2100, f"implausible year {rec.year}", "year")

    f = rec.facial
    _require(f.fps > 0, f"fps must be positive, got {f.fps}", "facial")
    n = len(f.valence)
    _require(
        len(f.arousal) == n and len(f.emotion) == n and len(f.confidence) == n,
        "valence/arousal/emotion/confidence lengths differ",
        "facial",
    )
    _require(n >= 2, f"facial series needs >= 2 samples, got {n}", "facial")
    _check_range("facial", f.valence, *VALENCE_RANGE)
    _check_range("facial", f.arousal, *AROUSAL_RANGE)
    _check_range("facial", f.confidence, 0.0, 1.0)
    for label in f.emotion:
        _require(label in EMOTIONS, f"unknown emotion label {label!r}", "facial")

    prev_end = None
    for i, s in enumerate(rec.sentences):
        _require(s.end_s > s.start_s, f"sentence {i} has end <= start", "sentences")
        _require(s.text.strip() != "", f"sentence {i} has empty text", "sentences")
        _require(0 <= s.start_s and s.end_s <= rec.duration_s, f"sentence {i} outside [0, duration]", "sentences")
        if prev_end is not None:
            _require(s.start_s >= prev_end, f"sentence {i} overlaps or is out of order", "sentences")
        prev_end = s.end_s
        _check_range("sentences", [s.text_valence, s.vocal_valence], *VALENCE_RANGE)
        _check_range("sentences", [s.text_arousal, s.vocal_arousal], *AROUSAL_RANGE)

    prev_end = None
    for i, w in enumerate(rec.words):
        _require(w.end_s >= w.start_s, f"word {i} has end < start", "words")
        _require(0 <= w.start_s and w.end_s <= rec.duration_s, f"word {i} outside [0, duration]", "words")
        if prev_end is not None:
            _require(w.start_s >= prev_end, f"word {i} overlaps or is out of order", "words")
        prev_end = w.end_s


def speech_to_dict(rec: SpeechRecord) -> dict:
    d = {
        "id": rec.id,
        "title": rec.title,
        "speaker": rec.speaker,
        "country": rec.country,
        "year": rec.year,
        "level": rec.level,
        "duration_s": rec.duration_s,
        "facial": {
            "fps": rec.facial.fps,
            "valence": list(rec.facial.valence),
            "arousal": list(rec.facial.arousal),
            "emotion": list(rec.facial.emotion),
            "confidence": list(rec.facial.confidence),
        },
        "sentences": [
            {
                "start_s": s.start_s,
                "end_s": s.end_s,
                "text": s.text,
                "text_valence": s.text_valence,
                "text_arousal": s.text_arousal,
                "vocal_valence": s.vocal_valence,
                "vocal_arousal": s.vocal_arousal,
            }
            for s in rec.sentences
        ],
        "words": [{"word": w.word, "start_s": w.start_s, "end_s": w.end_s} for w in rec.words],
        "script": rec.script,
    }
    if rec.rank is not None:
        d["rank"] = rec.rank
    return d


def _field_of(obj: dict, name: str, kind, *, optional: bool = False, file: str | None = None):
    if name not in obj:
        if optional:
            return None
        raise CorpusError("missing", file=file, field_name=name)
    value = obj[name]
    if kind is float and isinstance(value, int):
        value = float(value)
    if kind is int and isinstance(value, float) and value.is_integer():
        value = int(value)
    if not isinstance(value, kind):
        raise CorpusError(f"expected {kind.__name__}, got {type(value).__name__}", file=file, field_name=name)
    return value


def speech_from_dict(obj: dict, *, file: str | None = None) -> SpeechRecord:
    try:
        facial_obj = obj.get("facial")
        if not isinstance(facial_obj, dict):
            raise CorpusError("missing or malformed", file=file, field_name="facial")
        facial = FacialSeries(
            fps=float(_field_of(facial_obj, "fps", (int, float), file=file)),
            valence=tuple(float(v) for v in facial_obj.get("valence", [])),
            arousal=tuple(float(v) for v in facial_obj.get("arousal", [])),
            emotion=tuple(str(v) for v in facial_obj.get("emotion", [])),
            confidence=tuple(float(v) for v in facial_obj.get("confidence", [])),
        )
        sentences = tuple(
            SentenceRecord(
                start_s=float(s["start_s"]),
                end_s=float(s["end_s"]),
                text=str(s["text"]),
                text_valence=float(s["text_valence"]),
                text_arousal=float(s["text_arousal"]),
                vocal_valence=float(s["vocal_valence"]),
                vocal_arousal=float(s["vocal_arousal"]),
            )
            for s in obj.get("sentences", [])
        )
        words = tuple(
            WordRecord(word=str(w["word"]), start_s=float(w["start_s"]), end_s=float(w["end_s"]))
            for w in obj.get("words", [])
        )
        rank = obj.get("rank")
        rec = SpeechRecord(
            id=_field_of(obj, "id", str, file=file),
            title=_field_of(obj, "title", str, file=file),
            speaker=_field_of(obj, "speaker", str, file=file),
            country=_field_of(obj, "country", str, file=file),
            year=_field_of(obj, "year", int, file=file),
            level=_field_of(obj, "level", int, file=file),
            rank=None if rank is None else int(rank),
            duration_s=float(_field_of(obj, "duration_s", (int, float), file=file)),
            facial=facial,
            sentences=sentences,
            words=words,
            script=_field_of(obj, "script", str, file=file),
        )
    except KeyError as exc:
        raise CorpusError("missing", file=file, field_name=str(exc.args[0])) from exc
    try:
        validate_speech(rec)
    except CorpusError as exc:
        raise CorpusError(str(exc.args[0]) if exc.args else "invalid", file=file, field_name=exc.field_name) from None
    return rec


def load_corpus(path: str | Path) -> Corpus:
    """Load and validate every `*.json` speech file under `path`.

    Records are ordered by id. Raises CorpusError on a missing directory,
    malformed file, or duplicate id.
    """
    root = Path(path)
    if not root.is_dir():
        raise CorpusError(f"corpus directory not found: {root}")
    files = sorted(root.glob("*.json"))
    if not files:
        raise CorpusError(f"no speech files in {root}")

    records: dict[str, SpeechRecord] = {}
    for f in files:
        try:
            obj = json.loads(f.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise CorpusError(f"invalid JSON ({exc})", file=f.name) from exc
        rec = speech_from_dict(obj, file=f.name)
        if rec.id in records:
            raise CorpusError(f"duplicate id {rec.id!r}", file=f.name, field_name="id")
        records[rec.id] = rec

    familiar = load_wordlist(root / "wordlist.txt")
    ordered = tuple(records[k] for k in sorted(records))
    return Corpus(records=ordered, familiar_words=familiar)


def load_wordlist(path: str | Path) -> frozenset[str]:
    p = Path(path)
    if not p.is_file():
        return frozenset()
    words = (line.strip().lower() for line in p.read_text(encoding="utf-8").splitlines())
    return frozenset(w for w in words if w)


def save_corpus(corpus: Corpus, path: str | Path) -> list[Path]:
    """Write one `<id>.json` per record plus `wordlist.txt` when present."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    written = []
    for rec in corpus.records:
        out = root / f"{rec.id}.json"
        out.write_text(
            json.dumps(speech_to_dict(rec), sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
        )
        written.append(out)
    if corpus.familiar_words:
        wl = root / "wordlist.txt"
        wl.write_text("\n".join(sorted(corpus.familiar_words)) + "\n", encoding="utf-8")
        written.append(wl)
    return written


def align_sentences(speech: SpeechRecord) -> AlignedTriples:
    """Join sentence-level textual/vocal values with the facial frame mean
    over each sentence's [start_s, end_s) span.

    Sentences with no facial sample in their span are dropped (counted in
    `dropped`). Raises CorpusError when nothing aligns.
    """
    times = speech.facial.timestamps()
    valence_triples = []
    arousal_triples = []
    indices = []
    dropped = 0
    for i, s in enumerate(speech.sentences):
        hits = [k for k, t in enumerate(times) if s.start_s <= t < s.end_s]
        if not hits:
            dropped += 1
            continue
        f_val = sum(speech.facial.valence[k] for k in hits) / len(hits)
        f_aro = sum(speech.facial.arousal[k] for k in hits) / len(hits)
        valence_triples.append((s.text_valence, s.vocal_valence, f_val))
        arousal_triples.append((s.text_arousal, s.vocal_arousal, f_aro))
        indices.append(i)
    if not indices:
        raise CorpusError("no alignable sentences", field_name="sentences")
    return AlignedTriples(
        sentence_indices=tuple(indices),
        valence=tuple(valence_triples),
        arousal=tuple(arousal_triples),
        dropped=dropped,
    )
