import numpy as np
import pytest

from podium.corpus import FacialSeries, SentenceRecord, SpeechRecord, WordRecord
from podium.factors import compute_factor_table
from podium.ordinal import analyze_all
from podium.synth import SynthConfig, synth_corpus


@pytest.fixture(scope="session")
def seed7_corpus():
    return synth_corpus(SynthConfig(), 7)


@pytest.fixture(scope="session")
def seed7_table(seed7_corpus):
    return compute_factor_table(seed7_corpus)


@pytest.fixture(scope="session")
def seed7_levels(seed7_corpus):
    return {rec.id: rec.level for rec in seed7_corpus}


@pytest.fixture(scope="session")
def seed7_report(seed7_table, seed7_levels):
    return analyze_all(seed7_table, seed7_levels)


def make_speech(
    speech_id="t1",
    duration_s=10.0,
    fps=1.0,
    valence=(0.5,) * 10,
    arousal=(0.6,) * 10,
    emotion=("happy",) * 10,
    confidence=(0.8,) * 10,
    sentences=None,
    words=None,
    script="hello world. more words here.",
    level=3,
):
    if sentences is None:
        sentences = (
            SentenceRecord(0.0, 5.0, "hello world", 0.2, 0.5, 0.1, 0.9),
            SentenceRecord(5.5, 9.5, "more words here", -0.4, 0.3, 0.0, 0.2),
        )
    if words is None:
        words = (
            WordRecord("hello", 0.0, 1.0),
            WordRecord("world", 3.0, 4.0),
            WordRecord("more", 5.5, 6.0),
            WordRecord("words", 6.2, 6.8),
            WordRecord("here", 8.8, 9.4),
        )
    return SpeechRecord(
        id=speech_id,
        title="t",
        speaker="s",
        country="US",
        year=2020,
        level=level,
        rank=None,
        duration_s=duration_s,
        facial=FacialSeries(
            fps=fps, valence=tuple(valence), arousal=tuple(arousal),
            emotion=tuple(emotion), confidence=tuple(confidence),
        ),
        sentences=tuple(sentences),
        words=tuple(words),
        script=script,
    )


@pytest.fixture
def tiny_speech():
    return make_speech()


@pytest.fixture(scope="session")
def cluster_fixture():
    """Three well-separated gaussian clusters, 15 points each."""
    rng = np.random.default_rng(3)
    centers = np.array(
        [[0, 0, 0, 0, 0], [10, 10, 0, 0, 0], [0, 0, 10, 10, 10]], dtype=float
    )
    x = np.vstack([rng.normal(c, 0.5, size=(15, 5)) for c in centers])
    labels = np.repeat([0, 1, 2], 15)
    return x, labels
