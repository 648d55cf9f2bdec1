"""Speech-effectiveness analytics workbench.

Pipeline: load or synthesize a corpus of contest speeches, compute emotion
and delivery factors, relate each factor to contest level with ordinal
regression, embed speeches by their top factors, and emit deterministic
layouts for the visualization UI.
"""

from .corpus import (
    AlignedTriples,
    Corpus,
    CorpusError,
    FacialSeries,
    SentenceRecord,
    SpeechRecord,
    WordRecord,
    align_sentences,
    load_corpus,
    save_corpus,
)
from .factors import FACTOR_COLUMNS, FactorTable, compute_factor_table
from .ordinal import (
    AnalysisReport,
    BinaryFit,
    OrdinalFit,
    ParallelLinesResult,
    analyze_all,
    fit_binary_logistic,
    fit_proportional_odds,
    level_probabilities,
    parallel_lines_test,
    predict_level,
)
from .embedding import EmbeddingResult, RadarSpec, embed_corpus, radar, select_significant, standardize
from .synth import SynthConfig, synth_corpus
from .tsne import TsneParams, active_kernel
from .workspace import Config, Workspace

__version__ = "0.1.0"

__all__ = [
    "AlignedTriples", "AnalysisReport", "BinaryFit", "Config", "Corpus",
    "CorpusError", "EmbeddingResult", "FACTOR_COLUMNS", "FacialSeries",
    "FactorTable", "OrdinalFit", "ParallelLinesResult", "RadarSpec",
    "SentenceRecord", "SpeechRecord", "SynthConfig", "TsneParams",
    "WordRecord", "Workspace", "active_kernel", "align_sentences",
    "analyze_all", "compute_factor_table", "embed_corpus",
    "fit_binary_logistic", "fit_proportional_odds", "level_probabilities",
    "load_corpus", "parallel_lines_test", "predict_level", "radar",
    "save_corpus", "select_significant", "standardize", "synth_corpus",
]
