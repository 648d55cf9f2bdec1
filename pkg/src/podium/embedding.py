"""Similarity map over speeches: top factors, standardization, t-SNE, and
radar-style per-factor level predictions."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .factors import FactorTable
from .ordinal import AnalysisReport, OrdinalFit, predict_level
from .tsne import TsneParams, TsneResult, tsne


@dataclass(frozen=True)
class EmbeddingResult:
    speech_ids: tuple[str, ...]
    coords: np.ndarray
    selected_factors: tuple[str, ...]
    kl_trace: tuple[float, ...]
    excluded_ids: tuple[str, ...] = ()

    @property
    def kl_final(self) -> float:
        return self.kl_trace[-1]


@dataclass(frozen=True)
class RadarSpec:
    speech_id: str
    axes: tuple[str, ...]
    predicted_levels: tuple[int | None, ...]
    missing_axes: tuple[str, ...]
    true_level: int


def select_significant(report: AnalysisReport, k: int = 5) -> list[str]:
    """The k factors with the smallest p-values among converged fits; ties
    break toward the lexicographically smaller name."""
    usable = [
        r for r in report.results
        if r.fit.converged and math.isfinite(r.fit.p_value)
    ]
    if len(usable) < k:
        raise ValueError(f"only {len(usable)} usable factors, need {k}")
    usable.sort(key=lambda r: (r.fit.p_value, r.factor))
    return [r.factor for r in usable[:k]]


def standardize(matrix: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Column z-scores (population variance). Constant columns are dropped
    with a warning; returns (standardized matrix, kept column indices)."""
    m = np.asarray(matrix, dtype=float)
    means = m.mean(axis=0)
    stds = m.std(axis=0)
    kept = [j for j in range(m.shape[1]) if stds[j] > 0]
    if not kept:
        raise ValueError("all columns constant")
    if len(kept) < m.shape[1]:
        warnings.warn(f"dropped {m.shape[1] - len(kept)} constant column(s)", stacklevel=2)
    out = (m[:, kept] - means[kept]) / stds[kept]
    return out, kept


def embed_corpus(table: FactorTable, report: AnalysisReport,
                 params: TsneParams | None = None, k: int = 5) -> EmbeddingResult:
    """t-SNE map of all speeches over their top-k factor vectors.

    Speeches missing any selected factor value are excluded (reported in
    excluded_ids), never imputed.
    """
    selected = select_significant(report, k)
    cols = [table.factor_names.index(f) for f in selected]
    sub = table.values[:, cols]
    complete = np.isfinite(sub).all(axis=1)
    ids = [sid for sid, ok in zip(table.speech_ids, complete) if ok]
    excluded = tuple(sid for sid, ok in zip(table.speech_ids, complete) if not ok)
    matrix = sub[complete]
    std_matrix, _ = standardize(matrix)
    result: TsneResult = tsne(std_matrix, params, row_keys=ids)
    return EmbeddingResult(
        speech_ids=tuple(ids),
        coords=result.coords,
        selected_factors=tuple(selected),
        kl_trace=result.kl_trace,
        excluded_ids=excluded,
    )


def radar(speech_id: str, table: FactorTable, report: AnalysisReport,
          true_level: int, k: int = 5) -> RadarSpec:
    """Per-axis predicted level for one speech over the selected factors.

    A missing factor value flags the axis as absent instead of fabricating
    a prediction.
    """
    selected = select_significant(report, k)
    row = table.row(speech_id)
    predictions: list[int | None] = []
    missing = []
    for factor in selected:
        value = row[table.factor_names.index(factor)]
        fit: OrdinalFit = report.get(factor).fit
        if not math.isfinite(value):
            predictions.append(None)
            missing.append(factor)
        else:
            predictions.append(predict_level(fit, float(value)))
    return RadarSpec(
        speech_id=speech_id,
        axes=tuple(selected),
        predicted_levels=tuple(predictions),
        missing_axes=tuple(missing),
        true_level=true_level,
    )


def embedding_to_json(result: EmbeddingResult, levels: dict[str, int]) -> dict:
    """Export schema: {selected_factors, points: [{id, x, y, level}], kl_final}."""
    return {
        "selected_factors": list(result.selected_factors),
        "points": [
            {
                "id": sid,
                "x": float(result.coords[i, 0]),
                "y": float(result.coords[i, 1]),
                "level": int(levels[sid]),
            }
            for i, sid in enumerate(result.speech_ids)
        ],
        "kl_final": float(result.kl_final),
    }


def radar_to_json(spec: RadarSpec) -> dict:
    return {
        "speech_id": spec.speech_id,
        "axes": list(spec.axes),
        "predicted_levels": [p if p is None else int(p) for p in spec.predicted_levels],
        "missing_axes": list(spec.missing_axes),
        "true_level": spec.true_level,
    }
