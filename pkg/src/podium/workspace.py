"""Pipeline driver: corpus -> factors -> analysis -> embedding -> layouts.

Artifacts are cached under `<out>/<digest>/` where the digest covers the
corpus bytes and the configuration, so a cache entry can only ever hold
artifacts reproducible from its own inputs.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import svg as svgmod
from .corpus import Corpus, load_corpus, speech_to_dict
from .embedding import embed_corpus, embedding_to_json, radar, radar_to_json
from .factors import FactorTable, compute_factor_table, factor_table_to_csv
from .layout import (
    ScriptParams,
    SpiralParams,
    TypeParams,
    accumulate_intervals,
    distribution_layout,
    factor_strip_layout,
    layout_to_json,
    script_layout,
    spiral_layout,
    type_layout,
)
from .ordinal import AnalysisReport, analyze_all, report_to_json
from .tsne import TsneParams


@dataclass(frozen=True)
class Config:
    seed: int = 0
    perplexity: float = 10.0
    iterations: int = 1000
    significance: float = 0.05
    spiral: SpiralParams = field(default_factory=SpiralParams)
    script: ScriptParams = field(default_factory=ScriptParams)
    type_view: TypeParams = field(default_factory=TypeParams)

    @staticmethod
    def from_file(path: str | Path | None) -> "Config":
        if path is None:
            return Config()
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
        return Config(
            seed=int(obj.get("seed", 0)),
            perplexity=float(obj.get("perplexity", 10.0)),
            iterations=int(obj.get("iterations", 1000)),
            significance=float(obj.get("significance", 0.05)),
            spiral=SpiralParams(**obj.get("spiral", {})),
            script=ScriptParams(**obj.get("script", {})),
            type_view=TypeParams(**obj.get("type", {})),
        )

    def tsne_params(self) -> TsneParams:
        return TsneParams(perplexity=self.perplexity, iterations=self.iterations, seed=self.seed)

    def canonical_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


class Workspace:
    def __init__(self, corpus_dir: str | Path, out_dir: str | Path, config: Config | None = None):
        self.corpus_dir = Path(corpus_dir)
        self.out_dir = Path(out_dir)
        self.config = config or Config()
        self._corpus: Corpus | None = None
        self._table: FactorTable | None = None
        self._report: AnalysisReport | None = None
        self._embedding: dict | None = None

    # -- identity ---------------------------------------------------------

    def digest(self) -> str:
        h = hashlib.sha256()
        for f in sorted(self.corpus_dir.glob("*.json")) + sorted(self.corpus_dir.glob("*.txt")):
            h.update(f.name.encode("utf-8"))
            h.update(f.read_bytes())
        h.update(self.config.canonical_json().encode("utf-8"))
        return h.hexdigest()[:16]

    @property
    def cache_dir(self) -> Path:
        d = self.out_dir / self.digest()
        d.mkdir(parents=True, exist_ok=True)
        return d

    # -- pipeline steps ---------------------------------------------------

    def corpus(self) -> Corpus:
        if self._corpus is None:
            self._corpus = load_corpus(self.corpus_dir)
        return self._corpus

    def levels(self) -> dict[str, int]:
        return {rec.id: rec.level for rec in self.corpus()}

    def ensure_factors(self) -> FactorTable:
        if self._table is None:
            self._table = compute_factor_table(self.corpus())
            path = self.cache_dir / "factors.csv"
            path.write_text(factor_table_to_csv(self._table), encoding="utf-8")
        return self._table

    def ensure_analysis(self) -> AnalysisReport:
        if self._report is None:
            table = self.ensure_factors()
            self._report = analyze_all(table, self.levels())
            path = self.cache_dir / "analysis.json"
            path.write_text(_dump(report_to_json(self._report)), encoding="utf-8")
        return self._report

    def ensure_embedding(self) -> dict:
        if self._embedding is None:
            table = self.ensure_factors()
            report = self.ensure_analysis()
            result = embed_corpus(table, report, self.config.tsne_params())
            self._embedding = embedding_to_json(result, self.levels())
            path = self.cache_dir / "embedding.json"
            path.write_text(_dump(self._embedding), encoding="utf-8")
        return self._embedding

    def speech_layouts(self, speech_id: str) -> dict[str, dict]:
        rec = self.corpus().get(speech_id)
        if rec is None:
            raise KeyError(speech_id)
        acc = accumulate_intervals(rec, self.config.spiral.interval_s)
        return {
            "spiral": layout_to_json(spiral_layout(acc, self.config.spiral)),
            "script": layout_to_json(script_layout(rec, self.config.script)),
            "type": layout_to_json(type_layout(rec, self.config.type_view)),
        }

    def strip_layout_json(self, factor: str) -> dict:
        table = self.ensure_factors()
        return layout_to_json(factor_strip_layout(table, factor, self.levels()))

    def distribution_json(self, factor: str) -> dict:
        table = self.ensure_factors()
        report = self.ensure_analysis()
        entry = report.get(factor)
        if entry is None:
            raise KeyError(factor)
        if not entry.fit.converged:
            raise ValueError(f"fit for {factor!r} did not converge")
        col = table.column(factor)
        finite = col[~_isnan(col)]
        domain = (float(finite.min()), float(finite.max()))
        return layout_to_json(distribution_layout(entry.fit, domain))

    def radar_json(self, speech_id: str) -> dict:
        rec = self.corpus().get(speech_id)
        if rec is None:
            raise KeyError(speech_id)
        table = self.ensure_factors()
        report = self.ensure_analysis()
        return radar_to_json(radar(speech_id, table, report, rec.level))

    def write_all_layouts(self, emit_svg: bool = False) -> int:
        """Materialize every per-speech and per-factor layout document."""
        out = self.cache_dir / "layouts"
        out.mkdir(exist_ok=True)
        count = 0
        for rec in self.corpus():
            docs = self.speech_layouts(rec.id)
            for kind, doc in docs.items():
                (out / f"{rec.id}.{kind}.json").write_text(_dump(doc), encoding="utf-8")
                count += 1
            if emit_svg:
                acc = accumulate_intervals(rec, self.config.spiral.interval_s)
                (out / f"{rec.id}.spiral.svg").write_text(
                    svgmod.render_svg(spiral_layout(acc, self.config.spiral)), encoding="utf-8")
                (out / f"{rec.id}.script.svg").write_text(
                    svgmod.render_svg(script_layout(rec, self.config.script)), encoding="utf-8")
                (out / f"{rec.id}.type.svg").write_text(
                    svgmod.render_svg(type_layout(rec, self.config.type_view)), encoding="utf-8")
        report = self.ensure_analysis()
        for entry in report.results:
            name = entry.factor
            (out / f"{name}.factor-strip.json").write_text(
                _dump(self.strip_layout_json(name)), encoding="utf-8")
            count += 1
            if entry.fit.converged:
                (out / f"{name}.distribution.json").write_text(
                    _dump(self.distribution_json(name)), encoding="utf-8")
                count += 1
        return count

    def speech_summary(self, rec) -> dict:
        return {
            "id": rec.id,
            "title": rec.title,
            "speaker": rec.speaker,
            "country": rec.country,
            "year": rec.year,
            "level": rec.level,
            "rank": rec.rank,
            "duration_s": rec.duration_s,
        }

    def speech_detail(self, speech_id: str) -> dict:
        rec = self.corpus().get(speech_id)
        if rec is None:
            raise KeyError(speech_id)
        doc = speech_to_dict(rec)
        doc.setdefault("rank", None)
        return doc


def _isnan(arr):
    import numpy as np
    return ~np.isfinite(arr)


def _dump(obj) -> str:
    return json.dumps(_sanitize(obj), sort_keys=True, indent=1) + "\n"


def _sanitize(obj):
    """JSON cannot carry NaN/inf; missing numeric values become null."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj
