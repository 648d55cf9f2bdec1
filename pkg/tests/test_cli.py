import hashlib
import json
from pathlib import Path

import pytest

from podium.cli import main
from podium.corpus import save_corpus
from podium.synth import SynthConfig, synth_corpus


def dir_digest(path):
    h = hashlib.sha256()
    for f in sorted(Path(path).iterdir()):
        h.update(f.name.encode())
        h.update(f.read_bytes())
    return h.hexdigest()


@pytest.fixture()
def three_file_corpus(tmp_path):
    corpus = synth_corpus(SynthConfig(speeches_per_level=3), 13)
    target = tmp_path / "corpus3"
    save_corpus(
        type(corpus)(records=corpus.records[:3], familiar_words=corpus.familiar_words),
        target,
    )
    return target


def test_synth_twice_identical_digests(tmp_path):
    assert main(["synth", "--seed", "7", "--out", str(tmp_path / "a")]) == 0
    assert main(["synth", "--seed", "7", "--out", str(tmp_path / "b")]) == 0
    assert dir_digest(tmp_path / "a") == dir_digest(tmp_path / "b")


def test_validate_three_files(three_file_corpus, capsys):
    assert main(["validate", "--corpus", str(three_file_corpus)]) == 0
    assert "3 speeches OK" in capsys.readouterr().out


def test_validate_failure_exits_1(tmp_path, capsys):
    corpus_dir = tmp_path / "bad"
    corpus_dir.mkdir()
    (corpus_dir / "x.json").write_text('{"id": "x"}')
    assert main(["validate", "--corpus", str(corpus_dir)]) == 1
    assert "error" in capsys.readouterr().err


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["validate", "--nope"])
    assert exc.value.code == 2


def test_factors_writes_csv(three_file_corpus, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["factors", "--corpus", str(three_file_corpus), "--out", str(out)]) == 0
    caches = list(out.iterdir())
    assert len(caches) == 1
    assert (caches[0] / "factors.csv").exists()
    assert "3x26" in capsys.readouterr().out


def test_analyze_autocomputes_factors(tmp_path, capsys):
    corpus_dir = tmp_path / "corpus"
    save_corpus(synth_corpus(SynthConfig(speeches_per_level=4), 3), corpus_dir)
    out = tmp_path / "out"
    # analyze without running factors first: dependency computed on the fly
    assert main(["analyze", "--corpus", str(corpus_dir), "--out", str(out)]) == 0
    cache = next(out.iterdir())
    assert (cache / "factors.csv").exists()
    assert (cache / "analysis.json").exists()
    report = json.loads((cache / "analysis.json").read_text())
    assert len(report) > 0
    assert all("p_value" in e for e in report)


def test_layout_emits_documents(tmp_path):
    corpus_dir = tmp_path / "corpus"
    save_corpus(synth_corpus(SynthConfig(speeches_per_level=2), 9), corpus_dir)
    out = tmp_path / "out"
    assert main(["layout", "--corpus", str(corpus_dir), "--out", str(out), "--svg"]) == 0
    layouts = next(out.iterdir()) / "layouts"
    spirals = list(layouts.glob("*.spiral.json"))
    assert len(spirals) == 10
    assert (layouts / "s000.spiral.svg").exists()
    doc = json.loads(spirals[0].read_text())
    assert doc["kind"] == "spiral"


def test_missing_corpus_exits_1(tmp_path):
    assert main(["factors", "--corpus", str(tmp_path / "nothing"), "--out", str(tmp_path / "o")]) == 1
