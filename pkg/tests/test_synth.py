import json

import pytest

from mbtikit import synth
from mbtikit.corpus import clean_stream, mask_count
from mbtikit.labels import ALL_CODES


def test_generate_deterministic():
    spec = synth.SynthSpec(0.4, 6, seed=1)
    a = synth.generate(spec)
    b = synth.generate(spec)
    assert [(c.id, c.body, c.author, c.subreddit) for c in a] == [
        (c.id, c.body, c.author, c.subreddit) for c in b
    ]


def test_generate_seed_changes_text():
    a = synth.generate(synth.SynthSpec(0.4, 3, seed=1))
    b = synth.generate(synth.SynthSpec(0.4, 3, seed=2))
    assert [c.body for c in a] != [c.body for c in b]


def test_generate_balanced_labels():
    comments = synth.generate(synth.SynthSpec(0.5, 7, seed=0))
    counts = {}
    for c in comments:
        counts[c.label.code] = counts.get(c.label.code, 0) + 1
    assert counts == {code: 7 for code in ALL_CODES}


def test_generated_bodies_survive_cleaning():
    comments = synth.generate(synth.SynthSpec(0.5, 10, seed=2))
    kept, report = clean_stream(comments)
    assert report.balanced()
    assert report.output_count == len(comments)  # nothing rejected
    assert all(len(c.body) >= 50 for c in kept)
    assert all(mask_count(c.body) == 0 for c in kept)


def test_generated_subsets_populated():
    comments = synth.generate(synth.SynthSpec(0.5, 10, seed=2))
    kept, _ = clean_stream(comments)
    origins = {c.origin for c in kept}
    assert len(origins) == 2  # both mbti and other subreddits appear


def test_spec_validation():
    with pytest.raises(ValueError):
        synth.SynthSpec(1.5, 10)
    with pytest.raises(ValueError):
        synth.SynthSpec(0.5, 0)
    with pytest.raises(ValueError):
        synth.SynthSpec(0.5, 1, per_class_seeds=(1, 2))


def test_per_class_seeds_control_vocabularies():
    base = synth.SynthSpec(1.0, 2, seed=0, per_class_seeds=tuple(range(16)))
    other = synth.SynthSpec(1.0, 2, seed=0, per_class_seeds=tuple(range(100, 116)))
    a = synth.generate(base)
    b = synth.generate(other)
    assert [c.body for c in a] != [c.body for c in b]


def test_write_corpus_with_manifest(tmp_path):
    path = tmp_path / "corpus.jsonl"
    spec = synth.SynthSpec(0.3, 3, seed=9)
    comments = synth.write_corpus(spec, path)
    assert len(path.read_text().splitlines()) == len(comments)
    manifest = json.loads((tmp_path / "corpus.jsonl.manifest.json").read_text())
    assert manifest["rng"] == "pcg64"
    assert manifest["seed"] == 9
    assert manifest["distinctiveness"] == 0.3


def test_disjoint_vocabularies_are_separable():
    acc = synth.nb_accuracy(synth.SynthSpec(1.0, 30, seed=5))
    assert acc >= 0.95


def test_identical_vocabularies_hit_chance():
    acc = synth.nb_accuracy(synth.SynthSpec(0.0, 100, seed=7))
    assert 0.03 <= acc <= 0.10


def test_midpoint_regression_band():
    # measured once on this frozen spec and pinned with a +-5 point band;
    # strictly between the chance floor and the disjoint-vocabulary ceiling
    spec = synth.SynthSpec(0.5, 200, doc_len=(4, 8), seed=5)
    low = synth.nb_accuracy(synth.SynthSpec(0.0, 200, doc_len=(4, 8), seed=5))
    high = synth.nb_accuracy(synth.SynthSpec(1.0, 200, doc_len=(4, 8), seed=5))
    mid = synth.nb_accuracy(spec)
    assert abs(mid - 0.975) <= 0.05
    assert low < mid < high
