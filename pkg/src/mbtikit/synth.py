"""Synthetic labeled corpora with a tunable class signal.

Each document's tokens come from a mixture of one shared vocabulary and
one class-specific vocabulary, weighted by a distinctiveness knob:
0 means every class writes from the same vocabulary (no signal, chance
accuracy), 1 means fully disjoint vocabularies (near-perfect
separability). That gives the pipeline an end-to-end fixture whose
extremes are known in advance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import labels as la
from .classify import train_nb, predict
from .corpus import Comment, comment_to_record, write_jsonl
from .features import TextPipeline, fit_vocabulary, vectorize
from .stemmer import stem

_CONSONANTS = "bcdfgklmnprstvz"
_VOWELS = "aeiou"
_OTHER_SUBREDDITS = ("askscience", "movies", "books", "gaming")


@dataclass(frozen=True)
class SynthSpec:
    distinctiveness: float  # 0 = identical vocabularies, 1 = disjoint
    docs_per_class: int
    doc_len: tuple[int, int] = (12, 20)  # uniform inclusive token count
    shared_vocab_size: int = 200
    class_vocab_size: int = 25
    authors_per_class: int = 10
    mbti_fraction: float = 0.5
    seed: int = 0
    per_class_seeds: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.distinctiveness <= 1.0:
            raise ValueError("distinctiveness must be in [0, 1]")
        if self.docs_per_class < 1:
            raise ValueError("docs_per_class must be >= 1")
        if self.per_class_seeds is not None and len(self.per_class_seeds) != 16:
            raise ValueError("per_class_seeds needs one seed per class")

    def to_dict(self) -> dict:
        return {
            "distinctiveness": self.distinctiveness,
            "docs_per_class": self.docs_per_class,
            "doc_len": list(self.doc_len),
            "shared_vocab_size": self.shared_vocab_size,
            "class_vocab_size": self.class_vocab_size,
            "authors_per_class": self.authors_per_class,
            "mbti_fraction": self.mbti_fraction,
            "seed": self.seed,
            "per_class_seeds": list(self.per_class_seeds) if self.per_class_seeds else None,
            "rng": "pcg64",
        }


def _make_words(rng: np.random.Generator, count: int, used: set[str]) -> list[str]:
    words = []
    while len(words) < count:
        word = "".join(
            _CONSONANTS[rng.integers(len(_CONSONANTS))] + _VOWELS[rng.integers(len(_VOWELS))]
            for _ in range(3)
        )
        # corpus vocabulary is promised stable under re-stemming; a few
        # letter shapes (e.g. -ese, -ede) break that, so resample them
        if word not in used and stem(stem(word)) == stem(word):
            used.add(word)
            words.append(word)
    return words


def generate(spec: SynthSpec) -> list[Comment]:
    """Deterministic corpus: 16 classes, docs_per_class each."""
    root = np.random.SeedSequence(spec.seed)
    shared_ss, docs_ss, class_root = root.spawn(3)
    used: set[str] = set()
    shared = _make_words(np.random.Generator(np.random.PCG64(shared_ss)), spec.shared_vocab_size, used)

    class_vocabs: dict[str, list[str]] = {}
    class_seeds = class_root.spawn(16)
    for i, code in enumerate(la.ALL_CODES):
        if spec.per_class_seeds is not None:
            gen = np.random.Generator(np.random.PCG64(spec.per_class_seeds[i]))
        else:
            gen = np.random.Generator(np.random.PCG64(class_seeds[i]))
        class_vocabs[code] = _make_words(gen, spec.class_vocab_size, used)

    rng = np.random.Generator(np.random.PCG64(docs_ss))
    lo, hi = spec.doc_len
    comments: list[Comment] = []
    counter = 0
    for code in la.ALL_CODES:
        vocab = class_vocabs[code]
        label = la.parse_type(code)
        for _ in range(spec.docs_per_class):
            n_tokens = int(rng.integers(lo, hi + 1))
            tokens = []
            for _ in range(n_tokens):
                if rng.random() < spec.distinctiveness:
                    tokens.append(vocab[rng.integers(len(vocab))])
                else:
                    tokens.append(shared[rng.integers(len(shared))])
            author = f"{code.lower()}_u{rng.integers(spec.authors_per_class)}"
            if rng.random() < spec.mbti_fraction:
                subreddit = code.lower()
            else:
                subreddit = _OTHER_SUBREDDITS[rng.integers(len(_OTHER_SUBREDDITS))]
            comments.append(
                Comment(
                    id=f"syn{counter:07d}",
                    author=author,
                    subreddit=subreddit,
                    created_utc=1_600_000_000 + counter,
                    body=" ".join(tokens),
                    label=label,
                )
            )
            counter += 1
    return comments


def write_corpus(spec: SynthSpec, path) -> list[Comment]:
    comments = generate(spec)
    write_jsonl((comment_to_record(c) for c in comments), path)
    with open(str(path) + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(spec.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return comments


def nb_accuracy(
    spec: SynthSpec,
    train_frac: float = 0.8,
    alpha: float = 1.0,
    min_df: int = 1,
    split_seed: int = 0,
) -> float:
    """Generate, split per class, train naive Bayes, return test accuracy."""
    comments = generate(spec)
    rng = np.random.Generator(np.random.PCG64(split_seed))
    train_docs: list[str] = []
    train_golds: list[str] = []
    test_docs: list[str] = []
    test_golds: list[str] = []
    for code in la.ALL_CODES:
        bodies = [c.body for c in comments if c.label and c.label.code == code]
        order = rng.permutation(len(bodies))
        cut = int(train_frac * len(bodies) + 1e-9)
        for i in order[:cut]:
            train_docs.append(bodies[i])
            train_golds.append(code)
        for i in order[cut:]:
            test_docs.append(bodies[i])
            test_golds.append(code)

    pipeline = TextPipeline()
    vocab = fit_vocabulary(train_docs, pipeline, min_df=min_df)
    model = train_nb(
        [vectorize(d, vocab) for d in train_docs], train_golds, la.ALL_CODES, alpha=alpha
    )
    hits = 0
    for doc, gold in zip(test_docs, test_golds):
        rec = predict(model, vectorize(doc, vocab), gold=gold)
        hits += rec.predicted == gold
    return hits / len(test_docs)
