"""Tokenization, stop-word filtering, stemming and bag-of-words vectors."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Sequence

import numpy as np

from .stemmer import stem

_URL_RE = re.compile(r"(?:https?://|www\.)\S+")
_HTML_ENTITY_RE = re.compile(r"&#?[0-9A-Za-z]+;")
# Emoji presentation blocks plus variation selector / ZWJ glue.
_EMOJI_RE = re.compile(
    "[\U0001F000-\U0001FAFF☀-➿⬀-⯿️‍]"
)
_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


class EmptyCorpusError(ValueError):
    pass


@dataclass(frozen=True)
class TokenizerConfig:
    lowercase: bool = True
    strip_urls: bool = True
    strip_html_entities: bool = True
    strip_emoji: bool = False
    ngram_range: tuple[int, int] = (1, 1)

    def __post_init__(self) -> None:
        lo, hi = self.ngram_range
        if not (1 <= lo <= hi <= 3):
            raise ValueError(f"ngram_range {self.ngram_range} must satisfy 1 <= lo <= hi <= 3")


def tokenize(text: str, cfg: TokenizerConfig = TokenizerConfig()) -> list[str]:
    """Split text into letter/digit runs, with optional span stripping."""
    if cfg.strip_urls:
        text = _URL_RE.sub(" ", text)
    if cfg.strip_html_entities:
        text = _HTML_ENTITY_RE.sub(" ", text)
    if cfg.strip_emoji:
        text = _EMOJI_RE.sub(" ", text)
    tokens = _WORD_RE.findall(text)
    if cfg.lowercase:
        tokens = [t.lower() for t in tokens]
    return tokens


def ngrams(tokens: Sequence[str], lo: int, hi: int) -> list[str]:
    out: list[str] = []
    for n in range(lo, hi + 1):
        out.extend(" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
    return out


def remove_stopwords(tokens: Iterable[str], lexicon: frozenset[str] | set[str]) -> list[str]:
    return [t for t in tokens if t not in lexicon]


def load_stopwords(path) -> frozenset[str]:
    """One word per line; blank lines and #-comments skipped. Missing file raises."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if word and not word.startswith("#"):
                words.add(word.lower())
    return frozenset(words)


def default_stopwords(lang: str = "en") -> frozenset[str]:
    ref = resources.files("mbtikit").joinpath(f"data/stopwords/{lang}.txt")
    with resources.as_file(ref) as path:
        return load_stopwords(path)


@dataclass(frozen=True)
class TextPipeline:
    """Fixed-order text processing: tokenize -> stopwords -> stem -> n-grams.

    The order is part of the contract; manifests record it so results stay
    reproducible.
    """

    tokenizer: TokenizerConfig = TokenizerConfig()
    stopwords: frozenset[str] | None = None
    stem_tokens: bool = False

    def __call__(self, text: str) -> list[str]:
        tokens = tokenize(text, self.tokenizer)
        if self.stopwords is not None:
            tokens = remove_stopwords(tokens, self.stopwords)
        if self.stem_tokens:
            tokens = [stem(t) for t in tokens]
        lo, hi = self.tokenizer.ngram_range
        if (lo, hi) != (1, 1):
            tokens = ngrams(tokens, lo, hi)
        return tokens

    def manifest(self) -> dict:
        return {
            "order": ["tokenize", "stopwords", "stem", "ngrams"],
            "lowercase": self.tokenizer.lowercase,
            "strip_urls": self.tokenizer.strip_urls,
            "strip_html_entities": self.tokenizer.strip_html_entities,
            "strip_emoji": self.tokenizer.strip_emoji,
            "ngram_range": list(self.tokenizer.ngram_range),
            "stopwords": sorted(self.stopwords) if self.stopwords is not None else None,
            "stem": self.stem_tokens,
        }


@dataclass(frozen=True)
class SparseVector:
    """Sorted (index, value) pairs over a fixed dimension."""

    entries: tuple[tuple[int, float], ...]
    dim: int

    def __post_init__(self) -> None:
        prev = -1
        for idx, value in self.entries:
            if idx <= prev or idx >= self.dim:
                raise ValueError(f"indices must be strictly increasing and < {self.dim}")
            if value <= 0:
                raise ValueError(f"value at index {idx} must be > 0, got {value}")
            prev = idx

    def total(self) -> float:
        return sum(v for _, v in self.entries)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.dim)
        for idx, value in self.entries:
            dense[idx] = value
        return dense


@dataclass
class Vocabulary:
    index: dict[str, int]
    doc_freq: tuple[int, ...]
    n_docs: int
    min_df: int
    max_df: float
    pipeline: TextPipeline = field(default_factory=TextPipeline)

    @property
    def size(self) -> int:
        return len(self.index)

    def terms(self) -> list[str]:
        ordered = [""] * len(self.index)
        for term, idx in self.index.items():
            ordered[idx] = term
        return ordered


def _as_tokens(doc, pipeline: TextPipeline) -> list[str]:
    if isinstance(doc, str):
        return pipeline(doc)
    return list(doc)


def fit_vocabulary(
    docs: Iterable,
    pipeline: TextPipeline = TextPipeline(),
    min_df: int = 2,
    max_df: float = 1.0,
) -> Vocabulary:
    """Count document frequencies and keep terms with min_df <= df <= max_df * N.

    Docs may be raw strings (run through the pipeline) or pre-tokenized
    sequences. Indices are dense and assigned in sorted term order.
    """
    df: Counter = Counter()
    n_docs = 0
    for doc in docs:
        n_docs += 1
        df.update(set(_as_tokens(doc, pipeline)))
    if n_docs == 0:
        raise EmptyCorpusError("cannot fit a vocabulary on an empty corpus")
    cap = max_df * n_docs + 1e-9
    kept = sorted(term for term, freq in df.items() if min_df <= freq <= cap)
    index = {term: i for i, term in enumerate(kept)}
    freqs = tuple(df[term] for term in kept)
    return Vocabulary(index, freqs, n_docs, min_df, max_df, pipeline)


def vectorize(doc, vocab: Vocabulary) -> SparseVector:
    """Count in-vocabulary terms; out-of-vocabulary terms are dropped."""
    tokens = _as_tokens(doc, vocab.pipeline)
    counts: Counter = Counter(
        vocab.index[t] for t in tokens if t in vocab.index
    )
    entries = tuple((idx, float(counts[idx])) for idx in sorted(counts))
    return SparseVector(entries, vocab.size)


def vectorize_all(docs: Iterable, vocab: Vocabulary) -> list[SparseVector]:
    return [vectorize(doc, vocab) for doc in docs]


def to_dense_matrix(vectors: Sequence[SparseVector]) -> np.ndarray:
    if not vectors:
        return np.zeros((0, 0))
    mat = np.zeros((len(vectors), vectors[0].dim))
    for row, vec in enumerate(vectors):
        for idx, value in vec.entries:
            mat[row, idx] = value
    return mat


def save_vocabulary(vocab: Vocabulary, path) -> None:
    """Text lines: term<TAB>index<TAB>df."""
    with open(path, "w", encoding="utf-8") as fh:
        for term, idx in sorted(vocab.index.items(), key=lambda kv: kv[1]):
            fh.write(f"{term}\t{idx}\t{vocab.doc_freq[idx]}\n")


def load_vocabulary(path, pipeline: TextPipeline = TextPipeline()) -> Vocabulary:
    index: dict[str, int] = {}
    freqs: list[int] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            term, idx, df = line.rstrip("\n").split("\t")
            index[term] = int(idx)
            freqs.append(int(df))
    return Vocabulary(index, tuple(freqs), n_docs=0, min_df=0, max_df=1.0, pipeline=pipeline)
