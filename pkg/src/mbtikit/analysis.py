"""Per-class language distributions and term-frequency rankings.

Language identification is a stop-word profile match: the profile whose
stop words cover the most tokens wins, with an "und" bucket for texts
below the hit thresholds. Rankings run English-only text through the
features pipeline.
"""

from __future__ import annotations

import csv
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import CleanComment
from .features import TextPipeline, TokenizerConfig, default_stopwords
from .rendering import bar_chart_svg

UNDETERMINED = "und"
DEFAULT_MIN_HITS = 2
DEFAULT_MIN_RATE = 0.1

_LETTERS_RE = re.compile(r"[^\W\d_]+", re.UNICODE)


class EmptyClassError(ValueError):
    pass


def default_profiles(langs: Sequence[str] = ("en", "de", "fr", "es")) -> dict[str, frozenset[str]]:
    """Shipped stop-word profiles, insertion order = tie-break order."""
    return {lang: default_stopwords(lang) for lang in langs}


def detect_language(
    text: str,
    profiles: dict[str, frozenset[str]],
    min_hits: int = DEFAULT_MIN_HITS,
    min_rate: float = DEFAULT_MIN_RATE,
) -> tuple[str, float]:
    """Best-covering profile and its hit-rate margin over the runner-up."""
    if not profiles:
        raise ValueError("at least one language profile required")
    tokens = [t.lower() for t in _LETTERS_RE.findall(text)]
    if not tokens:
        return UNDETERMINED, 0.0
    rates = {}
    hits = {}
    for code, words in profiles.items():
        n = sum(1 for t in tokens if t in words)
        hits[code] = n
        rates[code] = n / len(tokens)
    best = max(profiles, key=lambda c: rates[c])  # ties keep profile order
    others = [rates[c] for c in profiles if c != best]
    margin = rates[best] - max(others) if others else rates[best]
    if hits[best] < min_hits or rates[best] < min_rate:
        return UNDETERMINED, 0.0
    return best, margin


def _class_records(records: Iterable[CleanComment], class_label: str) -> list[CleanComment]:
    subset = [r for r in records if r.label is not None and r.label.code == class_label.upper()]
    if not subset:
        raise EmptyClassError(f"no records labeled {class_label!r}")
    return subset


def language_distribution(
    records: Iterable[CleanComment],
    class_label: str,
    profiles: dict[str, frozenset[str]] | None = None,
) -> list[tuple[str, float]]:
    """(code, fraction) in descending order; fractions sum to 1."""
    profiles = profiles if profiles is not None else default_profiles()
    subset = _class_records(records, class_label)
    counts: Counter = Counter(detect_language(r.body, profiles)[0] for r in subset)
    total = sum(counts.values())
    dist = [(code, n / total) for code, n in counts.items()]
    dist.sort(key=lambda item: (-item[1], item[0]))
    return dist


@dataclass
class TermRanking:
    class_label: str
    entries: list[tuple[str, int, float]]  # (term, count, share), descending count


def default_bow_pipeline() -> TextPipeline:
    return TextPipeline(
        tokenizer=TokenizerConfig(),
        stopwords=default_stopwords("en"),
        stem_tokens=True,
    )


def bow_ranking(
    records: Iterable[CleanComment],
    class_label: str,
    top_k: int = 25,
    pipeline: TextPipeline | None = None,
    profiles: dict[str, frozenset[str]] | None = None,
    english_only: bool = True,
) -> TermRanking:
    """Most frequent pipeline terms for one class.

    share is count over all term occurrences in the class, so the listed
    shares sum to at most 1.
    """
    pipeline = pipeline if pipeline is not None else default_bow_pipeline()
    subset = _class_records(records, class_label)
    if english_only:
        profiles = profiles if profiles is not None else default_profiles()
        subset = [r for r in subset if detect_language(r.body, profiles)[0] == "en"]
        if not subset:
            raise EmptyClassError(f"no English records labeled {class_label!r}")
    counts: Counter = Counter()
    for record in subset:
        counts.update(pipeline(record.body))
    total = sum(counts.values())
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))[:top_k]
    entries = [(term, n, n / total) for term, n in ranked]
    return TermRanking(class_label.upper(), entries)


def write_language_csv(dist: Sequence[tuple[str, float]], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["language", "fraction"])
        for code, fraction in dist:
            writer.writerow([code, repr(fraction)])


def write_ranking_csv(ranking: TermRanking, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["term", "count", "share"])
        for term, count, share in ranking.entries:
            writer.writerow([term, count, repr(share)])


def write_language_svg(dist: Sequence[tuple[str, float]], path, class_label: str = "") -> None:
    svg = bar_chart_svg(
        [(code, fraction) for code, fraction in dist],
        title=f"Language distribution {class_label}".strip(),
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)


def write_ranking_svg(ranking: TermRanking, path) -> None:
    svg = bar_chart_svg(
        [(term, count) for term, count, _ in ranking.entries],
        title=f"Top terms {ranking.class_label}",
        value_format="{:.0f}",
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
