"""Balanced and proportionate sample construction plus train/dev/test splits.

All draws run through a PCG64 generator seeded from the sample spec,
and every
emitted manifest names the generator, so a sample is reproducible
byte-for-byte from (corpus, spec) alone.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from . import labels as la
from .corpus import CleanComment, Origin, clean_from_record, clean_to_record, write_jsonl

RNG_NAME = "pcg64"


class Subset(Enum):
    TOTAL = "total"
    MBTI_ONLY = "mbti-only"
    NO_MBTI = "no-mbti"


class Strategy(Enum):
    BALANCED = "balanced"
    PROPORTIONATE = "proportionate"


class CapacityError(ValueError):
    def __init__(self, label: str, needed: int, available: int):
        self.label = label
        self.needed = needed
        self.available = available
        super().__init__(
            f"class {label}: need {needed} records, only {available} available "
            f"(short {needed - available})"
        )


class EmptySampleError(ValueError):
    pass


@dataclass(frozen=True)
class SampleSpec:
    subset: Subset
    strategy: Strategy
    total_size: int
    per_class_cap: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.total_size <= 0:
            raise ValueError("total_size must be positive")
        if self.strategy is Strategy.BALANCED and self.per_class_cap is None:
            if self.total_size % 16 != 0:
                raise ValueError(
                    "balanced total_size must be divisible by 16 unless per_class_cap is given"
                )

    def to_dict(self) -> dict:
        return {
            "subset": self.subset.value,
            "strategy": self.strategy.value,
            "total_size": self.total_size,
            "per_class_cap": self.per_class_cap,
            "seed": self.seed,
        }


@dataclass
class Sample:
    records: list[CleanComment]
    class_counts: dict[str, int]
    author_mean: float
    author_median: int
    spec: SampleSpec


@dataclass
class Split:
    train_ids: list[str]
    dev_ids: list[str]
    test_ids: list[str]
    proportions: tuple[float, float, float]
    seed: int


def _in_subset(record: CleanComment, subset: Subset) -> bool:
    if subset is Subset.TOTAL:
        return True
    if subset is Subset.MBTI_ONLY:
        return record.origin is Origin.MBTI_SUBREDDIT
    return record.origin is Origin.OTHER


def largest_remainder_targets(counts: dict[str, int], total: int) -> dict[str, int]:
    """Per-class quotas that sum exactly to total, proportional to counts.

    Integer arithmetic: base quota floor(total * n_c / N), leftover seats
    assigned by descending remainder, ties by label order.
    """
    n = sum(counts.values())
    if total > n:
        raise ValueError(f"cannot draw {total} records from {n}")
    quotas = {}
    remainders = []
    for label in sorted(counts):
        base, rem = divmod(total * counts[label], n)
        quotas[label] = base
        remainders.append((-rem, label))
    leftover = total - sum(quotas.values())
    for _, label in sorted(remainders)[:leftover]:
        quotas[label] += 1
    return quotas


def draw_sample(corpus: Iterable[CleanComment], spec: SampleSpec) -> Sample:
    """Draw records per spec; deterministic for a given (corpus, spec)."""
    pool = [r for r in corpus if _in_subset(r, spec.subset)]
    by_class: dict[str, list[CleanComment]] = {code: [] for code in la.ALL_CODES}
    for record in pool:
        if record.label is None:
            continue
        by_class[record.label.code].append(record)

    if spec.strategy is Strategy.BALANCED:
        per_class = spec.per_class_cap if spec.per_class_cap is not None else spec.total_size // 16
        targets = {code: per_class for code in la.ALL_CODES}
    else:
        counts = {code: len(group) for code, group in by_class.items()}
        targets = largest_remainder_targets(counts, spec.total_size)

    for code in la.ALL_CODES:
        if targets[code] > len(by_class[code]):
            raise CapacityError(code, targets[code], len(by_class[code]))

    rng = np.random.Generator(np.random.PCG64(spec.seed))
    records: list[CleanComment] = []
    class_counts: dict[str, int] = {}
    for code in la.ALL_CODES:
        group = by_class[code]
        take = targets[code]
        order = rng.permutation(len(group))
        records.extend(group[i] for i in order[:take])
        class_counts[code] = take

    mean, median = author_stats_from_records(records)
    return Sample(records, class_counts, mean, median, spec)


def author_stats_from_records(records: Sequence[CleanComment]) -> tuple[float, int]:
    if not records:
        raise EmptySampleError("sample has no records")
    per_author: dict[str, int] = {}
    for record in records:
        per_author[record.author] = per_author.get(record.author, 0) + 1
    counts = sorted(per_author.values())
    mean = len(records) / len(counts)
    median = counts[(len(counts) - 1) // 2]  # lower-middle for even length
    return mean, median


def author_stats(sample: Sample) -> tuple[float, int]:
    return author_stats_from_records(sample.records)


def _boundaries(n: int, proportions: Sequence[float]) -> list[int]:
    cuts = []
    cum = 0.0
    for p in proportions[:-1]:
        cum += p
        cuts.append(int(cum * n + 1e-9))
    cuts.append(n)
    return cuts


def split(
    sample: Sample,
    proportions: Sequence[float] = (0.64, 0.16, 0.20),
    seed: int = 0,
) -> Split:
    """Deterministic train/dev/test split; stratified for balanced samples."""
    if len(proportions) != 3:
        raise ValueError("proportions must be (train, dev, test)")
    if any(p < 0 for p in proportions) or abs(sum(proportions) - 1.0) > 1e-9:
        raise ValueError(f"proportions {proportions} must be non-negative and sum to 1")

    rng = np.random.Generator(np.random.PCG64(seed))
    parts: tuple[list[str], list[str], list[str]] = ([], [], [])

    if sample.spec.strategy is Strategy.BALANCED:
        by_class: dict[str, list[str]] = {}
        for record in sample.records:
            by_class.setdefault(record.label.code if record.label else "", []).append(record.id)
        for code in sorted(by_class):
            ids = by_class[code]
            order = rng.permutation(len(ids))
            shuffled = [ids[i] for i in order]
            lo = 0
            for part, hi in zip(parts, _boundaries(len(ids), proportions)):
                part.extend(shuffled[lo:hi])
                lo = hi
    else:
        ids = [record.id for record in sample.records]
        order = rng.permutation(len(ids))
        shuffled = [ids[i] for i in order]
        lo = 0
        for part, hi in zip(parts, _boundaries(len(ids), proportions)):
            part.extend(shuffled[lo:hi])
            lo = hi

    return Split(parts[0], parts[1], parts[2], tuple(proportions), seed)  # type: ignore[arg-type]


def sample_manifest(sample: Sample) -> dict:
    return {
        "rng": RNG_NAME,
        "spec": sample.spec.to_dict(),
        "n_records": len(sample.records),
        "class_counts": dict(sorted(sample.class_counts.items())),
        "author_stats": {"mean": sample.author_mean, "median": sample.author_median},
    }


def save_sample(sample: Sample, out_dir) -> None:
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(sample_manifest(sample), fh, indent=2, sort_keys=True)
        fh.write("\n")
    write_jsonl(
        (clean_to_record(r) for r in sample.records),
        os.path.join(out_dir, "records.jsonl"),
    )


def load_sample(sample_dir) -> Sample:
    with open(os.path.join(sample_dir, "manifest.json"), encoding="utf-8") as fh:
        manifest = json.load(fh)
    records = []
    with open(os.path.join(sample_dir, "records.jsonl"), encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(clean_from_record(json.loads(line)))
    spec_d = manifest["spec"]
    spec = SampleSpec(
        Subset(spec_d["subset"]),
        Strategy(spec_d["strategy"]),
        spec_d["total_size"],
        spec_d["per_class_cap"],
        spec_d["seed"],
    )
    return Sample(
        records,
        manifest["class_counts"],
        manifest["author_stats"]["mean"],
        manifest["author_stats"]["median"],
        spec,
    )


def save_split(split_obj: Split, out_dir) -> None:
    os.makedirs(out_dir, exist_ok=True)
    for name, ids in (
        ("train", split_obj.train_ids),
        ("dev", split_obj.dev_ids),
        ("test", split_obj.test_ids),
    ):
        with open(os.path.join(out_dir, f"{name}.ids"), "w", encoding="utf-8") as fh:
            fh.write("\n".join(ids))
            if ids:
                fh.write("\n")


def load_split_ids(path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]
