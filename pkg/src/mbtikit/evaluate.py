"""Scoring, merge-down evaluation and report comparison.

The signature operation: take 16-type predictions, project them into
a coarser space (dominant function, first-two group, or one letter
axis) and rescore, so a single 16-way classifier can be compared
against models trained directly in the coarse space.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from . import labels as la
from .classify import PredictionRecord, PredictionSet
from .rendering import heatmap_svg

MERGE_ARGMAX = "argmax-map"
MERGE_SCORE_SUM = "score-sum"


class UnknownLabelError(ValueError):
    def __init__(self, record_id: str, label: str):
        self.record_id = record_id
        self.label = label
        super().__init__(f"record {record_id!r}: label {label!r} outside the label space")


class SpaceMismatchError(ValueError):
    pass


@dataclass
class ConfusionMatrix:
    labels: tuple[str, ...]
    counts: np.ndarray  # gold x predicted

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int
    zero_division: bool = False


@dataclass
class MetricsReport:
    labels: tuple[str, ...]
    per_class: dict[str, ClassMetrics]
    macro_f1: float
    micro_f1: float
    accuracy: float
    chance: float
    total: int
    merge_mode: str | None = None

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "per_class": {
                lab: {
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "support": m.support,
                    "zero_division": m.zero_division,
                }
                for lab, m in self.per_class.items()
            },
            "macro_f1": self.macro_f1,
            "micro_f1": self.micro_f1,
            "accuracy": self.accuracy,
            "chance": self.chance,
            "total": self.total,
            "merge_mode": self.merge_mode,
        }


def confusion_matrix(pred_set: PredictionSet) -> ConfusionMatrix:
    labels_t = pred_set.labels
    pos = {lab: i for i, lab in enumerate(labels_t)}
    counts = np.zeros((len(labels_t), len(labels_t)), dtype=np.int64)
    for rec in pred_set.records:
        if rec.gold not in pos:
            raise UnknownLabelError(rec.record_id, rec.gold)
        if rec.predicted not in pos:
            raise UnknownLabelError(rec.record_id, rec.predicted)
        counts[pos[rec.gold], pos[rec.predicted]] += 1
    return ConfusionMatrix(labels_t, counts)


def metrics_from_matrix(cm: ConfusionMatrix, merge_mode: str | None = None) -> MetricsReport:
    counts = cm.counts
    total = int(counts.sum())
    tp = np.diag(counts).astype(float)
    pred_totals = counts.sum(axis=0).astype(float)
    gold_totals = counts.sum(axis=1).astype(float)

    per_class: dict[str, ClassMetrics] = {}
    f1s = []
    for i, lab in enumerate(cm.labels):
        zero = bool(pred_totals[i] == 0 or gold_totals[i] == 0)
        precision = float(tp[i] / pred_totals[i]) if pred_totals[i] > 0 else 0.0
        recall = float(tp[i] / gold_totals[i]) if gold_totals[i] > 0 else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
        per_class[lab] = ClassMetrics(precision, recall, f1, int(gold_totals[i]), zero)
        f1s.append(f1)

    accuracy = float(tp.sum() / total) if total else 0.0
    return MetricsReport(
        labels=cm.labels,
        per_class=per_class,
        macro_f1=float(np.mean(f1s)) if f1s else 0.0,
        micro_f1=accuracy,  # single-label multiclass: micro-F1 equals accuracy
        accuracy=accuracy,
        chance=1.0 / len(cm.labels),
        total=total,
        merge_mode=merge_mode,
    )


def score(
    pred_set: PredictionSet, space: la.Granularity | None = None
) -> tuple[ConfusionMatrix, MetricsReport]:
    """Confusion matrix and metrics for a prediction set.

    When a granularity is given, the set's score columns must match that
    space's canonical labels.
    """
    if space is not None:
        expected = la.label_space(space).labels
        if tuple(pred_set.labels) != expected:
            raise SpaceMismatchError(
                f"prediction labels {pred_set.labels} do not match {space.value} {expected}"
            )
    cm = confusion_matrix(pred_set)
    return cm, metrics_from_matrix(cm, merge_mode=pred_set.merge_mode)


def merge_predictions(
    pred_set: PredictionSet,
    target: la.Granularity,
    mode: str = MERGE_ARGMAX,
) -> PredictionSet:
    """Project Full16 predictions into a coarser space.

    Score vectors are summed over each target group and renormalized in
    both modes. argmax-map takes the projection of the Full16 argmax as
    the merged label; score-sum re-argmaxes the summed scores. The two
    can disagree when score mass splits across a group.
    """
    if mode not in (MERGE_ARGMAX, MERGE_SCORE_SUM):
        raise ValueError(f"unknown merge mode {mode!r}")
    full16 = la.label_space(la.Granularity.FULL16)
    if tuple(pred_set.labels) != full16.labels:
        raise SpaceMismatchError("merge_predictions needs Full16 prediction columns")
    if target is la.Granularity.FULL16:
        raise ValueError("target space must be coarser than full16")

    target_space = la.label_space(target)
    target_pos = {lab: i for i, lab in enumerate(target_space.labels)}
    group_of = np.array(
        [target_pos[la.project(la.parse_type(code), target)] for code in full16.labels]
    )

    merged_records = []
    for rec in pred_set.records:
        merged_scores = np.zeros(len(target_space.labels))
        np.add.at(merged_scores, group_of, rec.scores)
        ssum = merged_scores.sum()
        if ssum > 0:
            merged_scores = merged_scores / ssum
        gold = la.project(la.parse_type(rec.gold), target)
        if mode == MERGE_ARGMAX:
            predicted = la.project(la.parse_type(rec.predicted), target)
        else:
            predicted = target_space.labels[int(np.argmax(merged_scores))]
        merged_records.append(PredictionRecord(rec.record_id, gold, predicted, merged_scores))
    return PredictionSet(target_space.labels, merged_records, space=target, merge_mode=mode)


@dataclass
class ComparisonTable:
    name_a: str
    name_b: str
    labels: tuple[str, ...]
    rows: list[tuple[str, float, float, float]] = field(default_factory=list)
    macro: tuple[float, float, float] = (0.0, 0.0, 0.0)
    accuracy: tuple[float, float, float] = (0.0, 0.0, 0.0)


def compare(report_a: MetricsReport, report_b: MetricsReport, name_a: str = "A", name_b: str = "B") -> ComparisonTable:
    """Side-by-side per-class F1 with signed deltas (B minus A)."""
    if report_a.labels != report_b.labels:
        raise SpaceMismatchError(
            f"label spaces differ: {report_a.labels} vs {report_b.labels}"
        )
    table = ComparisonTable(name_a, name_b, report_a.labels)
    for lab in report_a.labels:
        fa = report_a.per_class[lab].f1
        fb = report_b.per_class[lab].f1
        table.rows.append((lab, fa, fb, fb - fa))
    table.macro = (report_a.macro_f1, report_b.macro_f1, report_b.macro_f1 - report_a.macro_f1)
    table.accuracy = (report_a.accuracy, report_b.accuracy, report_b.accuracy - report_a.accuracy)
    return table


def comparison_markdown(table: ComparisonTable) -> str:
    lines = [
        f"| class | F1 {table.name_a} | F1 {table.name_b} | delta |",
        "|---|---|---|---|",
    ]
    for lab, fa, fb, delta in table.rows:
        lines.append(f"| {lab} | {fa:.4f} | {fb:.4f} | {delta:+.4f} |")
    lines.append(
        f"| **macro-F1** | {table.macro[0]:.4f} | {table.macro[1]:.4f} | {table.macro[2]:+.4f} |"
    )
    lines.append(
        f"| **accuracy** | {table.accuracy[0]:.4f} | {table.accuracy[1]:.4f} | {table.accuracy[2]:+.4f} |"
    )
    return "\n".join(lines) + "\n"


def heatmap_data(cm: ConfusionMatrix, normalize: str = "row") -> np.ndarray:
    """Grid for plotting; row normalization leaves all-zero rows at zero."""
    if normalize not in ("row", "none"):
        raise ValueError(f"normalize must be 'row' or 'none', got {normalize!r}")
    grid = cm.counts.astype(float)
    if normalize == "row":
        sums = grid.sum(axis=1, keepdims=True)
        grid = np.divide(grid, sums, out=np.zeros_like(grid), where=sums > 0)
    return grid


def write_heatmap_csv(cm: ConfusionMatrix, path, normalize: str = "row") -> None:
    grid = heatmap_data(cm, normalize)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["gold\\predicted", *cm.labels])
        for i, lab in enumerate(cm.labels):
            writer.writerow([lab, *[repr(float(v)) for v in grid[i]]])


def write_heatmap_svg(cm: ConfusionMatrix, path, normalize: str = "row", title: str = "") -> None:
    grid = heatmap_data(cm, normalize)
    svg = heatmap_svg(grid, cm.labels, cm.labels, title=title)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)


def write_metrics_json(report: MetricsReport, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_metrics_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def report_from_dict(d: dict) -> MetricsReport:
    per_class = {
        lab: ClassMetrics(
            m["precision"], m["recall"], m["f1"], m["support"], m["zero_division"]
        )
        for lab, m in d["per_class"].items()
    }
    return MetricsReport(
        labels=tuple(d["labels"]),
        per_class=per_class,
        macro_f1=d["macro_f1"],
        micro_f1=d["micro_f1"],
        accuracy=d["accuracy"],
        chance=d["chance"],
        total=d["total"],
        merge_mode=d.get("merge_mode"),
    )
