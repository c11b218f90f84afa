"""Baseline classifiers over bag-of-words vectors.

Multinomial naive Bayes with Laplace smoothing, softmax regression
trained by mini-batch gradient descent, and the four-binary-axis
ensemble composed into a 16-type prediction. Training is single-threaded
and fully determined by its manifest.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import labels as la
from .features import SparseVector, TextPipeline, TokenizerConfig, Vocabulary

DEFAULT_ALPHA = 1.0
DEFAULT_LR = 0.1
DEFAULT_EPOCHS = 20
DEFAULT_BATCH = 32

MODEL_FORMAT = "mbtikit-model"
MODEL_VERSION = 1


class MissingClassError(ValueError):
    def __init__(self, absent: Sequence[str]):
        self.absent = tuple(absent)
        super().__init__(f"no training examples for labels: {', '.join(absent)}")


class DimensionMismatchError(ValueError):
    pass


class TrainingDivergedError(RuntimeError):
    def __init__(self, epoch: int):
        self.epoch = epoch
        super().__init__(f"non-finite loss at epoch {epoch}")


@dataclass
class PredictionRecord:
    record_id: str
    gold: str
    predicted: str
    scores: np.ndarray


@dataclass
class PredictionSet:
    labels: tuple[str, ...]
    records: list[PredictionRecord]
    space: la.Granularity | None = None
    merge_mode: str | None = None


@dataclass
class NbModel:
    labels: tuple[str, ...]
    log_priors: np.ndarray
    log_likelihoods: np.ndarray
    alpha: float
    vocab_hash: str
    manifest: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.log_likelihoods.shape[1]


@dataclass
class LogRegModel:
    labels: tuple[str, ...]
    weights: np.ndarray
    bias: np.ndarray
    manifest: dict = field(default_factory=dict)
    dev_losses: list[float] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.weights.shape[1]


def vocab_fingerprint(terms: Sequence[str]) -> str:
    digest = hashlib.sha256("\n".join(terms).encode("utf-8")).hexdigest()
    return digest[:16]


def _densify(vectors) -> np.ndarray:
    if isinstance(vectors, np.ndarray):
        return np.asarray(vectors, dtype=float)
    if not vectors:
        raise ValueError("no vectors supplied")
    mat = np.zeros((len(vectors), vectors[0].dim))
    for row, vec in enumerate(vectors):
        for idx, value in vec.entries:
            mat[row, idx] = value
    return mat


def _label_indices(golds: Sequence[str], label_list: tuple[str, ...]) -> np.ndarray:
    pos = {lab: i for i, lab in enumerate(label_list)}
    try:
        return np.array([pos[g] for g in golds])
    except KeyError as exc:
        raise ValueError(f"gold label {exc.args[0]!r} not in label space") from None


def train_nb(
    vectors,
    golds: Sequence[str],
    label_list: Sequence[str] | None = None,
    alpha: float = DEFAULT_ALPHA,
    vocab_hash: str = "",
) -> NbModel:
    """Multinomial naive Bayes with Laplace smoothing."""
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    labels_t = tuple(label_list) if label_list is not None else tuple(sorted(set(golds)))
    absent = [lab for lab in labels_t if lab not in set(golds)]
    if absent:
        raise MissingClassError(absent)
    x = _densify(vectors)
    y = _label_indices(golds, labels_t)
    n_labels, dim = len(labels_t), x.shape[1]

    counts = np.zeros((n_labels, dim))
    class_docs = np.zeros(n_labels)
    for k in range(n_labels):
        rows = x[y == k]
        counts[k] = rows.sum(axis=0)
        class_docs[k] = rows.shape[0]

    likelihood = (counts + alpha) / (counts.sum(axis=1, keepdims=True) + alpha * dim)
    priors = class_docs / class_docs.sum()
    manifest = {"kind": "nb", "alpha": alpha, "labels": list(labels_t), "vocab": vocab_hash}
    return NbModel(labels_t, np.log(priors), np.log(likelihood), alpha, vocab_hash, manifest)


def _scores_from_log(log_post: np.ndarray) -> np.ndarray:
    shifted = log_post - log_post.max()
    scores = np.exp(shifted)
    return scores / scores.sum()


def predict(model, vector, record_id: str = "", gold: str = "") -> PredictionRecord:
    """Score one vector; scores sum to 1, argmax ties go to label order."""
    x = vector.to_dense() if isinstance(vector, SparseVector) else np.asarray(vector, dtype=float)
    if x.shape[0] != model.dim:
        raise DimensionMismatchError(
            f"vector dim {x.shape[0]} does not match model dim {model.dim}"
        )
    if isinstance(model, NbModel):
        log_post = model.log_priors + model.log_likelihoods @ x
    else:
        log_post = model.weights @ x + model.bias
    scores = _scores_from_log(log_post)
    predicted = model.labels[int(np.argmax(scores))]
    return PredictionRecord(record_id, gold, predicted, scores)


def predict_batch(
    model,
    vectors,
    ids: Sequence[str],
    golds: Sequence[str],
    space: la.Granularity | None = None,
) -> PredictionSet:
    records = [
        predict(model, vec, record_id=i, gold=g)
        for vec, i, g in zip(vectors, ids, golds)
    ]
    return PredictionSet(tuple(model.labels), records, space=space)


def softmax_loss_and_grad(
    weights: np.ndarray, bias: np.ndarray, x: np.ndarray, y_onehot: np.ndarray
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean cross-entropy and its analytic gradient (shared with training)."""
    logits = x @ weights.T + bias
    shifted = logits - logits.max(axis=1, keepdims=True)
    log_z = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    log_probs = shifted - log_z
    loss = -(y_onehot * log_probs).sum(axis=1).mean()
    probs = np.exp(log_probs)
    delta = (probs - y_onehot) / x.shape[0]
    return float(loss), delta.T @ x, delta.sum(axis=0)


def train_logreg(
    vectors,
    golds: Sequence[str],
    label_list: Sequence[str] | None = None,
    lr: float = DEFAULT_LR,
    epochs: int = DEFAULT_EPOCHS,
    batch: int = DEFAULT_BATCH,
    seed: int = 0,
    dev: tuple | None = None,
    vocab_hash: str = "",
) -> LogRegModel:
    """Softmax regression by mini-batch gradient descent, seeded shuffle."""
    if lr <= 0:
        raise ValueError("lr must be > 0")
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    if batch < 1:
        raise ValueError("batch must be >= 1")
    labels_t = tuple(label_list) if label_list is not None else tuple(sorted(set(golds)))
    x = _densify(vectors)
    y = _label_indices(golds, labels_t)
    n, dim = x.shape
    n_labels = len(labels_t)
    y_onehot = np.zeros((n, n_labels))
    y_onehot[np.arange(n), y] = 1.0

    dev_x = dev_onehot = None
    if dev is not None:
        dev_x = _densify(dev[0])
        dev_y = _label_indices(dev[1], labels_t)
        dev_onehot = np.zeros((dev_x.shape[0], n_labels))
        dev_onehot[np.arange(dev_x.shape[0]), dev_y] = 1.0

    rng = np.random.Generator(np.random.PCG64(seed))
    weights = np.zeros((n_labels, dim))
    bias = np.zeros(n_labels)
    dev_losses: list[float] = []

    for epoch in range(epochs):
        order = rng.permutation(n)
        for start in range(0, n, batch):
            rows = order[start : start + batch]
            loss, grad_w, grad_b = softmax_loss_and_grad(
                weights, bias, x[rows], y_onehot[rows]
            )
            if not np.isfinite(loss):
                raise TrainingDivergedError(epoch)
            weights -= lr * grad_w
            bias -= lr * grad_b
        if dev_x is not None:
            dev_loss, _, _ = softmax_loss_and_grad(weights, bias, dev_x, dev_onehot)
            if not np.isfinite(dev_loss):
                raise TrainingDivergedError(epoch)
            dev_losses.append(dev_loss)

    manifest = {
        "kind": "logreg",
        "lr": lr,
        "epochs": epochs,
        "batch": batch,
        "seed": seed,
        "labels": list(labels_t),
        "vocab": vocab_hash,
    }
    return LogRegModel(labels_t, weights, bias, manifest, dev_losses)


_AXIS_ORDER = (la.Granularity.AXIS_IE, la.Granularity.AXIS_NS, la.Granularity.AXIS_TF, la.Granularity.AXIS_PJ)


def compose_binary_ensemble(
    models: dict, vector, record_id: str = "", gold: str = ""
) -> PredictionRecord:
    """Combine the four axis models into one Full16 prediction.

    The 16-type score is the renormalized product of per-axis letter
    scores; the predicted code concatenates the per-axis argmax letters.
    """
    missing = [axis.value for axis in _AXIS_ORDER if axis not in models]
    if missing:
        raise ValueError(f"missing axis models: {', '.join(missing)}")

    axis_scores: dict[la.Granularity, dict[str, float]] = {}
    argmax_letters = []
    for axis in _AXIS_ORDER:
        rec = predict(models[axis], vector)
        model_labels = models[axis].labels
        expected = la.label_space(axis).labels
        if tuple(model_labels) != expected:
            raise ValueError(f"model for {axis.value} has labels {model_labels}, want {expected}")
        axis_scores[axis] = dict(zip(model_labels, rec.scores))
        argmax_letters.append(rec.predicted)

    full16 = la.label_space(la.Granularity.FULL16)
    scores = np.empty(len(full16.labels))
    for i, code in enumerate(full16.labels):
        t = la.parse_type(code)
        scores[i] = (
            axis_scores[la.Granularity.AXIS_IE][t.attitude]
            * axis_scores[la.Granularity.AXIS_NS][t.perceiving]
            * axis_scores[la.Granularity.AXIS_TF][t.judging]
            * axis_scores[la.Granularity.AXIS_PJ][t.orientation]
        )
    scores /= scores.sum()
    predicted = la.assemble_code(argmax_letters)
    return PredictionRecord(record_id, gold, predicted, scores)


def write_predictions(pred_set: PredictionSet, path) -> None:
    """CSV contract: id, gold, predicted, then one score column per label."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "gold", "predicted", *pred_set.labels])
        for rec in pred_set.records:
            writer.writerow([rec.record_id, rec.gold, rec.predicted, *[repr(float(s)) for s in rec.scores]])


def read_predictions(path) -> PredictionSet:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[:3] != ["id", "gold", "predicted"]:
            raise ValueError(f"bad prediction CSV header: {header[:3]}")
        labels_t = tuple(header[3:])
        if not labels_t:
            raise ValueError("prediction CSV has no score columns")
        records = []
        for row in reader:
            if not row:
                continue
            if len(row) != 3 + len(labels_t):
                raise ValueError(f"row for id {row[0]!r} has {len(row)} fields")
            scores = np.array([float(v) for v in row[3:]])
            records.append(PredictionRecord(row[0], row[1], row[2], scores))
    return PredictionSet(labels_t, records)


def save_model(model, path, vocab: Vocabulary | None = None, extra: dict | None = None) -> None:
    """Versioned JSON container with a manifest header; byte-deterministic."""
    payload: dict = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "labels": list(model.labels),
        "manifest": dict(model.manifest),
    }
    if extra:
        payload["manifest"].update(extra)
    if isinstance(model, NbModel):
        payload["kind"] = "nb"
        payload["alpha"] = model.alpha
        payload["arrays"] = {
            "log_priors": model.log_priors.tolist(),
            "log_likelihoods": model.log_likelihoods.tolist(),
        }
        payload["vocab_hash"] = model.vocab_hash
    elif isinstance(model, LogRegModel):
        payload["kind"] = "logreg"
        payload["arrays"] = {
            "weights": model.weights.tolist(),
            "bias": model.bias.tolist(),
        }
        payload["dev_losses"] = model.dev_losses
    else:
        raise TypeError(f"cannot save model of type {type(model).__name__}")
    if vocab is not None:
        payload["vocabulary"] = {
            "terms": vocab.terms(),
            "doc_freq": list(vocab.doc_freq),
            "pipeline": vocab.pipeline.manifest(),
        }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != MODEL_FORMAT:
        raise ValueError(f"{path} is not a {MODEL_FORMAT} file")
    labels_t = tuple(payload["labels"])
    vocab = None
    if "vocabulary" in payload:
        v = payload["vocabulary"]
        pipe_d = v["pipeline"]
        pipeline = TextPipeline(
            tokenizer=TokenizerConfig(
                lowercase=pipe_d["lowercase"],
                strip_urls=pipe_d["strip_urls"],
                strip_html_entities=pipe_d["strip_html_entities"],
                strip_emoji=pipe_d["strip_emoji"],
                ngram_range=tuple(pipe_d["ngram_range"]),
            ),
            stopwords=frozenset(pipe_d["stopwords"]) if pipe_d["stopwords"] is not None else None,
            stem_tokens=pipe_d["stem"],
        )
        vocab = Vocabulary(
            index={term: i for i, term in enumerate(v["terms"])},
            doc_freq=tuple(v["doc_freq"]),
            n_docs=0,
            min_df=0,
            max_df=1.0,
            pipeline=pipeline,
        )
    if payload["kind"] == "nb":
        model = NbModel(
            labels_t,
            np.array(payload["arrays"]["log_priors"]),
            np.array(payload["arrays"]["log_likelihoods"]),
            payload["alpha"],
            payload.get("vocab_hash", ""),
            payload.get("manifest", {}),
        )
    else:
        model = LogRegModel(
            labels_t,
            np.array(payload["arrays"]["weights"]),
            np.array(payload["arrays"]["bias"]),
            payload.get("manifest", {}),
            payload.get("dev_losses", []),
        )
    return model, vocab
