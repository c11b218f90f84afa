"""Fine-tune a sequence-classification transformer and export predictions.

The output CSV is byte-compatible with the evaluator contract:
id, gold, predicted, then one probability column per label in the
advertised order, each row summing to 1.
"""

from __future__ import annotations

import csv
import json
import os
import random

import numpy as np
import torch

from .config import TrainJobConfig
from .data import (
    load_label_space,
    load_manifest,
    load_records,
    load_split_ids,
    relabel,
    select_split,
)


class ResourceError(RuntimeError):
    pass


def _seed_everything(seed: int) -> list[str]:
    random.seed(seed)
    np.random.seed(seed)
    torch.manual_seed(seed)
    notes = [
        "python/numpy/torch seeds set",
        "cudnn/threaded dataloaders not forced deterministic: GPU kernels and "
        "tokenizer parallelism may still vary bitwise between runs",
    ]
    return notes


def _make_optimizer(name: str, model, lr: float):
    if name.lower() == "adamw":
        return torch.optim.AdamW(model.parameters(), lr=lr)
    return torch.optim.SGD(model.parameters(), lr=lr)


def _batches(n: int, batch_size: int, generator: torch.Generator | None):
    order = torch.randperm(n, generator=generator) if generator is not None else torch.arange(n)
    for start in range(0, n, batch_size):
        yield order[start : start + batch_size]


def _encode(tokenizer, texts: list[str], max_len: int):
    return tokenizer(
        texts,
        truncation=True,
        max_length=max_len,
        padding=True,
        return_tensors="pt",
    )


def _write_tokenized_cache(tokenizer, encodings, ids: list[str], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for i, record_id in enumerate(ids):
            tokens = tokenizer.convert_ids_to_tokens(encodings["input_ids"][i])
            mask = encodings["attention_mask"][i].tolist()
            kept = [t for t, m in zip(tokens, mask) if m]
            fh.write(json.dumps({"id": record_id, "tokens": kept}))
            fh.write("\n")


def _mean_epoch_loss(model, encodings, labels: torch.Tensor, batch_size: int) -> float:
    model.eval()
    total, count = 0.0, 0
    with torch.no_grad():
        for rows in _batches(len(labels), batch_size, generator=None):
            out = model(
                input_ids=encodings["input_ids"][rows],
                attention_mask=encodings["attention_mask"][rows],
                labels=labels[rows],
            )
            total += float(out.loss) * len(rows)
            count += len(rows)
    return total / max(count, 1)


def train_and_predict(
    cfg: TrainJobConfig,
    sample_dir: str,
    out_csv: str,
    run_log_path: str | None = None,
    work_dir: str | None = None,
) -> dict:
    """Train per the job config and write the prediction CSV plus a run log."""
    from transformers import AutoModelForSequenceClassification, AutoTokenizer

    manifest = load_manifest(sample_dir)
    records = load_records(sample_dir)
    labels, mapping = load_label_space(sample_dir, cfg.label_space)

    train_records = select_split(records, load_split_ids(sample_dir, cfg.train_split))
    test_records = select_split(records, load_split_ids(sample_dir, cfg.test_split))
    dev_records = (
        select_split(records, load_split_ids(sample_dir, cfg.dev_split))
        if cfg.dev_split
        else []
    )
    if not train_records or not test_records:
        raise ValueError("train and test splits must be non-empty")

    # label consistency is checked before any training starts
    train_golds = relabel(train_records, mapping, labels)
    test_golds = relabel(test_records, mapping, labels)
    dev_golds = relabel(dev_records, mapping, labels) if dev_records else []

    nondeterminism_notes = _seed_everything(cfg.seed)
    label_index = {lab: i for i, lab in enumerate(labels)}
    batch_size = cfg.resolved_batch_size

    tokenizer = AutoTokenizer.from_pretrained(cfg.base_model)
    model = AutoModelForSequenceClassification.from_pretrained(
        cfg.base_model, num_labels=len(labels)
    )
    model.train()

    train_enc = _encode(tokenizer, [r["body"] for r in train_records], cfg.max_seq_len)
    test_enc = _encode(tokenizer, [r["body"] for r in test_records], cfg.max_seq_len)
    dev_enc = (
        _encode(tokenizer, [r["body"] for r in dev_records], cfg.max_seq_len)
        if dev_records
        else None
    )

    work_dir = work_dir or os.path.dirname(os.path.abspath(out_csv))
    os.makedirs(work_dir, exist_ok=True)
    cache_path = os.path.join(work_dir, "tokenized_cache.jsonl")
    _write_tokenized_cache(
        tokenizer, train_enc, [r["id"] for r in train_records], cache_path
    )

    train_labels = torch.tensor([label_index[g] for g in train_golds])
    dev_labels = torch.tensor([label_index[g] for g in dev_golds]) if dev_records else None

    optimizer = _make_optimizer(cfg.optimizer, model, cfg.learning_rate)
    shuffler = torch.Generator().manual_seed(cfg.seed)
    epoch_log = []
    try:
        for epoch in range(cfg.epochs):
            model.train()
            total, count = 0.0, 0
            for rows in _batches(len(train_records), batch_size, shuffler):
                optimizer.zero_grad()
                out = model(
                    input_ids=train_enc["input_ids"][rows],
                    attention_mask=train_enc["attention_mask"][rows],
                    labels=train_labels[rows],
                )
                out.loss.backward()
                optimizer.step()
                total += out.loss.detach().item() * len(rows)
                count += len(rows)
            entry = {"epoch": epoch, "train_loss": total / max(count, 1)}
            if dev_enc is not None:
                entry["dev_loss"] = _mean_epoch_loss(model, dev_enc, dev_labels, batch_size)
            epoch_log.append(entry)
    except torch.cuda.OutOfMemoryError as exc:  # pragma: no cover - GPU only
        raise ResourceError(
            f"out of memory at batch_size={batch_size}; retry with a smaller --batch-size"
        ) from exc
    except RuntimeError as exc:
        if "out of memory" in str(exc).lower():  # pragma: no cover - host dependent
            raise ResourceError(
                f"out of memory at batch_size={batch_size}; retry with a smaller --batch-size"
            ) from exc
        raise

    # test predictions: softmax probabilities in advertised label order
    model.eval()
    probs = []
    with torch.no_grad():
        for rows in _batches(len(test_records), batch_size, generator=None):
            out = model(
                input_ids=test_enc["input_ids"][rows],
                attention_mask=test_enc["attention_mask"][rows],
            )
            probs.append(torch.softmax(out.logits.double(), dim=1))
    scores = torch.cat(probs).numpy()
    scores = scores / scores.sum(axis=1, keepdims=True)

    with open(out_csv, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "gold", "predicted", *labels])
        for i, record in enumerate(test_records):
            row_scores = scores[i]
            predicted = labels[int(np.argmax(row_scores))]
            writer.writerow(
                [record["id"], test_golds[i], predicted, *[repr(float(s)) for s in row_scores]]
            )

    run_log = {
        "config": cfg.to_dict(),
        "sample_manifest": {k: manifest.get(k) for k in ("rng", "spec", "n_records")},
        "n_train": len(train_records),
        "n_dev": len(dev_records),
        "n_test": len(test_records),
        "labels": labels,
        "epochs": epoch_log,
        "device": "cpu" if not torch.cuda.is_available() else torch.cuda.get_device_name(0),
        "tokenized_cache": cache_path,
        "nondeterminism": nondeterminism_notes,
    }
    if run_log_path:
        with open(run_log_path, "w", encoding="utf-8") as fh:
            json.dump(run_log, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return run_log
