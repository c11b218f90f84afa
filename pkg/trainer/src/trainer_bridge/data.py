"""Readers for the sample-directory contract and the relabeling step."""

from __future__ import annotations

import json
import os


class LabelMismatchError(ValueError):
    pass


def load_records(sample_dir: str) -> list[dict]:
    records = []
    with open(os.path.join(sample_dir, "records.jsonl"), encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(json.loads(line))
    return records


def load_manifest(sample_dir: str) -> dict:
    with open(os.path.join(sample_dir, "manifest.json"), encoding="utf-8") as fh:
        return json.load(fh)


def load_label_space(sample_dir: str, space: str) -> tuple[list[str], dict[str, str]]:
    path = os.path.join(sample_dir, "label_spaces.json")
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        entry = doc["spaces"][space]
    except KeyError:
        raise LabelMismatchError(f"label space {space!r} not in {path}") from None
    return list(entry["labels"]), dict(entry["mapping"])


def load_split_ids(sample_dir: str, name: str) -> list[str]:
    path = os.path.join(sample_dir, f"{name}.ids")
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def relabel(records: list[dict], mapping: dict[str, str], labels: list[str]) -> list[str]:
    """Map each record's 16-type gold code into the target space.

    Raises before any training happens if a record's label is unknown or
    maps outside the advertised label list.
    """
    label_set = set(labels)
    golds = []
    for record in records:
        code = record.get("label")
        if code not in mapping:
            raise LabelMismatchError(
                f"record {record.get('id')!r} has label {code!r} unknown to the label space"
            )
        target = mapping[code]
        if target not in label_set:
            raise LabelMismatchError(
                f"mapping sends {code!r} to {target!r}, which is not an advertised label"
            )
        golds.append(target)
    return golds


def select_split(records: list[dict], ids: list[str]) -> list[dict]:
    wanted = set(ids)
    return [r for r in records if r["id"] in wanted]
