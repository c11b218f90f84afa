"""Fixtures: a tiny offline transformer and a synthetic sample directory.

The sample files are written here by hand, field for field, because the
file formats are the contract between the two packages; nothing is
imported from the producing toolkit.
"""

import json
import random

import pytest
from tokenizers import Tokenizer
from tokenizers.models import WordPiece
from tokenizers.normalizers import Lowercase
from tokenizers.pre_tokenizers import Whitespace
from tokenizers.processors import TemplateProcessing
from transformers import BertConfig, BertModel, PreTrainedTokenizerFast

TYPE_CODES = [
    a + p + j + o for a in "EI" for p in "NS" for j in "TF" for o in "JP"
]
TYPE_CODES.sort()

AXES = {
    "axis-ie": 0,
    "axis-ns": 1,
    "axis-tf": 2,
    "axis-pj": 3,
}

WORDS = [
    "moon", "river", "stone", "glass", "quiet", "loud", "north", "south",
    "amber", "copper", "violet", "cedar", "maple", "harbor", "meadow", "ridge",
    "ember", "frost", "drift", "spark", "willow", "thistle", "fable", "puzzle",
]


def _label_spaces_doc() -> dict:
    spaces = {"full16": {"labels": TYPE_CODES, "mapping": {c: c for c in TYPE_CODES}}}
    for name, pos in AXES.items():
        letters = sorted({c[pos] for c in TYPE_CODES})
        spaces[name] = {
            "labels": letters,
            "mapping": {c: c[pos] for c in TYPE_CODES},
        }
    # coarse 8-way spaces exist in the real export; the smoke tests only
    # exercise full16 and the axes, so a placeholder grouping suffices
    eight = sorted({c[:2] for c in TYPE_CODES})
    for name in ("dominant8", "firsttwo8"):
        spaces[name] = {
            "labels": eight,
            "mapping": {c: c[:2] for c in TYPE_CODES},
        }
    return {"spaces": spaces}


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory):
    """Randomly initialized 2-layer BERT plus a wordpiece vocab on disk."""
    model_dir = tmp_path_factory.mktemp("tiny-model")
    specials = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
    # the 16 codes are deliberately in-vocabulary: if an unmasked acronym
    # ever reached the tokenizer it would show up in the token cache
    vocab_words = specials + WORDS + [c.lower() for c in TYPE_CODES] + ["type"]
    vocab = {w: i for i, w in enumerate(vocab_words)}
    tok = Tokenizer(WordPiece(vocab, unk_token="[UNK]"))
    tok.normalizer = Lowercase()
    tok.pre_tokenizer = Whitespace()
    tok.post_processor = TemplateProcessing(
        single="[CLS] $A [SEP]",
        pair="[CLS] $A [SEP] $B [SEP]",
        special_tokens=[("[CLS]", vocab["[CLS]"]), ("[SEP]", vocab["[SEP]"])],
    )
    fast = PreTrainedTokenizerFast(
        tokenizer_object=tok,
        pad_token="[PAD]",
        unk_token="[UNK]",
        cls_token="[CLS]",
        sep_token="[SEP]",
        mask_token="[MASK]",
    )
    fast.save_pretrained(model_dir)
    config = BertConfig(
        vocab_size=len(vocab),
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=512,
    )
    BertModel(config).save_pretrained(model_dir)
    return str(model_dir)


def _make_body(rng: random.Random, words_per_body: int = 14) -> str:
    tokens = [rng.choice(WORDS) for _ in range(words_per_body)]
    if rng.random() < 0.5:
        tokens.insert(rng.randrange(len(tokens)), "[TYPE]")  # masked mention
    return " ".join(tokens)


@pytest.fixture(scope="session")
def sample_dir(tmp_path_factory):
    """200 masked synthetic records in the exported sample format."""
    out = tmp_path_factory.mktemp("sample")
    rng = random.Random(12)
    records = []
    for i in range(200):
        code = TYPE_CODES[i % 16]
        records.append(
            {
                "id": f"rec{i:04d}",
                "author": f"{code.lower()}_u{i % 40}",
                "subreddit": "mbti" if i % 2 else "books",
                "created_utc": 1_700_000_000 + i,
                "body": _make_body(rng),
                "label": code,
                "masked": True,
                "origin": "mbti" if i % 2 else "other",
            }
        )
    # one pathological record: far over the 512-token budget
    records[7]["body"] = " ".join(rng.choice(WORDS) for _ in range(2000))

    with open(out / "records.jsonl", "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")

    class_counts = {}
    for record in records:
        class_counts[record["label"]] = class_counts.get(record["label"], 0) + 1
    manifest = {
        "rng": "pcg64",
        "spec": {
            "subset": "total", "strategy": "balanced",
            "total_size": len(records), "per_class_cap": None, "seed": 12,
        },
        "n_records": len(records),
        "class_counts": class_counts,
        "author_stats": {"mean": 5.0, "median": 5},
    }
    with open(out / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)

    with open(out / "label_spaces.json", "w", encoding="utf-8") as fh:
        json.dump(_label_spaces_doc(), fh, indent=2, sort_keys=True)

    ids = [record["id"] for record in records]
    splits = {"train": ids[:120], "dev": ids[120:160], "test": ids[160:]}
    for name, chunk in splits.items():
        with open(out / f"{name}.ids", "w", encoding="utf-8") as fh:
            fh.write("\n".join(chunk) + "\n")
    return str(out)
