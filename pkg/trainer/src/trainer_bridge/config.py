from __future__ import annotations

from dataclasses import dataclass

LABEL_SPACES = (
    "full16", "dominant8", "firsttwo8",
    "axis-ie", "axis-ns", "axis-tf", "axis-pj",
)

BINARY_SPACES = tuple(s for s in LABEL_SPACES if s.startswith("axis-"))

# the multi-class jobs want a batch big enough to see every class most
# steps; the binary jobs learn fine with a small one
DEFAULT_BATCH_MULTICLASS = 32
DEFAULT_BATCH_BINARY = 10


@dataclass
class TrainJobConfig:
    base_model: str = "albert-base-v2"
    label_space: str = "full16"
    learning_rate: float = 2e-5
    optimizer: str = "adamw"
    epochs: int = 1
    batch_size: int | None = None  # None -> space-dependent default
    max_seq_len: int = 512
    seed: int = 0
    train_split: str = "train"
    dev_split: str | None = "dev"
    test_split: str = "test"

    def __post_init__(self) -> None:
        if self.label_space not in LABEL_SPACES:
            raise ValueError(
                f"label_space {self.label_space!r} not one of {', '.join(LABEL_SPACES)}"
            )
        if self.batch_size is not None and self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.optimizer.lower() not in ("adamw", "sgd"):
            raise ValueError("optimizer must be adamw or sgd")
        if self.max_seq_len < 8:
            raise ValueError("max_seq_len too small")

    @property
    def resolved_batch_size(self) -> int:
        if self.batch_size is not None:
            return self.batch_size
        if self.label_space in BINARY_SPACES:
            return DEFAULT_BATCH_BINARY
        return DEFAULT_BATCH_MULTICLASS

    def to_dict(self) -> dict:
        return {
            "base_model": self.base_model,
            "label_space": self.label_space,
            "learning_rate": self.learning_rate,
            "optimizer": self.optimizer,
            "epochs": self.epochs,
            "batch_size": self.resolved_batch_size,
            "max_seq_len": self.max_seq_len,
            "seed": self.seed,
            "train_split": self.train_split,
            "dev_split": self.dev_split,
            "test_split": self.test_split,
        }
