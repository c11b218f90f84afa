"""Command line front end for one training job."""

from __future__ import annotations

import argparse
import json
import sys

from .bridge import train_and_predict
from .config import LABEL_SPACES, TrainJobConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trainer-bridge",
        description="Fine-tune a transformer on an exported sample and emit the prediction CSV.",
    )
    parser.add_argument("--sample-dir", required=True)
    parser.add_argument("--space", choices=LABEL_SPACES, default="full16")
    parser.add_argument("--base-model", default="albert-base-v2")
    parser.add_argument("--lr", type=float, default=2e-5)
    parser.add_argument("--optimizer", default="adamw")
    parser.add_argument("--epochs", type=int, default=1)
    parser.add_argument("--batch-size", type=int, default=None)
    parser.add_argument("--max-seq-len", type=int, default=512)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--train-split", default="train")
    parser.add_argument("--dev-split", default="dev")
    parser.add_argument("--test-split", default="test")
    parser.add_argument("--out", required=True, help="prediction CSV path")
    parser.add_argument("--run-log", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = TrainJobConfig(
        base_model=args.base_model,
        label_space=args.space,
        learning_rate=args.lr,
        optimizer=args.optimizer,
        epochs=args.epochs,
        batch_size=args.batch_size,
        max_seq_len=args.max_seq_len,
        seed=args.seed,
        train_split=args.train_split,
        dev_split=args.dev_split or None,
        test_split=args.test_split,
    )
    try:
        run_log = train_and_predict(cfg, args.sample_dir, args.out, args.run_log)
    except Exception as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    print(
        f"trained {cfg.label_space} for {cfg.epochs} epoch(s) at batch {run_log['config']['batch_size']}; "
        f"wrote {run_log['n_test']} predictions -> {args.out}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
