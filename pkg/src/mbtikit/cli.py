"""Command line entry point: the pipeline as subcommands over file contracts.

Every subcommand reads and writes only its declared files, exits 0 on
success, and on failure prints a machine-readable error JSON to stderr.
Re-running a subcommand with identical inputs and seeds reproduces its
outputs byte for byte.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

import tomli

from . import __version__
from . import analysis as an
from . import classify as cl
from . import corpus as co
from . import evaluate as ev
from . import features as fe
from . import harvest as hv
from . import labels as la
from . import sampling as sa

ENV_DATA_DIR = "MBTIKIT_DATA_DIR"


class ConfigError(ValueError):
    pass


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    if not os.path.exists(path):
        raise ConfigError(f"config file {path!r} not found")
    with open(path, "rb") as fh:
        try:
            return tomli.load(fh)
        except tomli.TOMLDecodeError as exc:
            raise ConfigError(f"invalid config {path!r}: {exc}") from None


def _resolve(args, config: dict, key: str, default=None):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        return config[key]
    return default


def _path(p: str) -> str:
    base = os.environ.get(ENV_DATA_DIR)
    if base and not os.path.isabs(p):
        return os.path.join(base, p)
    return p


def _require_input(path: str) -> str:
    resolved = _path(path)
    if not os.path.exists(resolved):
        raise ConfigError(f"input path {resolved!r} does not exist")
    return resolved


def _sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _write_manifest(
    out_dir: str, command: str, params: dict, inputs: list[str], seed=None, extra: dict | None = None
) -> None:
    body = json.dumps(params, sort_keys=True)
    manifest = dict(extra) if extra else {}
    manifest.update(
        {
            "tool": "mbtikit",
            "version": __version__,
            "command": command,
            "params": params,
            "config_hash": hashlib.sha256(body.encode("utf-8")).hexdigest(),
            "inputs": {p: _sha256_file(p) for p in sorted(inputs)},
        }
    )
    if seed is not None:
        manifest["seed"] = seed
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _pipeline_from_flags(args, config) -> fe.TextPipeline:
    stopwords_name = _resolve(args, config, "stopwords", "none")
    stopwords = None if stopwords_name in (None, "none") else fe.default_stopwords(stopwords_name)
    stem_tokens = _resolve(args, config, "stem", False)
    ngram = _resolve(args, config, "ngrams", "1,1")
    lo, hi = (int(x) for x in str(ngram).split(","))
    return fe.TextPipeline(
        tokenizer=fe.TokenizerConfig(ngram_range=(lo, hi)),
        stopwords=stopwords,
        stem_tokens=stem_tokens,
    )


# --- subcommands -----------------------------------------------------------


def _cmd_harvest(args, config) -> int:
    base_url = args.base_url or os.environ.get(hv.ENV_BASE_URL) or config.get("base_url")
    if not base_url:
        raise ConfigError("no archive base URL: pass --base-url or set MBTIKIT_ARCHIVE_URL")
    out_dir = _path(_resolve(args, config, "out_dir", "harvest-out"))
    os.makedirs(out_dir, exist_ok=True)
    subreddits = tuple(str(_resolve(args, config, "subreddits", "mbti")).split(","))
    cfg = hv.HarvestConfig(
        base_url=base_url,
        page_size=int(_resolve(args, config, "page_size", 500)),
        rate_limit=float(_resolve(args, config, "rate_limit", 10.0)),
        from_utc=int(_resolve(args, config, "from_utc", 0)),
        to_utc=int(_resolve(args, config, "to_utc", 2**40)),
        subreddits=subreddits,
        checkpoint_path=os.path.join(out_dir, "checkpoint.json"),
    )
    client = hv.ArchiveClient(cfg)
    users, stats = hv.harvest_users(cfg, client)
    target = _resolve(args, config, "per_class_target")
    if target is not None:
        users, enrich_stats = hv.enrich_rare_classes(users, int(target), cfg, client)
        stats["enrich"] = enrich_stats
    hv.users_to_json(users, os.path.join(out_dir, "users.json"))
    n = hv.harvest_comments_to_file(users, cfg, os.path.join(out_dir, "corpus.jsonl"), client)
    stats["users"] = len(users)
    stats["comments_written"] = n
    with open(os.path.join(out_dir, "harvest_stats.json"), "w", encoding="utf-8") as fh:
        json.dump(stats, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"harvested {len(users)} users, {n} comments -> {out_dir}")
    return 0


def _cmd_clean(args, config) -> int:
    in_path = _require_input(_resolve(args, config, "in_path"))
    out_path = _path(_resolve(args, config, "out_path"))
    report_path = _path(_resolve(args, config, "report_path"))
    subreddit_file = _resolve(args, config, "mbti_subreddits")
    if subreddit_file:
        names = fe.load_stopwords(_require_input(subreddit_file))  # same one-per-line format
        mbti_subreddits = frozenset(names)
    else:
        mbti_subreddits = co.default_mbti_subreddits()
    cfg = co.CleaningConfig(
        min_length=int(_resolve(args, config, "min_length", co.DEFAULT_MIN_LENGTH)),
        mask_token=str(_resolve(args, config, "mask_token", co.DEFAULT_MASK_TOKEN)),
        mbti_subreddits=mbti_subreddits,
    )
    report = co.clean_file(in_path, out_path, report_path, cfg)
    print(
        f"cleaned {report.input_count} -> {report.output_count} comments "
        f"({sum(report.rejections.values())} rejected) -> {out_path}"
    )
    return 0


def _cmd_sample(args, config) -> int:
    in_path = _require_input(_resolve(args, config, "in_path"))
    out_dir = _path(_resolve(args, config, "out_dir", "sample-out"))
    os.makedirs(out_dir, exist_ok=True)
    seed = int(_resolve(args, config, "seed", 0))
    spec = sa.SampleSpec(
        subset=sa.Subset(_resolve(args, config, "subset", "total")),
        strategy=sa.Strategy(_resolve(args, config, "strategy", "balanced")),
        total_size=int(_resolve(args, config, "total_size")),
        per_class_cap=(
            int(_resolve(args, config, "per_class_cap"))
            if _resolve(args, config, "per_class_cap") is not None
            else None
        ),
        seed=seed,
    )
    records = co.read_clean_jsonl(in_path)
    sample = sa.draw_sample(records, spec)
    sa.save_sample(sample, out_dir)
    la.write_label_spaces(os.path.join(out_dir, "label_spaces.json"))
    split_arg = _resolve(args, config, "split")
    if split_arg:
        proportions = tuple(float(x) for x in str(split_arg).split(","))
        split_seed = int(_resolve(args, config, "split_seed", seed))
        split_obj = sa.split(sample, proportions, split_seed)
        sa.save_split(split_obj, out_dir)
    _write_manifest(
        out_dir,
        "sample",
        {"spec": spec.to_dict(), "split": split_arg, "in": in_path},
        [in_path],
        seed=seed,
        extra=sa.sample_manifest(sample),
    )
    print(f"sampled {len(sample.records)} records -> {out_dir}")
    return 0


def _load_split_records(sample_dir: str, split_name: str | None):
    sample = sa.load_sample(sample_dir)
    if not split_name or split_name == "all":
        return sample, sample.records
    ids_path = os.path.join(sample_dir, f"{split_name}.ids")
    if not os.path.exists(ids_path):
        raise ConfigError(f"split file {ids_path!r} not found")
    wanted = set(sa.load_split_ids(ids_path))
    return sample, [r for r in sample.records if r.id in wanted]


def _cmd_train(args, config) -> int:
    sample_dir = _require_input(_resolve(args, config, "sample_dir"))
    out_path = _path(_resolve(args, config, "out_path", "model.json"))
    space = la.parse_granularity(_resolve(args, config, "space", "full16"))
    model_kind = _resolve(args, config, "model", "nb")
    seed = int(_resolve(args, config, "seed", 0))

    _, records = _load_split_records(sample_dir, _resolve(args, config, "split", "train"))
    if not records:
        raise ConfigError("training split is empty")
    pipeline = _pipeline_from_flags(args, config)
    vocab = fe.fit_vocabulary(
        (r.body for r in records),
        pipeline,
        min_df=int(_resolve(args, config, "min_df", 2)),
        max_df=float(_resolve(args, config, "max_df", 1.0)),
    )
    vectors = [fe.vectorize(r.body, vocab) for r in records]
    golds = [la.project(r.label, space) for r in records]
    space_labels = la.label_space(space).labels
    vhash = cl.vocab_fingerprint(vocab.terms())

    if model_kind == "nb":
        model = cl.train_nb(
            vectors, golds, space_labels, alpha=float(_resolve(args, config, "alpha", cl.DEFAULT_ALPHA)),
            vocab_hash=vhash,
        )
    elif model_kind == "logreg":
        dev = None
        dev_name = _resolve(args, config, "dev_split")
        if dev_name:
            _, dev_records = _load_split_records(sample_dir, dev_name)
            dev = (
                [fe.vectorize(r.body, vocab) for r in dev_records],
                [la.project(r.label, space) for r in dev_records],
            )
        model = cl.train_logreg(
            vectors,
            golds,
            space_labels,
            lr=float(_resolve(args, config, "lr", cl.DEFAULT_LR)),
            epochs=int(_resolve(args, config, "epochs", cl.DEFAULT_EPOCHS)),
            batch=int(_resolve(args, config, "batch", cl.DEFAULT_BATCH)),
            seed=seed,
            dev=dev,
            vocab_hash=vhash,
        )
    else:
        raise ConfigError(f"unknown model kind {model_kind!r} (nb or logreg)")

    cl.save_model(
        model,
        out_path,
        vocab=vocab,
        extra={"space": space.value, "sample_dir": sample_dir, "seed": seed},
    )
    print(f"trained {model_kind} over {space.value} on {len(records)} records -> {out_path}")
    return 0


def _cmd_predict(args, config) -> int:
    sample_dir = _require_input(_resolve(args, config, "sample_dir"))
    out_path = _path(_resolve(args, config, "out_path", "predictions.csv"))
    split_name = _resolve(args, config, "split", "test")
    _, records = _load_split_records(sample_dir, split_name)
    if not records:
        raise ConfigError("prediction split is empty")

    ensemble_arg = _resolve(args, config, "ensemble")
    if ensemble_arg:
        paths = [_require_input(p) for p in str(ensemble_arg).split(",")]
        if len(paths) != 4:
            raise ConfigError("--ensemble needs the four axis model files")
        models = {}
        vocab = None
        vocab_hashes = set()
        for p in paths:
            model, v = cl.load_model(p)
            axis = la.parse_granularity(model.manifest["space"])
            models[axis] = model
            vocab = vocab or v
            vocab_hashes.add(model.manifest.get("vocab", ""))
        if len(vocab_hashes) > 1:
            raise ConfigError("ensemble models were fitted on different vocabularies")
        space = la.Granularity.FULL16
        pred_records = [
            cl.compose_binary_ensemble(
                models, fe.vectorize(r.body, vocab), record_id=r.id, gold=la.project(r.label, space)
            )
            for r in records
        ]
        pred_set = cl.PredictionSet(la.label_space(space).labels, pred_records, space=space)
    else:
        model_path = _require_input(_resolve(args, config, "model"))
        model, vocab = cl.load_model(model_path)
        if vocab is None:
            raise ConfigError(f"model {model_path!r} carries no vocabulary")
        space = la.parse_granularity(model.manifest["space"])
        vectors = [fe.vectorize(r.body, vocab) for r in records]
        pred_set = cl.predict_batch(
            model,
            vectors,
            [r.id for r in records],
            [la.project(r.label, space) for r in records],
            space=space,
        )
    cl.write_predictions(pred_set, out_path)
    print(f"wrote {len(pred_set.records)} predictions over {space.value} -> {out_path}")
    return 0


def _cmd_evaluate(args, config) -> int:
    pred_path = _require_input(_resolve(args, config, "pred"))
    out_dir = _path(_resolve(args, config, "out_dir", "eval-out"))
    os.makedirs(out_dir, exist_ok=True)
    pred_set = cl.read_predictions(pred_path)
    space_name = _resolve(args, config, "space")
    space = la.parse_granularity(space_name) if space_name else None
    if _resolve(args, config, "merge_from_16", False):
        if space is None or space is la.Granularity.FULL16:
            raise ConfigError("--merge-from-16 needs a coarser --space")
        mode = _resolve(args, config, "mode", ev.MERGE_ARGMAX)
        pred_set = ev.merge_predictions(pred_set, space, mode)
        cl.write_predictions(pred_set, os.path.join(out_dir, "merged_predictions.csv"))
    cm, report = ev.score(pred_set, space)
    ev.write_metrics_json(report, os.path.join(out_dir, "metrics.json"))
    normalize = _resolve(args, config, "normalize", "row")
    ev.write_heatmap_csv(cm, os.path.join(out_dir, "confusion.csv"), normalize)
    ev.write_heatmap_svg(
        cm, os.path.join(out_dir, "heatmap.svg"), normalize,
        title=space.value if space else "confusion",
    )
    _write_manifest(
        out_dir, "evaluate",
        {"pred": pred_path, "space": space_name, "normalize": normalize,
         "merge_from_16": bool(_resolve(args, config, "merge_from_16", False)),
         "mode": _resolve(args, config, "mode")},
        [pred_path],
    )
    print(
        f"scored {report.total} records: macro-F1 {report.macro_f1:.4f}, "
        f"accuracy {report.accuracy:.4f} (chance {report.chance:.4f}) -> {out_dir}"
    )
    return 0


def _cmd_merge_eval(args, config) -> int:
    pred_path = _require_input(_resolve(args, config, "pred"))
    out_dir = _path(_resolve(args, config, "out_dir", "merge-eval-out"))
    os.makedirs(out_dir, exist_ok=True)
    target = la.parse_granularity(_resolve(args, config, "space"))
    mode = _resolve(args, config, "mode", ev.MERGE_ARGMAX)
    pred_set = cl.read_predictions(pred_path)
    merged = ev.merge_predictions(pred_set, target, mode)
    cl.write_predictions(merged, os.path.join(out_dir, "merged_predictions.csv"))
    cm, report = ev.score(merged, target)
    ev.write_metrics_json(report, os.path.join(out_dir, "metrics.json"))
    normalize = _resolve(args, config, "normalize", "row")
    ev.write_heatmap_csv(cm, os.path.join(out_dir, "confusion.csv"), normalize)
    ev.write_heatmap_svg(
        cm, os.path.join(out_dir, "heatmap.svg"), normalize,
        title=f"{target.value} ({mode})",
    )
    _write_manifest(
        out_dir, "merge-eval", {"pred": pred_path, "space": target.value, "mode": mode},
        [pred_path],
    )
    print(
        f"merged to {target.value} [{mode}]: macro-F1 {report.macro_f1:.4f}, "
        f"accuracy {report.accuracy:.4f} -> {out_dir}"
    )
    return 0


def _cmd_analyze_lang(args, config) -> int:
    sample_dir = _require_input(_resolve(args, config, "sample_dir"))
    class_label = str(_resolve(args, config, "class_label")).upper()
    out_dir = _path(_resolve(args, config, "out_dir", "lang-out"))
    os.makedirs(out_dir, exist_ok=True)
    sample = sa.load_sample(sample_dir)
    dist = an.language_distribution(sample.records, class_label)
    an.write_language_csv(dist, os.path.join(out_dir, f"language_{class_label}.csv"))
    an.write_language_svg(dist, os.path.join(out_dir, f"language_{class_label}.svg"), class_label)
    _write_manifest(out_dir, "analyze-lang", {"class": class_label, "sample_dir": sample_dir}, [])
    print(f"language distribution for {class_label}: {dist[:3]} -> {out_dir}")
    return 0


def _cmd_analyze_bow(args, config) -> int:
    sample_dir = _require_input(_resolve(args, config, "sample_dir"))
    class_label = str(_resolve(args, config, "class_label")).upper()
    out_dir = _path(_resolve(args, config, "out_dir", "bow-out"))
    top_k = int(_resolve(args, config, "top_k", 25))
    english_only = bool(_resolve(args, config, "english_only", True))
    stem_tokens = bool(_resolve(args, config, "stem", True))
    os.makedirs(out_dir, exist_ok=True)
    sample = sa.load_sample(sample_dir)
    pipeline = fe.TextPipeline(
        stopwords=fe.default_stopwords("en"), stem_tokens=stem_tokens
    )
    ranking = an.bow_ranking(
        sample.records, class_label, top_k=top_k,
        pipeline=pipeline, english_only=english_only,
    )
    an.write_ranking_csv(ranking, os.path.join(out_dir, f"bow_{class_label}.csv"))
    an.write_ranking_svg(ranking, os.path.join(out_dir, f"bow_{class_label}.svg"))
    _write_manifest(
        out_dir, "analyze-bow",
        {"class": class_label, "top_k": top_k, "sample_dir": sample_dir,
         "english_only": english_only, "stem": stem_tokens}, [],
    )
    print(f"top terms for {class_label}: {[t for t, _, _ in ranking.entries[:5]]} -> {out_dir}")
    return 0


def _collect_report_inputs(run_dir: str) -> tuple[list, list]:
    samples = []
    metrics = []
    for root, dirs, files in os.walk(run_dir):
        dirs.sort()
        for name in sorted(files):
            path = os.path.join(root, name)
            rel = os.path.relpath(path, run_dir)
            if name == "manifest.json":
                with open(path, encoding="utf-8") as fh:
                    data = json.load(fh)
                if "spec" in data and "class_counts" in data:
                    samples.append((rel, data))
            elif name == "metrics.json":
                metrics.append((rel, ev.load_metrics_json(path)))
    return samples, metrics


def _cmd_report(args, config) -> int:
    run_dir = _require_input(_resolve(args, config, "run_dir"))
    out_path = _path(_resolve(args, config, "out_path", os.path.join(run_dir, "report.md")))
    samples, metrics = _collect_report_inputs(run_dir)

    lines = ["# Pipeline report", ""]
    if samples:
        lines += [
            "## Samples",
            "",
            "| sample | subset | strategy | per class | total | mean/author | median/author |",
            "|---|---|---|---|---|---|---|",
        ]
        for rel, data in samples:
            spec = data["spec"]
            counts = data["class_counts"]
            values = sorted(set(counts.values()))
            per_class = str(values[0]) if len(values) == 1 else f"{values[0]}..{values[-1]}"
            stats = data["author_stats"]
            lines.append(
                f"| {os.path.dirname(rel) or '.'} | {spec['subset']} | {spec['strategy']} "
                f"| {per_class} | {data['n_records']} | {stats['mean']:.2f} | {stats['median']} |"
            )
        lines.append("")
    if metrics:
        lines += [
            "## Classifier scores",
            "",
            "| run | labels | macro-F1 | accuracy | chance | merge mode |",
            "|---|---|---|---|---|---|",
        ]
        for rel, data in metrics:
            lines.append(
                f"| {os.path.dirname(rel) or '.'} | {len(data['labels'])} "
                f"| {data['macro_f1']:.4f} | {data['accuracy']:.4f} "
                f"| {data['chance']:.4f} | {data.get('merge_mode') or 'direct'} |"
            )
        lines.append("")
        merged = [(rel, d) for rel, d in metrics if d.get("merge_mode")]
        direct = [(rel, d) for rel, d in metrics if not d.get("merge_mode")]
        for mrel, mdata in merged:
            for drel, ddata in direct:
                if mdata["labels"] != ddata["labels"]:
                    continue
                table = ev.compare(
                    ev.report_from_dict(ddata),
                    ev.report_from_dict(mdata),
                    name_a=os.path.dirname(drel) or "direct",
                    name_b=os.path.dirname(mrel) or "merged",
                )
                lines += [
                    f"## {os.path.dirname(drel) or 'direct'} vs {os.path.dirname(mrel) or 'merged'}",
                    "",
                    ev.comparison_markdown(table),
                ]
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines).rstrip() + "\n")
    print(f"report -> {out_path}")
    return 0


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbtikit",
        description="Personality-labeled comment pipeline: harvest, clean, sample, train, evaluate.",
    )
    parser.add_argument("--version", action="version", version=f"mbtikit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--config", help="flat TOML config; flags override it")
        p.set_defaults(fn=fn)
        return p

    p = add("harvest", _cmd_harvest, help="collect labeled users and their comments")
    p.add_argument("--base-url", dest="base_url")
    p.add_argument("--subreddits")
    p.add_argument("--from-utc", dest="from_utc", type=int)
    p.add_argument("--to-utc", dest="to_utc", type=int)
    p.add_argument("--page-size", dest="page_size", type=int)
    p.add_argument("--rate-limit", dest="rate_limit", type=float)
    p.add_argument("--per-class-target", dest="per_class_target", type=int)
    p.add_argument("--out-dir", dest="out_dir")

    p = add("clean", _cmd_clean, help="filter and mask a raw comment dump")
    p.add_argument("--in", dest="in_path")
    p.add_argument("--out", dest="out_path")
    p.add_argument("--report", dest="report_path")
    p.add_argument("--min-length", dest="min_length", type=int)
    p.add_argument("--mask-token", dest="mask_token")
    p.add_argument("--mbti-subreddits", dest="mbti_subreddits")

    p = add("sample", _cmd_sample, help="draw a balanced or proportionate sample")
    p.add_argument("--in", dest="in_path")
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--subset", choices=[s.value for s in sa.Subset])
    p.add_argument("--strategy", choices=[s.value for s in sa.Strategy])
    p.add_argument("--total-size", dest="total_size", type=int)
    p.add_argument("--per-class-cap", dest="per_class_cap", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--split", help="train,dev,test proportions, e.g. 0.64,0.16,0.20")
    p.add_argument("--split-seed", dest="split_seed", type=int)

    p = add("train", _cmd_train, help="train a baseline classifier on a sample")
    p.add_argument("--sample-dir", dest="sample_dir")
    p.add_argument("--split")
    p.add_argument("--dev-split", dest="dev_split")
    p.add_argument("--space", choices=[g.value for g in la.Granularity])
    p.add_argument("--model", choices=["nb", "logreg"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--lr", type=float)
    p.add_argument("--epochs", type=int)
    p.add_argument("--batch", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--min-df", dest="min_df", type=int)
    p.add_argument("--max-df", dest="max_df", type=float)
    p.add_argument("--stopwords", choices=["none", "en", "de", "fr", "es"])
    p.add_argument("--stem", action=argparse.BooleanOptionalAction)
    p.add_argument("--ngrams")
    p.add_argument("--out", dest="out_path")

    p = add("predict", _cmd_predict, help="write the prediction CSV for a split")
    p.add_argument("--model")
    p.add_argument("--ensemble", help="four axis model files, comma separated")
    p.add_argument("--sample-dir", dest="sample_dir")
    p.add_argument("--split")
    p.add_argument("--out", dest="out_path")

    p = add("evaluate", _cmd_evaluate, help="score a prediction CSV")
    p.add_argument("--pred")
    p.add_argument("--space", choices=[g.value for g in la.Granularity])
    p.add_argument("--merge-from-16", dest="merge_from_16", action=argparse.BooleanOptionalAction)
    p.add_argument("--mode", choices=[ev.MERGE_ARGMAX, ev.MERGE_SCORE_SUM])
    p.add_argument("--normalize", choices=["row", "none"])
    p.add_argument("--out-dir", dest="out_dir")

    p = add("merge-eval", _cmd_merge_eval, help="merge Full16 predictions down and score")
    p.add_argument("--pred")
    p.add_argument("--space", choices=[g.value for g in la.Granularity if g is not la.Granularity.FULL16])
    p.add_argument("--mode", choices=[ev.MERGE_ARGMAX, ev.MERGE_SCORE_SUM])
    p.add_argument("--normalize", choices=["row", "none"])
    p.add_argument("--out-dir", dest="out_dir")

    p = add("analyze-lang", _cmd_analyze_lang, help="per-class language distribution")
    p.add_argument("--sample-dir", dest="sample_dir")
    p.add_argument("--class", dest="class_label")
    p.add_argument("--out-dir", dest="out_dir")

    p = add("analyze-bow", _cmd_analyze_bow, help="per-class top term ranking")
    p.add_argument("--sample-dir", dest="sample_dir")
    p.add_argument("--class", dest="class_label")
    p.add_argument("--top-k", dest="top_k", type=int)
    p.add_argument("--english-only", dest="english_only", action=argparse.BooleanOptionalAction)
    p.add_argument("--stem", action=argparse.BooleanOptionalAction)
    p.add_argument("--out-dir", dest="out_dir")

    p = add("report", _cmd_report, help="render existing artifacts as one markdown summary")
    p.add_argument("--run-dir", dest="run_dir")
    p.add_argument("--out", dest="out_path")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        return args.fn(args, config)
    except Exception as exc:  # contract: nonzero exit + machine-readable error
        error = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(error), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
