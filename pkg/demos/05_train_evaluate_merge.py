"""Train baselines at several granularities and compare merge-down scoring.

The signature comparison: score a single 16-way classifier after
projecting its predictions into a coarser space, against a classifier
trained directly in that space.

    python demos/05_train_evaluate_merge.py
"""

from mbtikit import classify as cl
from mbtikit import evaluate as ev
from mbtikit import labels as la
from mbtikit import sampling as sa
from mbtikit.corpus import clean_stream
from mbtikit.features import TextPipeline, fit_vocabulary, vectorize
from mbtikit.synth import SynthSpec, generate

# weak class signal so the comparison has visible structure
corpus, _ = clean_stream(generate(SynthSpec(0.12, 120, doc_len=(8, 14), seed=3)))
spec = sa.SampleSpec(sa.Subset.TOTAL, sa.Strategy.BALANCED, 1920, seed=3)
sample = sa.draw_sample(corpus, spec)
parts = sa.split(sample, (0.64, 0.16, 0.20), seed=3)
by_id = {r.id: r for r in sample.records}
train = [by_id[i] for i in parts.train_ids]
test = [by_id[i] for i in parts.test_ids]

pipeline = TextPipeline()
vocab = fit_vocabulary((r.body for r in train), pipeline, min_df=2)
train_vecs = [vectorize(r.body, vocab) for r in train]
test_vecs = [vectorize(r.body, vocab) for r in test]
print(f"train {len(train)}, test {len(test)}, vocabulary {vocab.size} terms")

# one 16-way naive Bayes model
full16 = la.label_space(la.Granularity.FULL16).labels
nb16 = cl.train_nb(train_vecs, [r.label.code for r in train], full16)
pred16 = cl.predict_batch(
    nb16, test_vecs, [r.id for r in test], [r.label.code for r in test],
    space=la.Granularity.FULL16,
)
_, report16 = ev.score(pred16, la.Granularity.FULL16)
print(f"\n16-way NB: macro-F1 {report16.macro_f1:.3f}, accuracy {report16.accuracy:.3f} "
      f"(chance {report16.chance:.4f})")

# merge the 16-way predictions down and compare against specialized models
for target in (la.Granularity.DOMINANT8, la.Granularity.AXIS_TF):
    labels = la.label_space(target).labels
    direct = cl.train_nb(train_vecs, [la.project(r.label, target) for r in train], labels)
    direct_pred = cl.predict_batch(
        direct, test_vecs, [r.id for r in test],
        [la.project(r.label, target) for r in test], space=target,
    )
    _, direct_report = ev.score(direct_pred, target)

    merged = ev.merge_predictions(pred16, target, ev.MERGE_ARGMAX)
    _, merged_report = ev.score(merged, target)

    table = ev.compare(direct_report, merged_report, "specialized", "merged-from-16")
    print(f"\n=== {target.value}: specialized vs merged-from-16 (argmax-map) ===")
    print(f"macro-F1 {table.macro[0]:.3f} vs {table.macro[1]:.3f} (delta {table.macro[2]:+.3f}); "
          f"accuracy {table.accuracy[0]:.3f} vs {table.accuracy[1]:.3f}")

# the four-binary-classifier route composed back into a 16-way prediction
axis_models = {}
for axis in (la.Granularity.AXIS_IE, la.Granularity.AXIS_NS, la.Granularity.AXIS_TF, la.Granularity.AXIS_PJ):
    labels = la.label_space(axis).labels
    axis_models[axis] = cl.train_nb(train_vecs, [la.project(r.label, axis) for r in train], labels)
ensemble_records = [
    cl.compose_binary_ensemble(axis_models, vec, record_id=r.id, gold=r.label.code)
    for vec, r in zip(test_vecs, test)
]
ensemble = cl.PredictionSet(full16, ensemble_records, space=la.Granularity.FULL16)
_, ensemble_report = ev.score(ensemble, la.Granularity.FULL16)
print(f"\n4-binary ensemble as 16-way: macro-F1 {ensemble_report.macro_f1:.3f}, "
      f"accuracy {ensemble_report.accuracy:.3f}")
print("(scores are per-axis products, renormalized; per-axis argmaxes concatenate)")


# does training on personality-subreddit comments only change anything?
# the report renders the measured delta; it asserts nothing
def _subset_report(subset):
    spec = sa.SampleSpec(subset, sa.Strategy.BALANCED, 640, per_class_cap=40, seed=5)
    subset_sample = sa.draw_sample(corpus, spec)
    subset_parts = sa.split(subset_sample, (0.64, 0.16, 0.20), seed=5)
    lookup = {r.id: r for r in subset_sample.records}
    subset_train = [lookup[i] for i in subset_parts.train_ids]
    subset_test = [lookup[i] for i in subset_parts.test_ids]
    v = fit_vocabulary((r.body for r in subset_train), pipeline, min_df=2)
    model = cl.train_nb(
        [vectorize(r.body, v) for r in subset_train],
        [r.label.code for r in subset_train], full16,
    )
    preds = cl.predict_batch(
        model, [vectorize(r.body, v) for r in subset_test],
        [r.id for r in subset_test], [r.label.code for r in subset_test],
        space=la.Granularity.FULL16,
    )
    return ev.score(preds, la.Granularity.FULL16)[1]

table = ev.compare(
    _subset_report(sa.Subset.NO_MBTI), _subset_report(sa.Subset.MBTI_ONLY),
    "no-mbti", "mbti-only",
)
print(f"\nmbti-only vs no-mbti (same size, same seeds): "
      f"macro-F1 delta {table.macro[2]:+.3f}, accuracy delta {table.accuracy[2]:+.3f}")
