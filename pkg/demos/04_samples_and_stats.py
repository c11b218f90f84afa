"""Build the six sample variants and print their per-author statistics.

Subsets: everything, personality-subreddit comments only, or everything
except those. Strategies: balanced (equal per class) or proportionate
(largest-remainder quotas matching the corpus distribution).

    python demos/04_samples_and_stats.py
"""

from mbtikit import sampling as sa
from mbtikit.corpus import clean_stream
from mbtikit.synth import SynthSpec, generate

# synthetic stand-in corpus; the real pipeline feeds harvested comments
comments = generate(SynthSpec(distinctiveness=0.6, docs_per_class=120, seed=42))
corpus, _ = clean_stream(comments)
print(f"corpus: {len(corpus)} cleaned records")

rows = []
for subset in (sa.Subset.TOTAL, sa.Subset.MBTI_ONLY, sa.Subset.NO_MBTI):
    pool = [r for r in corpus if subset is sa.Subset.TOTAL
            or (r.origin.value == "mbti") == (subset is sa.Subset.MBTI_ONLY)]
    min_class = min(
        sum(1 for r in pool if r.label.code == code) for code in sa.la.ALL_CODES
    )
    for strategy in (sa.Strategy.BALANCED, sa.Strategy.PROPORTIONATE):
        if strategy is sa.Strategy.BALANCED:
            spec = sa.SampleSpec(subset, strategy, total_size=16 * min_class,
                                 per_class_cap=min_class, seed=7)
        else:
            spec = sa.SampleSpec(subset, strategy, total_size=len(pool) // 2, seed=7)
        sample = sa.draw_sample(corpus, spec)
        counts = sorted(sample.class_counts.values())
        per_class = str(counts[0]) if counts[0] == counts[-1] else f"{counts[0]}..{counts[-1]}"
        rows.append((
            subset.value, strategy.value, per_class,
            len(sample.records), sample.author_mean, sample.author_median,
        ))

print(f"\n{'subset':<10} {'strategy':<14} {'per class':<10} {'total':<7} {'mean/author':<12} median/author")
for subset, strategy, per_class, total, mean, median in rows:
    print(f"{subset:<10} {strategy:<14} {per_class:<10} {total:<7} {mean:<12.2f} {median}")

# splits are deterministic, disjoint, and stratified for balanced samples
spec = sa.SampleSpec(sa.Subset.TOTAL, sa.Strategy.BALANCED, 1600, per_class_cap=100, seed=7)
sample = sa.draw_sample(corpus, spec)
parts = sa.split(sample, (0.64, 0.16, 0.20), seed=7)
print(f"\nsplit of {len(sample.records)}: train {len(parts.train_ids)}, "
      f"dev {len(parts.dev_ids)}, test {len(parts.test_ids)}")
