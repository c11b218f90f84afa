"""Language distribution per class and top-term rankings.

Detection is a stop-word profile match: the shipped profiles (en, de,
fr, es) vote by hit rate, with an "und" bucket below the evidence
thresholds. BoW rankings run English-only text through stop-word
removal and stemming.

    python demos/06_language_and_bow.py
"""

from mbtikit import analysis as an
from mbtikit.corpus import CleanComment, Origin
from mbtikit.labels import parse_type

SNIPPETS = {
    "INTP": [
        "I think people would know the answer if they stopped to think about what the question is",
        "the idea is that people do not actually know what they would do until it happens to them",
        "je pense que les gens ne savent pas ce que cette question veut dire dans la vie",
        "zzkwq blorp xyzzy gleep",
    ],
    "ESFJ": [
        "i feel that people would know when something is wrong and they should say it with feeling",
        "we had such a warm evening with all of the people from the group and it was so nice",
        "ich finde die leute wissen nicht was sie sagen wollen und das ist auch gut so",
    ],
}

records = []
for label, bodies in SNIPPETS.items():
    for i, body in enumerate(bodies):
        records.append(CleanComment(
            id=f"{label}-{i}", author=f"{label.lower()}_user", subreddit="mbti",
            created_utc=i, body=body, label=parse_type(label),
            masked=False, origin=Origin.MBTI_SUBREDDIT,
        ))

profiles = an.default_profiles()
print("detection per snippet:")
for r in records:
    code, margin = an.detect_language(r.body, profiles)
    print(f"  [{r.label.code}] {code:>4} (margin {margin:.2f}): {r.body[:55]}")

for label in ("INTP", "ESFJ"):
    dist = an.language_distribution(records, label)
    print(f"\nlanguage distribution for {label} (descending):")
    for code, fraction in dist:
        print(f"  {code:>4} {fraction:.2f}")

# rankings drop non-English records first, then stop words, then stem
for label in ("INTP", "ESFJ"):
    ranking = an.bow_ranking(records, label, top_k=8)
    print(f"\ntop stemmed terms for {label}:")
    for term, count, share in ranking.entries:
        print(f"  {term:<10} count {count:>2}  share {share:.3f}")
