"""Cleaning pipeline on a handful of raw comments.

    python demos/02_cleaning_and_masking.py
"""

from mbtikit import corpus as co

RAW = [
    ("c1", "mbti", "I am an INTP and I way overthink everything, which is why this comment is long."),
    ("c2", "books", "[deleted]"),
    ("c3", "books", "r/fantasy has a better thread on this exact question"),
    ("c4", "movies", "lol"),
    ("c5", "intp", "Fellow intps will understand; ESFJs are our exact opposites, or so the theory says."),
    ("c6", "gaming", "http://example.com/build-guide"),
    ("c7", "cooking", "Completely unrelated to personality tests, just a long comment about stock reduction."),
]

comments = [co.Comment(cid, "someone", sub, 0, body) for cid, sub, body in RAW]

# The filters run in a fixed order: deleted/removed, link prefix
# ("http", "r/"), minimum length (default 50), then type masking.
kept, report = co.clean_stream(comments)

print("per-comment outcomes:")
for comment in comments:
    result = co.clean(comment)
    if isinstance(result, co.Rejection):
        print(f"  {comment.id} [{comment.subreddit:>7}] rejected: {result.rule.value}")
    else:
        flag = "masked" if result.masked else "kept"
        print(f"  {comment.id} [{comment.subreddit:>7}] {flag} ({result.origin.value}): {result.body[:60]}")

print("\nreport:")
print(f"  input          {report.input_count}")
print(f"  output         {report.output_count}")
for rule, count in report.rejections.items():
    print(f"  {rule:<14} {count}")
print(f"  masked tokens  {report.masked_tokens}")
assert report.balanced()

# Masking replaces every 16-code token, not just the author's own label,
# and consumes a trailing plural s. Word boundaries are strict: embedded
# matches stay untouched.
print("\nmasking close-ups:")
for text in ("intps vs ESFJs", "PAINTPOT is a word", "INTP-style reasoning"):
    masked, n = co.mask_types(text)
    print(f"  {text!r} -> {masked!r} ({n} masked)")
