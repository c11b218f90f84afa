"""Two-step harvest against the bundled replayable mock archive.

The client works against any cursor-paginated JSON endpoint; here it
runs against the in-process server so the demo needs no network.

    python demos/03_harvest_mock_archive.py
"""

import tempfile
from pathlib import Path

from mbtikit import harvest as hv
from mbtikit.testing import MockArchiveServer, make_comment

BODY = "a sufficiently long comment body so the cleaning step keeps it later on"

# A tiny archive: flaired activity in the main personality subreddit,
# plus each user's comments across unrelated subreddits.
archive = [
    make_comment("m1", "ada", "mbti", 1001, BODY, flair="INTP"),
    make_comment("m2", "ada", "mbti", 1002, BODY, flair="INTP"),
    make_comment("m3", "brn", "mbti", 1003, BODY, flair="ENTJ | she/her"),
    make_comment("m4", "cal", "mbti", 1004, BODY, flair="no label here"),
    make_comment("m5", "dot", "mbti", 1005, BODY, flair="ESTP/ENTP"),  # ambiguous, dropped
    make_comment("k1", "ada", "books", 2001, BODY),
    make_comment("k2", "ada", "gaming", 2002, BODY),
    make_comment("k3", "brn", "movies", 2003, BODY),
    # enrichment source: the type-named subreddit for a rare class
    make_comment("e1", "eve", "esfj", 3001, BODY),
    make_comment("e2", "fay", "esfj", 3002, BODY, flair="ESFJ"),
]

with MockArchiveServer(archive) as server, tempfile.TemporaryDirectory() as workdir:
    cfg = hv.HarvestConfig(
        base_url=server.base_url,
        page_size=2,
        rate_limit=200,
        checkpoint_path=str(Path(workdir) / "checkpoint.json"),
    )

    # step one: collect flair-labeled users from the main subreddit
    users, stats = hv.harvest_users(cfg)
    print("users found:")
    for u in users:
        print(f"  {u.author}: {u.label.code} (seen {u.observed_utc} in r/{u.source_subreddit})")
    print(f"  skipped: {stats['unparseable_flairs']} unparseable, {stats['ambiguous_flairs']} ambiguous flairs")

    # classes below target get topped up from their type-named subreddit;
    # an explicit flair wins over the venue label
    users, enrich_stats = hv.enrich_rare_classes(users, per_class_target=1, cfg=cfg)
    print(f"\nafter enriching {enrich_stats['classes_enriched']} classes: "
          f"{enrich_stats['users_added']} users added")

    # step two: every user's comments across the whole archive, labeled
    out_path = Path(workdir) / "corpus.jsonl"
    n = hv.harvest_comments_to_file(users, cfg, out_path)
    print(f"\nwrote {n} labeled comments; file is the cleaning stage's input format")
    for line in out_path.read_text().splitlines()[:4]:
        print("  " + line[:100])

    print(f"\nrequests served: {len(server.request_log)} "
          f"(rate limited to {cfg.rate_limit}/s, checkpointed per user)")
