"""Client for a cursor-paginated JSON comment archive.

Two-step collection: gather flair-labeled users from the configured
personality subreddits, then pull each user's comments from across the
site. Requests are rate limited, retried with backoff, and checkpointed
so an interrupted run resumes without duplicating output.

The original public archive this targets is defunct; any endpoint that
accepts (subreddit, author, before, size) query params and returns
{"data": [...]} pages sorted by created_utc descending works, including
the replayable mock server in mbtikit.testing.
"""

from __future__ import annotations

import json
import os
import re
import time
from dataclasses import dataclass
from typing import Iterable, Iterator

import requests

from .corpus import Comment, comment_to_record
from .labels import ALL_CODES, InvalidTypeCode, MbtiType, parse_type

ENV_BASE_URL = "MBTIKIT_ARCHIVE_URL"
FLAIR_FIELD = "author_flair_text"

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+")


class HarvestError(RuntimeError):
    pass


@dataclass(frozen=True)
class HarvestConfig:
    base_url: str
    page_size: int = 500
    rate_limit: float = 10.0  # requests per second
    from_utc: int = 0
    to_utc: int = 2**40
    subreddits: tuple[str, ...] = ("mbti",)
    max_retries: int = 3
    backoff: float = 0.2
    checkpoint_path: str | None = None

    def __post_init__(self) -> None:
        if not (1 <= self.page_size <= 1000):
            raise ValueError("page_size must be in 1..1000")
        if self.rate_limit <= 0:
            raise ValueError("rate_limit must be > 0")
        if self.from_utc > self.to_utc:
            raise ValueError("empty time window")


@dataclass
class UserLabel:
    author: str
    label: MbtiType
    source_subreddit: str
    observed_utc: int


class Checkpoint:
    """JSON file of progress per (user|subreddit) key."""

    def __init__(self, path: str | None):
        self.path = path
        self.state: dict[str, dict] = {}
        if path and os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                self.state = json.load(fh)

    def get(self, key: str) -> dict:
        return self.state.get(key, {})

    def update(self, key: str, **fields) -> None:
        self.state.setdefault(key, {}).update(fields)
        self._save()

    def _save(self) -> None:
        if not self.path:
            return
        tmp = self.path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(self.state, fh, indent=2, sort_keys=True)
        os.replace(tmp, self.path)


class ArchiveClient:
    """One host, at most one in-flight request, never above the rate limit."""

    def __init__(self, cfg: HarvestConfig, session: requests.Session | None = None):
        self.cfg = cfg
        self.session = session or requests.Session()
        self._last_request = 0.0

    def _throttle(self) -> None:
        gap = 1.0 / self.cfg.rate_limit
        wait = self._last_request + gap - time.monotonic()
        if wait > 0:
            time.sleep(wait)

    def fetch_page(
        self,
        subreddit: str | None = None,
        author: str | None = None,
        before: int | None = None,
    ) -> list[dict]:
        params: dict = {"size": self.cfg.page_size}
        if subreddit is not None:
            params["subreddit"] = subreddit
        if author is not None:
            params["author"] = author
        if before is not None:
            params["before"] = before
        last_error = "no attempt made"
        for attempt in range(self.cfg.max_retries + 1):
            if attempt:
                time.sleep(self.cfg.backoff * 2 ** (attempt - 1))
            self._throttle()
            self._last_request = time.monotonic()
            try:
                resp = self.session.get(self.cfg.base_url, params=params, timeout=30)
            except requests.RequestException as exc:
                last_error = str(exc)
                continue
            if resp.status_code == 200:
                try:
                    return resp.json()["data"]
                except (ValueError, KeyError) as exc:
                    last_error = f"malformed response body: {exc}"
                    continue
            last_error = f"HTTP {resp.status_code}"
        raise HarvestError(
            f"request failed after {self.cfg.max_retries + 1} attempts ({last_error}); "
            f"params={params}"
        )


def parse_flair(text: str | None) -> tuple[MbtiType | None, bool]:
    """(label, ambiguous): first token that parses as a type wins, but a
    flair naming two different types is dropped as ambiguous."""
    if not text:
        return None, False
    found: list[MbtiType] = []
    for token in _TOKEN_RE.findall(text):
        if len(token) == 4:
            try:
                found.append(parse_type(token))
            except InvalidTypeCode:
                pass
    codes = {t.code for t in found}
    if not codes:
        return None, False
    if len(codes) > 1:
        return None, True
    return found[0], False


def _paginate(client: ArchiveClient, checkpoint: Checkpoint, key: str, **query) -> Iterator[dict]:
    """Yield archive items newest-first, checkpointing the cursor per page."""
    cfg = client.cfg
    cursor = checkpoint.get(key).get("cursor")
    before = cursor if cursor is not None else cfg.to_utc + 1
    while True:
        try:
            page = client.fetch_page(before=before, **query)
        except HarvestError as exc:
            raise HarvestError(
                f"{exc} (progress checkpointed under {key!r}"
                + (f" in {checkpoint.path}" if checkpoint.path else "")
                + ")"
            ) from None
        if not page:
            return
        for item in page:
            if cfg.from_utc <= item["created_utc"] <= cfg.to_utc:
                yield item
        before = page[-1]["created_utc"]
        checkpoint.update(key, cursor=before)
        if before <= cfg.from_utc:
            return


def _collect_flair_observations(
    client: ArchiveClient, checkpoint: Checkpoint, key: str, subreddit: str, stats: dict
) -> list[tuple]:
    """Paginate one subreddit, recording (author, flair code or None,
    subreddit, utc) per comment. Both the cursor AND the observations
    seen so far are checkpointed per page, so an interrupted run resumes
    without losing or duplicating anything."""
    cfg = client.cfg
    state = checkpoint.get(key)
    partial = [tuple(obs) for obs in state.get("observations", [])]
    if state.get("done"):
        return partial
    cursor = state.get("cursor")
    before = cursor if cursor is not None else cfg.to_utc + 1
    while True:
        try:
            page = client.fetch_page(subreddit=subreddit, before=before)
        except HarvestError as exc:
            raise HarvestError(
                f"{exc} (progress checkpointed under {key!r}"
                + (f" in {checkpoint.path}" if checkpoint.path else "")
                + ")"
            ) from None
        if not page:
            break
        for item in page:
            if not (cfg.from_utc <= item["created_utc"] <= cfg.to_utc):
                continue
            label, ambiguous = parse_flair(item.get(FLAIR_FIELD))
            if ambiguous:
                stats["ambiguous_flairs"] += 1
                continue
            partial.append(
                (item["author"], label.code if label else None, subreddit, item["created_utc"])
            )
        before = page[-1]["created_utc"]
        checkpoint.update(key, cursor=before, observations=[list(o) for o in partial])
        if before <= cfg.from_utc:
            break
    checkpoint.update(key, done=True, observations=[list(o) for o in partial])
    return partial


def harvest_users(
    cfg: HarvestConfig, client: ArchiveClient | None = None
) -> tuple[list[UserLabel], dict]:
    """Collect deduplicated flair-labeled users from the configured subreddits."""
    client = client or ArchiveClient(cfg)
    checkpoint = Checkpoint(cfg.checkpoint_path)
    stats = {"unparseable_flairs": 0, "ambiguous_flairs": 0, "conflicting_authors": 0}
    observations: list[tuple] = []
    for name in cfg.subreddits:
        observations.extend(
            _collect_flair_observations(client, checkpoint, f"subreddit|{name}", name, stats)
        )

    by_author: dict[str, list[tuple]] = {}
    for obs in observations:
        if obs[1] is None:
            stats["unparseable_flairs"] += 1
            continue
        by_author.setdefault(obs[0], []).append(obs)
    users = []
    for author in sorted(by_author):
        codes = {obs[1] for obs in by_author[author]}
        if len(codes) > 1:
            stats["conflicting_authors"] += 1
            continue
        first = min(by_author[author], key=lambda obs: (obs[3], obs[2]))
        users.append(UserLabel(author, parse_type(first[1]), first[2], first[3]))
    return users, stats


def _fetch_user_comments(
    client: ArchiveClient, checkpoint: Checkpoint, user: UserLabel
) -> list[Comment]:
    """One user's comments, labeled, deduplicated, in (created_utc, id) order."""
    key = f"user|{user.author}"
    checkpoint.update(key, cursor=None, done=False)
    collected: dict[str, Comment] = {}
    for item in _paginate(client, checkpoint, key, author=user.author):
        comment = Comment(
            id=str(item["id"]),
            author=item["author"],
            subreddit=item["subreddit"],
            created_utc=int(item["created_utc"]),
            body=item.get("body", ""),
            label=user.label,
        )
        collected.setdefault(comment.id, comment)
    return sorted(collected.values(), key=lambda c: (c.author, c.created_utc, c.id))


def harvest_comments(
    users: Iterable[UserLabel],
    cfg: HarvestConfig,
    client: ArchiveClient | None = None,
) -> Iterator[Comment]:
    """Stream every user's comments, labeled, in (author, created_utc, id) order.

    Fetches run user by user (sorted by author); a user's comments are
    only emitted once the user's fetch completed, and the user is then
    checkpointed as done.
    """
    client = client or ArchiveClient(cfg)
    checkpoint = Checkpoint(cfg.checkpoint_path)
    for user in sorted(users, key=lambda u: u.author):
        yield from _fetch_user_comments(client, checkpoint, user)
        checkpoint.update(f"user|{user.author}", done=True)


def harvest_comments_to_file(
    users: Iterable[UserLabel],
    cfg: HarvestConfig,
    out_path,
    client: ArchiveClient | None = None,
) -> int:
    """Write comments per completed user; resumable against the checkpoint.

    Each user's rows hit the file before the user is checkpointed as
    done, so a resumed run completes the file without duplicates and the
    final bytes match an uninterrupted run. Returns the number of
    comments written by this call.
    """
    users = sorted(users, key=lambda u: u.author)
    client = client or ArchiveClient(cfg)
    checkpoint = Checkpoint(cfg.checkpoint_path)
    fresh = not any(
        checkpoint.get(f"user|{u.author}").get("done") for u in users
    )
    written = 0
    with open(out_path, "w" if fresh else "a", encoding="utf-8") as fh:
        for user in users:
            key = f"user|{user.author}"
            if checkpoint.get(key).get("done"):
                continue
            comments = _fetch_user_comments(client, checkpoint, user)
            for comment in comments:
                fh.write(
                    json.dumps(comment_to_record(comment), ensure_ascii=False, separators=(",", ":"))
                )
                fh.write("\n")
            fh.flush()
            written += len(comments)
            checkpoint.update(key, done=True)
    return written


def enrich_rare_classes(
    users: list[UserLabel],
    per_class_target: int,
    cfg: HarvestConfig,
    client: ArchiveClient | None = None,
) -> tuple[list[UserLabel], dict]:
    """Top up under-represented classes from the type-named subreddits.

    A valid flair wins over the venue; flairless authors get the
    subreddit's type; ambiguous flairs are skipped.
    """
    client = client or ArchiveClient(cfg)
    checkpoint = Checkpoint(cfg.checkpoint_path)
    known = {u.author for u in users}
    counts: dict[str, int] = {code: 0 for code in ALL_CODES}
    for user in users:
        counts[user.label.code] += 1

    added: list[UserLabel] = []
    stats = {"classes_enriched": 0, "users_added": 0, "ambiguous_flairs": 0}
    for code in ALL_CODES:
        if counts[code] >= per_class_target:
            continue
        stats["classes_enriched"] += 1
        name = code.lower()
        observations = _collect_flair_observations(
            client, checkpoint, f"enrich|{name}", name, stats
        )
        for author, flair_code, subreddit, observed_utc in observations:
            if author in known:
                continue
            label = parse_type(flair_code) if flair_code else parse_type(code)
            known.add(author)
            added.append(UserLabel(author, label, subreddit, observed_utc))
    stats["users_added"] = len(added)
    merged = sorted(users + added, key=lambda u: u.author)
    return merged, stats


def users_to_json(users: Iterable[UserLabel], path) -> None:
    payload = [
        {
            "author": u.author,
            "label": u.label.code,
            "source_subreddit": u.source_subreddit,
            "observed_utc": u.observed_utc,
        }
        for u in users
    ]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def users_from_json(path) -> list[UserLabel]:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    return [
        UserLabel(u["author"], parse_type(u["label"]), u["source_subreddit"], u["observed_utc"])
        for u in payload
    ]
