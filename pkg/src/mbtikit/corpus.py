"""Comment ingestion, cleaning filters and personality-type masking.

Cleaning applies the filters in a fixed order: deleted/removed bodies,
link-prefix bodies ("http", "r/"), minimum length, then type masking.
Rejections are values, not exceptions, and every run balances to a
CleanReport.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator

from .labels import ALL_CODES, MbtiType, parse_type

DEFAULT_MIN_LENGTH = 50
DEFAULT_MASK_TOKEN = "[TYPE]"

# Word token = run not flanked by letters or digits; hyphens and
# underscores count as boundaries. A trailing plural "s" is consumed.
_TYPE_TOKEN_RE = re.compile(
    r"(?<![A-Za-z0-9])(?:" + "|".join(ALL_CODES) + r")s?(?![A-Za-z0-9])",
    re.IGNORECASE,
)


def default_mbti_subreddits() -> frozenset[str]:
    return frozenset({"mbti"} | {code.lower() for code in ALL_CODES})


class Origin(Enum):
    MBTI_SUBREDDIT = "mbti"
    OTHER = "other"


class RejectionRule(Enum):
    DELETED_REMOVED = "deleted-removed"
    LINK_PREFIX = "link-prefix"
    TOO_SHORT = "too-short"


@dataclass
class Comment:
    id: str
    author: str
    subreddit: str
    created_utc: int
    body: str
    label: MbtiType | None = None


@dataclass
class CleanComment:
    id: str
    author: str
    subreddit: str
    created_utc: int
    body: str
    label: MbtiType | None
    masked: bool
    origin: Origin


@dataclass
class Rejection:
    rule: RejectionRule
    comment_id: str


@dataclass
class CleanReport:
    input_count: int = 0
    output_count: int = 0
    rejections: dict[str, int] = field(
        default_factory=lambda: {rule.value: 0 for rule in RejectionRule}
    )
    masked_tokens: int = 0

    def balanced(self) -> bool:
        return self.input_count == self.output_count + sum(self.rejections.values())

    def to_dict(self) -> dict:
        return {
            "input_count": self.input_count,
            "output_count": self.output_count,
            "rejections": dict(self.rejections),
            "masked_tokens": self.masked_tokens,
        }


@dataclass(frozen=True)
class CleaningConfig:
    min_length: int = DEFAULT_MIN_LENGTH
    mask_token: str = DEFAULT_MASK_TOKEN
    mbti_subreddits: frozenset[str] = field(default_factory=default_mbti_subreddits)


def mask_types(text: str, mask_token: str = DEFAULT_MASK_TOKEN) -> tuple[str, int]:
    """Replace every 16-code word token (any case, optional plural s)."""
    return _TYPE_TOKEN_RE.subn(mask_token, text)


def clean(comment: Comment, cfg: CleaningConfig = CleaningConfig()) -> CleanComment | Rejection:
    body = comment.body.strip()
    if body in ("[deleted]", "[removed]"):
        return Rejection(RejectionRule.DELETED_REMOVED, comment.id)
    if body.startswith("http") or body.startswith("r/"):
        return Rejection(RejectionRule.LINK_PREFIX, comment.id)
    if len(body) < cfg.min_length:
        return Rejection(RejectionRule.TOO_SHORT, comment.id)
    masked_body, n_masked = mask_types(body, cfg.mask_token)
    origin = (
        Origin.MBTI_SUBREDDIT
        if comment.subreddit.lower() in cfg.mbti_subreddits
        else Origin.OTHER
    )
    return CleanComment(
        id=comment.id,
        author=comment.author,
        subreddit=comment.subreddit,
        created_utc=comment.created_utc,
        body=masked_body,
        label=comment.label,
        # flag survives re-cleaning: a body that carries the mask token
        # stays marked even though nothing new was replaced
        masked=n_masked > 0 or cfg.mask_token in masked_body,
        origin=origin,
    )


def clean_stream(
    comments: Iterable[Comment], cfg: CleaningConfig = CleaningConfig()
) -> tuple[list[CleanComment], CleanReport]:
    report = CleanReport()
    kept: list[CleanComment] = []
    for comment in comments:
        report.input_count += 1
        result = clean(comment, cfg)
        if isinstance(result, Rejection):
            report.rejections[result.rule.value] += 1
        else:
            report.output_count += 1
            if result.masked:
                report.masked_tokens += mask_count(comment.body)
            kept.append(result)
    return kept, report


def mask_count(text: str) -> int:
    return len(_TYPE_TOKEN_RE.findall(text))


DEFAULT_SCHEMA = {
    "id": "id",
    "author": "author",
    "subreddit": "subreddit",
    "created_utc": "created_utc",
    "body": "body",
    "label": "label",
}

_REQUIRED_FIELDS = ("id", "author", "subreddit", "created_utc", "body")


def ingest(
    path,
    schema: dict[str, str] = DEFAULT_SCHEMA,
    on_reject: Callable[[int, str], None] | None = None,
) -> Iterator[Comment]:
    """Yield Comments from a line-delimited JSON file in file order.

    Records that fail the schema go to on_reject with their 1-based line
    number; an unreadable file raises.
    """
    seen_ids: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                if on_reject:
                    on_reject(line_no, f"malformed JSON: {exc.msg}")
                continue
            try:
                comment = _comment_from_record(raw, schema)
                if not comment.id:
                    raise ValueError("empty id")
                if comment.id in seen_ids:
                    raise ValueError(f"duplicate id {comment.id!r}")
            except (KeyError, TypeError, ValueError) as exc:
                if on_reject:
                    on_reject(line_no, str(exc))
                continue
            seen_ids.add(comment.id)
            yield comment


def _comment_from_record(raw: dict, schema: dict[str, str]) -> Comment:
    values = {}
    for name in _REQUIRED_FIELDS:
        key = schema.get(name, name)
        if key not in raw:
            raise KeyError(f"missing field {key!r}")
        values[name] = raw[key]
    label = None
    label_key = schema.get("label", "label")
    if raw.get(label_key):
        label = parse_type(str(raw[label_key]))
    return Comment(
        id=str(values["id"]),
        author=str(values["author"]),
        subreddit=str(values["subreddit"]),
        created_utc=int(values["created_utc"]),
        body=str(values["body"]),
        label=label,
    )


def comment_to_record(comment: Comment) -> dict:
    return {
        "id": comment.id,
        "author": comment.author,
        "subreddit": comment.subreddit,
        "created_utc": comment.created_utc,
        "body": comment.body,
        "label": comment.label.code if comment.label else None,
    }


def clean_to_record(c: CleanComment) -> dict:
    record = {
        "id": c.id,
        "author": c.author,
        "subreddit": c.subreddit,
        "created_utc": c.created_utc,
        "body": c.body,
        "label": c.label.code if c.label else None,
        "masked": c.masked,
        "origin": c.origin.value,
    }
    return record


def clean_from_record(record: dict) -> CleanComment:
    return CleanComment(
        id=str(record["id"]),
        author=str(record["author"]),
        subreddit=str(record["subreddit"]),
        created_utc=int(record["created_utc"]),
        body=str(record["body"]),
        label=parse_type(record["label"]) if record.get("label") else None,
        masked=bool(record["masked"]),
        origin=Origin(record["origin"]),
    )


def write_jsonl(records: Iterable[dict], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False, separators=(",", ":")))
            fh.write("\n")


def read_clean_jsonl(path) -> list[CleanComment]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(clean_from_record(json.loads(line)))
    return out


def as_comment(c: CleanComment) -> Comment:
    """View a cleaned record as a raw comment (for idempotence checks)."""
    return Comment(c.id, c.author, c.subreddit, c.created_utc, c.body, c.label)


def clean_file(
    in_path, out_path, report_path, cfg: CleaningConfig = CleaningConfig()
) -> CleanReport:
    rejects: list[tuple[int, str]] = []
    comments = ingest(in_path, on_reject=lambda n, m: rejects.append((n, m)))
    kept, report = clean_stream(comments, cfg)
    write_jsonl((clean_to_record(c) for c in kept), out_path)
    payload = report.to_dict()
    payload["schema_rejects"] = [{"line": n, "reason": m} for n, m in rejects]
    with open(report_path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return report
