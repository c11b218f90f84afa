import json

import pytest
from hypothesis import given, strategies as st

from mbtikit import corpus as co
from mbtikit.labels import ALL_CODES

LONG = "this body is comfortably longer than fifty characters, promise"


def make(body, subreddit="books", cid="c1"):
    return co.Comment(cid, "alice", subreddit, 1600000000, body)


def test_mask_examples():
    assert co.mask_types("I am an INTP and proud") == ("I am an [TYPE] and proud", 1)
    assert co.mask_types("intps vs ESFJs") == ("[TYPE] vs [TYPE]", 2)
    assert co.mask_types("PAINTPOT") == ("PAINTPOT", 0)


def test_mask_hyphen_boundary():
    assert co.mask_types("INTP-style advice") == ("[TYPE]-style advice", 1)
    assert co.mask_types("an anti-ESFJ rant") == ("an anti-[TYPE] rant", 1)


def test_mask_all_16_codes_any_case():
    for code in ALL_CODES:
        for variant in (code, code.lower(), code.capitalize(), code + "s", code.lower() + "s"):
            masked, n = co.mask_types(f"so {variant} indeed")
            assert n == 1, variant
            assert masked == "so [TYPE] indeed"


def test_mask_requires_word_boundary():
    assert co.mask_types("ENTPY")[1] == 0
    assert co.mask_types("xINTP")[1] == 0
    assert co.mask_types("INTPss")[1] == 0


def test_mask_idempotent():
    masked, _ = co.mask_types("INTJ talking to an enfp about ISTPs")
    again, n = co.mask_types(masked)
    assert n == 0 and again == masked


@given(st.lists(st.sampled_from(
    list(ALL_CODES) + [c.lower() for c in ALL_CODES] + [c + "s" for c in ALL_CODES]
    + ["hello", "world", "PAINTPOT", "thinking", "r/books", "&amp;"]
), max_size=20))
def test_mask_leaves_no_codes_behind(words):
    masked, _ = co.mask_types(" ".join(words))
    assert co.mask_count(masked) == 0


def test_clean_rule_order_deleted_before_short():
    result = co.clean(make("[deleted]"))
    assert isinstance(result, co.Rejection)
    assert result.rule is co.RejectionRule.DELETED_REMOVED


@pytest.mark.parametrize("body", ["[deleted]", "[removed]", "  [deleted]  "])
def test_clean_deleted_removed(body):
    result = co.clean(make(body))
    assert isinstance(result, co.Rejection)
    assert result.rule is co.RejectionRule.DELETED_REMOVED


@pytest.mark.parametrize(
    "body",
    [
        "r/books has a thread on this",
        "http://example.com/interesting-article-about-types",
        "https://example.com plus some words to reach length",
        "  r/relationships is where this belongs, leading spaces trimmed",
    ],
)
def test_clean_link_prefix(body):
    result = co.clean(make(body))
    assert isinstance(result, co.Rejection)
    assert result.rule is co.RejectionRule.LINK_PREFIX


def test_clean_link_prefix_only_at_start():
    result = co.clean(make("I posted this over at r/books yesterday and it blew up"))
    assert isinstance(result, co.CleanComment)


def test_clean_too_short():
    result = co.clean(make("ok thanks"))
    assert isinstance(result, co.Rejection)
    assert result.rule is co.RejectionRule.TOO_SHORT


def test_min_length_inclusive():
    body = "x" * 50
    assert isinstance(co.clean(make(body)), co.CleanComment)
    assert isinstance(co.clean(make(body[:-1])), co.Rejection)


def test_min_length_applies_before_masking():
    # exactly 50 chars raw; masking only runs after the length gate
    body = "INTPs " * 8 + "yz"
    assert len(body) == 50
    result = co.clean(make(body))
    assert isinstance(result, co.CleanComment)
    assert result.masked


def test_clean_masks_and_flags():
    result = co.clean(make(f"I am an INTP and {LONG}"))
    assert isinstance(result, co.CleanComment)
    assert "[TYPE]" in result.body
    assert result.masked
    un = co.clean(make(LONG))
    assert isinstance(un, co.CleanComment) and not un.masked


@pytest.mark.parametrize(
    "subreddit,origin",
    [
        ("mbti", co.Origin.MBTI_SUBREDDIT),
        ("MBTI", co.Origin.MBTI_SUBREDDIT),
        ("intp", co.Origin.MBTI_SUBREDDIT),
        ("ESFJ", co.Origin.MBTI_SUBREDDIT),
        ("books", co.Origin.OTHER),
        ("askreddit", co.Origin.OTHER),
    ],
)
def test_clean_origin(subreddit, origin):
    result = co.clean(make(LONG, subreddit=subreddit))
    assert isinstance(result, co.CleanComment)
    assert result.origin is origin


def test_clean_idempotent_on_accepted():
    result = co.clean(make(f"  ENTJ here, {LONG}  "))
    assert isinstance(result, co.CleanComment)
    again = co.clean(co.as_comment(result))
    assert isinstance(again, co.CleanComment)
    assert again == result


@given(
    st.lists(
        st.sampled_from(
            ["[deleted]", "[removed]", "r/books is that way, a long enough body here",
             "http://web.site plus enough words to pass the length gate",
             "short one", LONG, f"an ISFP wrote {LONG}"]
        ),
        max_size=40,
    )
)
def test_clean_report_balances(bodies):
    comments = [make(b, cid=f"c{i}") for i, b in enumerate(bodies)]
    kept, report = co.clean_stream(comments)
    assert report.balanced()
    assert report.input_count == len(bodies)
    assert report.output_count == len(kept)


def test_ingest_valid_file(tmp_path):
    path = tmp_path / "raw.jsonl"
    rows = [
        {"id": "a", "author": "x", "subreddit": "mbti", "created_utc": 1, "body": "b1", "label": "INTP"},
        {"id": "b", "author": "y", "subreddit": "books", "created_utc": 2, "body": "b2"},
        {"id": "c", "author": "z", "subreddit": "mbti", "created_utc": 3, "body": "b3", "label": None},
    ]
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
    rejects = []
    comments = list(co.ingest(path, on_reject=lambda n, m: rejects.append(n)))
    assert [c.id for c in comments] == ["a", "b", "c"]
    assert comments[0].label.code == "INTP"
    assert comments[1].label is None
    assert rejects == []


def test_ingest_rejects_bad_lines(tmp_path):
    path = tmp_path / "raw.jsonl"
    good = {"id": "a", "author": "x", "subreddit": "s", "created_utc": 1, "body": "b"}
    missing = {"id": "b", "author": "x", "subreddit": "s", "created_utc": 2}
    path.write_text(
        json.dumps(good) + "\n" + json.dumps(missing) + "\n" + "{not json\n" + json.dumps(good | {"id": "d"}) + "\n"
    )
    rejects = []
    comments = list(co.ingest(path, on_reject=lambda n, m: rejects.append((n, m))))
    assert [c.id for c in comments] == ["a", "d"]
    assert [n for n, _ in rejects] == [2, 3]


def test_ingest_rejects_duplicate_and_empty_ids(tmp_path):
    path = tmp_path / "raw.jsonl"
    base = {"author": "x", "subreddit": "s", "created_utc": 1, "body": "b"}
    rows = [base | {"id": "a"}, base | {"id": "a"}, base | {"id": ""}, base | {"id": "b"}]
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
    rejects = []
    comments = list(co.ingest(path, on_reject=lambda n, m: rejects.append((n, m))))
    assert [c.id for c in comments] == ["a", "b"]
    assert [n for n, _ in rejects] == [2, 3]
    assert "duplicate id" in rejects[0][1]


def test_ingest_empty_file(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    rejects = []
    assert list(co.ingest(path, on_reject=lambda n, m: rejects.append(n))) == []
    assert rejects == []


def test_ingest_schema_mapping(tmp_path):
    path = tmp_path / "raw.jsonl"
    row = {"name": "a", "who": "x", "where": "mbti", "when": 5, "text": "hi", "flair": "estj"}
    path.write_text(json.dumps(row) + "\n")
    schema = {"id": "name", "author": "who", "subreddit": "where",
              "created_utc": "when", "body": "text", "label": "flair"}
    (comment,) = co.ingest(path, schema=schema)
    assert comment.id == "a" and comment.label.code == "ESTJ"


def test_ingest_missing_file_fatal(tmp_path):
    with pytest.raises(OSError):
        list(co.ingest(tmp_path / "absent.jsonl"))


def test_clean_file_end_to_end(tmp_path):
    raw = tmp_path / "raw.jsonl"
    rows = [
        {"id": "1", "author": "a", "subreddit": "mbti", "created_utc": 1, "body": LONG, "label": "INTP"},
        {"id": "2", "author": "b", "subreddit": "books", "created_utc": 2, "body": "[removed]"},
        {"id": "3", "author": "c", "subreddit": "books", "created_utc": 3, "body": "tiny"},
    ]
    raw.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
    out = tmp_path / "clean.jsonl"
    report_path = tmp_path / "report.json"
    report = co.clean_file(raw, out, report_path)
    assert report.balanced()
    cleaned = co.read_clean_jsonl(out)
    assert len(cleaned) == 1 and cleaned[0].id == "1"
    saved = json.loads(report_path.read_text())
    assert saved["input_count"] == 3 and saved["output_count"] == 1
    assert saved["rejections"]["deleted-removed"] == 1
    assert saved["rejections"]["too-short"] == 1


def test_clean_record_roundtrip():
    result = co.clean(make(f"INTP here. {LONG}", subreddit="mbti"))
    record = co.clean_to_record(result)
    assert co.clean_from_record(json.loads(json.dumps(record))) == result
