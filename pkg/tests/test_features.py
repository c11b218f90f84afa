import pytest
from hypothesis import given, strategies as st

from mbtikit import features as fe


def test_tokenize_lowercase_split():
    assert fe.tokenize("I think people would know") == ["i", "think", "people", "would", "know"]


def test_tokenize_strip_urls():
    cfg = fe.TokenizerConfig(strip_urls=True)
    assert fe.tokenize("see https://x.y now", cfg) == ["see", "now"]
    assert fe.tokenize("at www.example.com/page ok", cfg) == ["at", "ok"]


def test_tokenize_keeps_urls_when_off():
    cfg = fe.TokenizerConfig(strip_urls=False)
    assert "https" in fe.tokenize("see https://x.y now", cfg)


@pytest.mark.parametrize(
    "text,want",
    [
        ("&amp; fun", ["fun"]),
        ("a &lt; b &gt; c", ["a", "b", "c"]),
        ("&#8217;s fine", ["s", "fine"]),
        ("&nbsp;here", ["here"]),
        ("caf&eacute; food", ["caf", "food"]),
    ],
)
def test_tokenize_strip_html_entities(text, want):
    assert fe.tokenize(text, fe.TokenizerConfig(strip_html_entities=True)) == want


def test_tokenize_emoji_flag():
    text = "nice \U0001F600 day ❤️"
    on = fe.tokenize(text, fe.TokenizerConfig(strip_emoji=True))
    assert on == ["nice", "day"]
    # default follows the source behavior: emojis pass through segmentation
    off = fe.tokenize(text, fe.TokenizerConfig(strip_emoji=False))
    assert off == ["nice", "day"]  # emoji are not word characters either way


def test_ngram_range_validation():
    with pytest.raises(ValueError):
        fe.TokenizerConfig(ngram_range=(0, 1))
    with pytest.raises(ValueError):
        fe.TokenizerConfig(ngram_range=(2, 1))
    with pytest.raises(ValueError):
        fe.TokenizerConfig(ngram_range=(1, 4))


def test_ngrams():
    assert fe.ngrams(["a", "b", "c"], 1, 2) == ["a", "b", "c", "a b", "b c"]
    assert fe.ngrams(["a"], 2, 2) == []


def test_remove_stopwords():
    lex = frozenset({"i", "the"})
    assert fe.remove_stopwords(["i", "think", "people"], lex) == ["think", "people"]
    assert fe.remove_stopwords([], lex) == []
    assert fe.remove_stopwords(["think", "people"], lex) == ["think", "people"]


def test_default_stopwords_loaded():
    en = fe.default_stopwords("en")
    assert {"i", "the", "and"} <= en


def test_missing_lexicon_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        fe.load_stopwords(tmp_path / "nope.txt")


def test_pipeline_order_and_manifest():
    pipeline = fe.TextPipeline(
        tokenizer=fe.TokenizerConfig(ngram_range=(1, 2)),
        stopwords=frozenset({"the"}),
        stem_tokens=True,
    )
    # tokenize -> stopwords -> stem -> ngrams: "the" removed before bigrams
    # form; stays -> stay (plural) -> stai (y after consonant becomes i)
    assert pipeline("the feeling stays") == ["feel", "stai", "feel stai"]
    manifest = pipeline.manifest()
    assert manifest["order"] == ["tokenize", "stopwords", "stem", "ngrams"]
    assert manifest["stem"] is True
    assert manifest["ngram_range"] == [1, 2]


def test_fit_vocabulary_examples():
    pipe = fe.TextPipeline()
    vocab = fe.fit_vocabulary(["a b", "b c"], pipe, min_df=1)
    assert vocab.size == 3
    vocab2 = fe.fit_vocabulary(["a b", "b c"], pipe, min_df=2)
    assert vocab2.size == 1 and "b" in vocab2.index
    vec = fe.vectorize("b b d", vocab2)
    assert vec.entries == ((vocab2.index["b"], 2.0),)


def test_fit_vocabulary_max_df():
    pipe = fe.TextPipeline()
    vocab = fe.fit_vocabulary(["a b", "b c", "b d"], pipe, min_df=1, max_df=0.67)
    assert "b" not in vocab.index  # df 3/3 above the cap
    assert {"a", "c", "d"} <= set(vocab.index)


def test_empty_corpus_raises():
    with pytest.raises(fe.EmptyCorpusError):
        fe.fit_vocabulary([], fe.TextPipeline())


def test_vocabulary_indices_dense_and_sorted():
    vocab = fe.fit_vocabulary(["c a b", "a b c"], fe.TextPipeline(), min_df=1)
    assert sorted(vocab.index.values()) == list(range(vocab.size))
    assert vocab.terms() == sorted(vocab.terms())


def test_sparse_vector_validation():
    with pytest.raises(ValueError):
        fe.SparseVector(((1, 1.0), (1, 2.0)), 3)
    with pytest.raises(ValueError):
        fe.SparseVector(((0, 0.0),), 3)
    with pytest.raises(ValueError):
        fe.SparseVector(((5, 1.0),), 3)


@given(st.lists(st.text(alphabet="abcdef", min_size=1, max_size=3), max_size=30))
def test_vectorize_mass_bounded_by_token_count(tokens):
    vocab = fe.fit_vocabulary([["a", "b"], ["b", "c"]], min_df=1)
    vec = fe.vectorize(tokens, vocab)
    assert vec.total() <= len(tokens)
    oov = [t for t in tokens if t not in vocab.index]
    if not oov:
        assert vec.total() == len(tokens)


def test_vocabulary_save_load_roundtrip(tmp_path):
    vocab = fe.fit_vocabulary(["a b b", "b c a"], fe.TextPipeline(), min_df=1)
    path = tmp_path / "vocab.tsv"
    fe.save_vocabulary(vocab, path)
    lines = path.read_text().splitlines()
    assert lines[0].split("\t")[0] == vocab.terms()[0]
    loaded = fe.load_vocabulary(path)
    assert loaded.index == vocab.index
    assert loaded.doc_freq == vocab.doc_freq


def test_tokenize_deterministic_and_total():
    weird = "élève 12ab 中文 _под_ снег"
    first = fe.tokenize(weird)
    assert first == fe.tokenize(weird)
    assert all(first)
