import numpy as np
import pytest

from mbtikit import classify as cl
from mbtikit import labels as la
from mbtikit.features import TextPipeline, fit_vocabulary, vectorize


def toy_vocab(docs):
    vocab = fit_vocabulary(docs, TextPipeline(), min_df=1)
    return vocab, [vectorize(d, vocab) for d in docs]


def test_nb_hand_oracle():
    # class A: "x x", "x y"; class B: "y y"; alpha=1.
    # priors: A 2/3, B 1/3. token counts: A x=3 y=1 (T=4), B y=2 (T=2), V=2.
    # P(x|A)=(3+1)/(4+2)=2/3, P(x|B)=(0+1)/(2+2)=1/4.
    # posterior for "x": A 2/3*2/3=4/9, B 1/3*1/4=1/12 -> normalized 16/19, 3/19.
    vocab, vecs = toy_vocab(["x x", "x y", "y y"])
    model = cl.train_nb(vecs, ["A", "A", "B"], ["A", "B"], alpha=1.0)
    rec = cl.predict(model, vectorize("x", vocab))
    assert rec.predicted == "A"
    np.testing.assert_allclose(rec.scores, [16 / 19, 3 / 19], atol=1e-12)


def test_nb_likelihoods_sum_to_one():
    vocab, vecs = toy_vocab(["x x y z", "x y", "z z y"])
    model = cl.train_nb(vecs, ["A", "B", "A"], alpha=0.5)
    row_sums = np.exp(model.log_likelihoods).sum(axis=1)
    np.testing.assert_allclose(row_sums, 1.0, atol=1e-9)
    np.testing.assert_allclose(np.exp(model.log_priors).sum(), 1.0, atol=1e-9)


def test_nb_separable_classifies_training_docs():
    vocab, vecs = toy_vocab(["aa aa", "aa", "bb bb", "bb"])
    model = cl.train_nb(vecs, ["A", "A", "B", "B"])
    for vec, want in zip(vecs, ["A", "A", "B", "B"]):
        assert cl.predict(model, vec).predicted == want


def test_nb_symmetric_duplicates_give_half():
    vocab, vecs = toy_vocab(["w w", "w w"])
    model = cl.train_nb(vecs, ["A", "B"])
    rec = cl.predict(model, vectorize("w w w", vocab))
    np.testing.assert_allclose(rec.scores, [0.5, 0.5], atol=1e-12)


def test_nb_zero_vector_returns_priors():
    vocab, vecs = toy_vocab(["x x", "x y", "y y"])
    model = cl.train_nb(vecs, ["A", "A", "B"])
    rec = cl.predict(model, vectorize("unseen words only", vocab))
    np.testing.assert_allclose(rec.scores, [2 / 3, 1 / 3], atol=1e-12)


def test_nb_missing_class_error():
    vocab, vecs = toy_vocab(["x", "y"])
    with pytest.raises(cl.MissingClassError) as err:
        cl.train_nb(vecs, ["A", "A"], ["A", "B", "C"])
    assert err.value.absent == ("B", "C")


def test_nb_alpha_validated():
    vocab, vecs = toy_vocab(["x", "y"])
    with pytest.raises(ValueError):
        cl.train_nb(vecs, ["A", "B"], alpha=0.0)


def test_nb_duplication_keeps_argmax():
    # duplicating every training doc must not flip any prediction
    rng = np.random.default_rng(42)
    docs = [" ".join(rng.choice(list("abcdefgh"), size=6)) for _ in range(40)]
    golds = [["P", "Q", "R"][i % 3] for i in range(40)]
    vocab = fit_vocabulary(docs, TextPipeline(), min_df=1)
    vecs = [vectorize(d, vocab) for d in docs]
    single = cl.train_nb(vecs, golds)
    double = cl.train_nb(vecs + vecs, golds + golds)
    probes = [" ".join(rng.choice(list("abcdefgh"), size=5)) for _ in range(30)]
    for probe in probes:
        v = vectorize(probe, vocab)
        assert cl.predict(single, v).predicted == cl.predict(double, v).predicted
    np.testing.assert_allclose(single.log_priors, double.log_priors, atol=1e-12)


def test_predict_dimension_mismatch():
    vocab, vecs = toy_vocab(["x y", "y z"])
    model = cl.train_nb(vecs, ["A", "B"])
    with pytest.raises(cl.DimensionMismatchError):
        cl.predict(model, np.zeros(model.dim + 1))


def test_predict_scores_sum_to_one():
    vocab, vecs = toy_vocab(["x y", "y z", "z q x"])
    model = cl.train_nb(vecs, ["A", "B", "C"])
    for vec in vecs:
        rec = cl.predict(model, vec)
        assert abs(rec.scores.sum() - 1.0) < 1e-9
        assert rec.predicted == model.labels[int(np.argmax(rec.scores))]


def test_logreg_gradient_check():
    # analytic gradient vs central finite differences on a random 3x4 instance
    rng = np.random.default_rng(0)
    x = rng.normal(size=(3, 4))
    weights = rng.normal(size=(2, 4))
    bias = rng.normal(size=2)
    y = np.zeros((3, 2))
    y[np.arange(3), rng.integers(0, 2, 3)] = 1.0

    _, grad_w, grad_b = cl.softmax_loss_and_grad(weights, bias, x, y)
    eps = 1e-6

    def loss_at(w, b):
        return cl.softmax_loss_and_grad(w, b, x, y)[0]

    for i in range(weights.shape[0]):
        for j in range(weights.shape[1]):
            up, down = weights.copy(), weights.copy()
            up[i, j] += eps
            down[i, j] -= eps
            numeric = (loss_at(up, bias) - loss_at(down, bias)) / (2 * eps)
            assert abs(numeric - grad_w[i, j]) / max(abs(numeric), 1e-8) < 1e-4
    for i in range(bias.shape[0]):
        up, down = bias.copy(), bias.copy()
        up[i] += eps
        down[i] -= eps
        numeric = (loss_at(weights, up) - loss_at(weights, down)) / (2 * eps)
        assert abs(numeric - grad_b[i]) / max(abs(numeric), 1e-8) < 1e-4


def test_logreg_separable_reaches_full_accuracy():
    docs = ["aa aa aa", "aa aa", "bb bb bb", "bb bb"] * 4
    golds = ["A", "A", "B", "B"] * 4
    vocab = fit_vocabulary(docs, TextPipeline(), min_df=1)
    vecs = [vectorize(d, vocab) for d in docs]
    model = cl.train_logreg(vecs, golds, lr=0.5, epochs=50, batch=4, seed=0)
    correct = sum(cl.predict(model, v).predicted == g for v, g in zip(vecs, golds))
    assert correct == len(docs)


def test_logreg_validations():
    vocab, vecs = toy_vocab(["x", "y"])
    with pytest.raises(ValueError):
        cl.train_logreg(vecs, ["A", "B"], epochs=0)
    with pytest.raises(ValueError):
        cl.train_logreg(vecs, ["A", "B"], lr=0.0)


@pytest.mark.filterwarnings("ignore:overflow", "ignore:invalid value")
def test_logreg_divergence_aborts_with_epoch():
    # one giant step overflows the weights; the next batch's loss is non-finite
    x = np.array([[1e5], [1e5]])
    with pytest.raises(cl.TrainingDivergedError) as err:
        cl.train_logreg(x, ["A", "B"], lr=1e304, epochs=5, batch=1, seed=0)
    assert err.value.epoch >= 0


def test_logreg_records_dev_losses():
    docs = ["aa", "bb", "aa bb", "bb aa"]
    golds = ["A", "B", "A", "B"]
    vocab = fit_vocabulary(docs, TextPipeline(), min_df=1)
    vecs = [vectorize(d, vocab) for d in docs]
    model = cl.train_logreg(vecs, golds, epochs=7, dev=(vecs[:2], golds[:2]))
    assert len(model.dev_losses) == 7
    assert all(np.isfinite(l) for l in model.dev_losses)


def test_logreg_deterministic_given_seed():
    docs = ["aa bb", "bb cc", "cc aa", "aa cc"]
    golds = ["A", "B", "C", "A"]
    vocab = fit_vocabulary(docs, TextPipeline(), min_df=1)
    vecs = [vectorize(d, vocab) for d in docs]
    m1 = cl.train_logreg(vecs, golds, seed=3, epochs=5)
    m2 = cl.train_logreg(vecs, golds, seed=3, epochs=5)
    np.testing.assert_array_equal(m1.weights, m2.weights)
    np.testing.assert_array_equal(m1.bias, m2.bias)


def _axis_models(vocab, vecs):
    """Four binary models trained on a tiny synthetic axis task."""
    models = {}
    for axis in (la.Granularity.AXIS_IE, la.Granularity.AXIS_NS, la.Granularity.AXIS_TF, la.Granularity.AXIS_PJ):
        labels_t = la.label_space(axis).labels
        golds = [labels_t[i % 2] for i in range(len(vecs))]
        models[axis] = cl.train_nb(vecs, golds, labels_t)
    return models


def _fixed_axis_model(labels, scores):
    """NbModel whose prediction on a zero vector is exactly `scores`."""
    return cl.NbModel(tuple(labels), np.log(scores), np.zeros((2, 1)), 1.0, "")


def test_ensemble_argmax_letters():
    # fixed per-axis scores: I .9, N .8, T .7, P .6 -> INTP
    models = {
        la.Granularity.AXIS_IE: _fixed_axis_model(("E", "I"), [0.1, 0.9]),
        la.Granularity.AXIS_NS: _fixed_axis_model(("N", "S"), [0.8, 0.2]),
        la.Granularity.AXIS_TF: _fixed_axis_model(("F", "T"), [0.3, 0.7]),
        la.Granularity.AXIS_PJ: _fixed_axis_model(("J", "P"), [0.4, 0.6]),
    }
    rec = cl.compose_binary_ensemble(models, np.zeros(1))
    assert rec.predicted == "INTP"
    assert abs(rec.scores.sum() - 1.0) < 1e-9
    full16 = la.label_space(la.Granularity.FULL16).labels
    np.testing.assert_allclose(rec.scores[full16.index("INTP")], 0.9 * 0.8 * 0.7 * 0.6, atol=1e-12)


def test_ensemble_uniform_tie_breaks_by_label_order():
    models = {
        la.Granularity.AXIS_IE: _fixed_axis_model(("E", "I"), [0.5, 0.5]),
        la.Granularity.AXIS_NS: _fixed_axis_model(("N", "S"), [0.5, 0.5]),
        la.Granularity.AXIS_TF: _fixed_axis_model(("F", "T"), [0.5, 0.5]),
        la.Granularity.AXIS_PJ: _fixed_axis_model(("J", "P"), [0.5, 0.5]),
    }
    rec = cl.compose_binary_ensemble(models, np.zeros(1))
    np.testing.assert_allclose(rec.scores, np.full(16, 1 / 16), atol=1e-12)
    assert rec.predicted == "ENFJ"  # alphabetically first type code


def test_ensemble_missing_axis():
    vocab, vecs = toy_vocab(["x y", "y z", "z x", "x x"])
    models = _axis_models(vocab, vecs)
    del models[la.Granularity.AXIS_PJ]
    with pytest.raises(ValueError, match="axis-pj"):
        cl.compose_binary_ensemble(models, vecs[0])


def test_ensemble_consistency_and_marginals():
    vocab, vecs = toy_vocab(["x y", "y z", "z x", "x x", "y y", "z z"])
    models = _axis_models(vocab, vecs)
    full16 = la.label_space(la.Granularity.FULL16).labels
    for vec in vecs:
        rec = cl.compose_binary_ensemble(models, vec)
        # predicted letters equal the individual axis predictions
        for pos, axis in enumerate(
            (la.Granularity.AXIS_IE, la.Granularity.AXIS_NS, la.Granularity.AXIS_TF, la.Granularity.AXIS_PJ)
        ):
            assert rec.predicted[pos] == cl.predict(models[axis], vec).predicted
            # axis marginal of the 16-type scores equals the axis model's scores
            axis_rec = cl.predict(models[axis], vec)
            for letter, want in zip(models[axis].labels, axis_rec.scores):
                mass = sum(
                    s for code, s in zip(full16, rec.scores)
                    if la.project(la.parse_type(code), axis) == letter
                )
                assert abs(mass - want) < 1e-9


def test_prediction_csv_roundtrip(tmp_path):
    vocab, vecs = toy_vocab(["x y", "y z", "z x"])
    model = cl.train_nb(vecs, ["A", "B", "C"])
    pred = cl.predict_batch(model, vecs, ["r1", "r2", "r3"], ["A", "B", "C"])
    path = tmp_path / "pred.csv"
    cl.write_predictions(pred, path)
    loaded = cl.read_predictions(path)
    assert loaded.labels == pred.labels
    for a, b in zip(loaded.records, pred.records):
        assert (a.record_id, a.gold, a.predicted) == (b.record_id, b.gold, b.predicted)
        np.testing.assert_array_equal(a.scores, b.scores)  # repr round-trips floats


def test_model_file_deterministic(tmp_path):
    docs = ["aa bb", "bb cc", "cc aa", "aa cc"]
    golds = ["A", "B", "C", "A"]
    vocab = fit_vocabulary(docs, TextPipeline(), min_df=1)
    vecs = [vectorize(d, vocab) for d in docs]
    paths = []
    for run in range(2):
        model = cl.train_logreg(vecs, golds, seed=3, epochs=5)
        path = tmp_path / f"model{run}.json"
        cl.save_model(model, path, vocab=vocab)
        paths.append(path.read_bytes())
    assert paths[0] == paths[1]


def test_model_save_load_roundtrip(tmp_path):
    vocab, vecs = toy_vocab(["x y", "y z", "z x"])
    model = cl.train_nb(vecs, ["A", "B", "C"], alpha=0.7, vocab_hash=cl.vocab_fingerprint(vocab.terms()))
    path = tmp_path / "nb.json"
    cl.save_model(model, path, vocab=vocab, extra={"space": "full16"})
    loaded, loaded_vocab = cl.load_model(path)
    assert loaded.labels == model.labels
    assert loaded.alpha == 0.7
    np.testing.assert_allclose(loaded.log_likelihoods, model.log_likelihoods)
    assert loaded_vocab.index == vocab.index
    rec_a = cl.predict(model, vecs[0])
    rec_b = cl.predict(loaded, vecs[0])
    np.testing.assert_allclose(rec_a.scores, rec_b.scores)
