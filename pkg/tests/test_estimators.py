import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from ghzsym.estimators import GHZSymmetrizer, SloccClassifier
from ghzsym.exceptions import InvalidStateError, OutsideTriangleError
from ghzsym.statespace import basis_ket, pure_to_density, werner
from ghzsym.twirl import coords_of_density, twirl

from .oracles import random_density

S3 = np.sqrt(3)


@pytest.fixture
def states(rng):
    return np.stack([werner(0.1), werner(0.3), werner(0.5), werner(0.9), random_density(rng)])


def test_params_and_clone():
    est = GHZSymmetrizer(output="matrix", atol=1e-8)
    assert est.get_params() == {"output": "matrix", "validate": True, "atol": 1e-8}
    twin = clone(est)
    assert twin.get_params() == est.get_params() and twin is not est
    assert SloccClassifier(tol=1e-6).set_params(tol=0.0).tol == 0.0


def test_unfitted_raises(states):
    with pytest.raises(NotFittedError):
        GHZSymmetrizer().transform(states)
    with pytest.raises(NotFittedError):
        SloccClassifier().predict([[0.0, 0.0]])


def test_symmetrizer_outputs(states):
    coords = GHZSymmetrizer().fit_transform(states)
    assert coords.shape == (5, 2)
    assert np.allclose(coords[1], (0.15, S3 * 0.3 / 4))
    mats = GHZSymmetrizer(output="matrix").fit_transform(states)
    assert mats.shape == (5, 8, 8)
    assert np.allclose(mats[4], twirl(states[4]))


def test_symmetrizer_accepts_flat_rows(states):
    flat = states.reshape(len(states), 64)
    assert np.allclose(GHZSymmetrizer().fit_transform(flat), GHZSymmetrizer().fit_transform(states))
    single = GHZSymmetrizer().fit(states).transform(states[0])
    assert single.shape == (1, 2)


def test_symmetrizer_rejects(states):
    bad = states.copy()
    bad[0, 0, 0] += 0.5
    with pytest.raises(InvalidStateError):
        GHZSymmetrizer().fit(bad)
    GHZSymmetrizer(validate=False).fit(bad)
    with pytest.raises(ValueError):
        GHZSymmetrizer().fit(np.zeros((3, 10)))
    with pytest.raises(ValueError):
        GHZSymmetrizer(output="bloch").fit(states)


def test_classifier_predict():
    clf = SloccClassifier().fit()
    X = [[0.0, 0.0], [0.25, S3 / 8], [-0.5, S3 / 4], [0.1, S3 / 8]]
    assert list(clf.predict(X)) == [0, 2, 3, 1]
    assert list(clf.classes_) == [0, 1, 2, 3]
    with pytest.raises(OutsideTriangleError):
        clf.predict([[0.45, 0.0]])
    with pytest.raises(ValueError):
        clf.predict([[0.0, 0.0, 0.0]])


def test_margins():
    m = SloccClassifier().fit().margins([[0.0, 0.0], [0.1, S3 / 20]])
    assert m.shape == (2, 4)
    assert m[0] == pytest.approx([0.125] * 4)
    assert m[1, 0] == pytest.approx(0.0, abs=1e-15)


def test_pipeline_witness(states):
    witness = make_pipeline(GHZSymmetrizer(), SloccClassifier()).fit(states)
    pred = witness.predict(states)
    assert list(pred[:4]) == [0, 1, 2, 3]
    product = pure_to_density(basis_ket("000"))
    assert witness.predict(product[None]) == [0]
    assert coords_of_density(product) == pytest.approx(tuple(witness[0].transform(product)[0]))
