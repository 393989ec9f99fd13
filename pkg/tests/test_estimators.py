import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from torusgreen.estimators import (
    CriticalPointClassifier,
    JuliaRenderer,
    TorusGreenCriticalPoints,
    check_points,
    check_tau_array,
)
from torusgreen.green import criterion
from torusgreen.lattice import make_lattice

HEX = np.exp(1j * np.pi / 3)


def test_check_tau_array():
    assert check_tau_array(np.array([[0, 1], [0.5, 0.8]])).tolist() == [1j, 0.5 + 0.8j]
    assert check_tau_array(np.array([1j])).tolist() == [1j]
    with pytest.raises(ValueError):
        check_tau_array(np.array([[0, 0.01]]))
    with pytest.raises(ValueError):
        check_tau_array(np.array([[0, 1, 2]]))
    assert check_points(np.array([[1.0, 2.0]])).tolist() == [1 + 2j]


def test_classifier():
    X = np.array([[0, 1], [HEX.real, HEX.imag], [0.3, 1.7], [-0.4, 0.5]])
    clf = CriticalPointClassifier()
    with pytest.raises(NotFittedError):
        clf.predict(X)
    clf.fit(X)
    pred = clf.predict(X)
    assert pred.tolist() == [criterion(complex(a, b)).predicted_count for a, b in X]
    assert clf.score(X, pred) == 1.0
    assert np.all((clf.decision_function(X) > 0) == (pred == 5))
    assert clone(clf).get_params() == {"boundary_band": 0.0}


def test_critical_points_estimator():
    est = TorusGreenCriticalPoints().fit(1j)
    assert est.n_critical_points_ == 3
    assert est.predict()[-1] == pytest.approx(0.5 + 0.5j)
    assert est.multipliers()[-1] < 1e-10
    assert est.b_ == pytest.approx(-np.pi)
    w1 = 2.0
    est2 = TorusGreenCriticalPoints(omega1=w1).fit(HEX)
    assert est2.n_critical_points_ == 5
    est3 = TorusGreenCriticalPoints().fit(make_lattice(w1, w1 * HEX))
    assert np.allclose(np.sort_complex(est2.predict()), np.sort_complex(est3.predict()))
    assert est.set_params(grid=32).grid == 32


def test_julia_renderer():
    jr = JuliaRenderer(max_iter=200).fit(HEX)
    assert len(jr.fixed_points_) == 2
    codes = jr.transform(jr.fixed_points_ + 1e-4)
    assert codes.tolist() == [1, 2]
    img = jr.render((-1, 1, -1, 1), 20, 20)
    assert img.codes.shape == (20, 20)
    with pytest.raises(NotFittedError):
        JuliaRenderer().transform(np.array([0.1j]))
