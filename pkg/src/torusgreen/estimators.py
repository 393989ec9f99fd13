"""scikit-learn style wrappers.

Samples are moduli tau, given either as a complex 1-d array or as an
(n, 2) real array of (Re tau, Im tau) rows.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .dynamics import basin_points, render_julia
from .elliptic import build_context
from .green import coefficients, criterion, criterion_values_batch, find_critical_points
from .lattice import Lattice, make_lattice
from .theta import TAU_MIN


def check_tau_array(X) -> np.ndarray:
    """Validate samples of tau and return them as a complex 1-d array."""
    if np.iscomplexobj(X):
        t = np.asarray(X, dtype=np.complex128).ravel()
        if not np.all(np.isfinite(t)):
            raise ValueError("tau samples must be finite")
    else:
        arr = check_array(X, dtype=np.float64, ensure_2d=True)
        if arr.shape[1] != 2:
            raise ValueError(f"expected (n, 2) array of (Re tau, Im tau), got shape {arr.shape}")
        t = arr[:, 0] + 1j * arr[:, 1]
    if t.size == 0:
        raise ValueError("no tau samples")
    if np.any(t.imag < TAU_MIN):
        raise ValueError(f"Im(tau) must be at least {TAU_MIN}")
    return t


def check_points(Z) -> np.ndarray:
    """Complex points from a complex array or an (n, 2) array of (Re, Im)."""
    if np.iscomplexobj(Z):
        return np.asarray(Z, dtype=np.complex128)
    arr = check_array(Z, dtype=np.float64)
    if arr.shape[1] != 2:
        raise ValueError(f"expected (n, 2) array of (Re z, Im z), got shape {arr.shape}")
    return arr[:, 0] + 1j * arr[:, 1]


class CriticalPointClassifier(ClassifierMixin, BaseEstimator):
    """Predicts the number of critical points (3 or 5) of the Green function.

    Nothing is learned: ``fit`` only records the classes. The decision value
    is min_j m_j - 1, positive for five points.
    """

    def __init__(self, boundary_band: float = 0.0):
        self.boundary_band = boundary_band

    def fit(self, X, y=None):
        check_tau_array(X)
        self.classes_ = np.array([3, 5])
        return self

    def decision_function(self, X):
        check_is_fitted(self, "classes_")
        return criterion_values_batch(check_tau_array(X)) - 1.0

    def predict(self, X):
        d = self.decision_function(X)
        # boundary counts as three
        return np.where(d > self.boundary_band, 5, 3)


class TorusGreenCriticalPoints(BaseEstimator):
    """Locate and classify the critical points for one lattice.

    ``fit`` takes tau (with omega1 = omega1 parameter) or a Lattice.
    """

    def __init__(self, omega1: complex = 1.0, grid: int = 64):
        self.omega1 = omega1
        self.grid = grid

    def fit(self, X, y=None):
        if isinstance(X, Lattice):
            L = X
        else:
            tau = complex(np.asarray(X).ravel()[0]) if np.ndim(X) else complex(X)
            L = make_lattice(self.omega1, self.omega1 * tau)
        ctx = build_context(L)
        co = coefficients(ctx)
        self.lattice_ = L
        self.context_ = ctx
        self.a_ = co.a
        self.b_ = co.b.real
        self.criterion_ = criterion(L.tau)
        self.critical_points_ = find_critical_points(ctx, co, grid=self.grid)
        self.n_critical_points_ = len(self.critical_points_)
        return self

    def predict(self, X=None):
        """Critical points as a complex array (cell representatives)."""
        check_is_fitted(self, "critical_points_")
        return np.array([p.z for p in self.critical_points_])

    def multipliers(self):
        check_is_fitted(self, "critical_points_")
        return np.array([p.multiplier_modulus for p in self.critical_points_])


class JuliaRenderer(TransformerMixin, BaseEstimator):
    """Basin codes of the anti-holomorphic map for one tau.

    ``transform`` maps points (complex or (n, 2)) to codes: 0 for points not
    captured within ``max_iter`` steps, k + 1 for the k-th attracting or
    neutral fixed point in (Im, Re) order.
    """

    def __init__(self, max_iter=None, eps_conv=None):
        self.max_iter = max_iter
        self.eps_conv = eps_conv

    def fit(self, X, y=None):
        tau = complex(np.asarray(X).ravel()[0]) if np.ndim(X) else complex(X)
        ctx = build_context(tau)
        co = coefficients(ctx)
        self.tau_ = tau
        self.context_ = ctx
        self.coefficients_ = co
        self.targets_ = basin_points(ctx, co)
        self.fixed_points_ = np.array([p.z for p in self.targets_])
        return self

    def transform(self, X):
        check_is_fitted(self, "targets_")
        z = check_points(X)
        shape = z.shape
        grid = np.ascontiguousarray(z.reshape(1, -1))
        img = render_julia(self.context_, self.coefficients_, (0.0, 1.0, 0.0, 1.0), grid.shape[1], 1,
                           max_iter=self.max_iter, eps_conv=self.eps_conv, targets=self.targets_,
                           zgrid=grid)
        return img.codes.reshape(shape).astype(np.int64)

    def render(self, viewport=None, px_w: int = 400, px_h: int = 400):
        check_is_fitted(self, "targets_")
        return render_julia(self.context_, self.coefficients_, viewport, px_w, px_h,
                            max_iter=self.max_iter, eps_conv=self.eps_conv, targets=self.targets_)


__all__ = [
    "CriticalPointClassifier",
    "TorusGreenCriticalPoints",
    "JuliaRenderer",
    "check_tau_array",
    "check_points",
]
