"""scikit-learn compatible wrappers.

``GHZSymmetrizer`` maps a batch of density matrices to triangle
coordinates (or to their symmetrized matrices); ``SloccClassifier``
labels triangle coordinates. Chained in a ``Pipeline`` they form the
symmetrization witness::

    >>> from sklearn.pipeline import make_pipeline
    >>> witness = make_pipeline(GHZSymmetrizer(), SloccClassifier()).fit(states)
    >>> witness.predict(states)        # lower bounds on the SLOCC class

Neither estimator learns anything from data; ``fit`` validates input and
records the fixed boundary constants so the objects follow the usual
fitted/unfitted protocol.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import geometry
from .exceptions import OutsideTriangleError
from .statespace import DENSITY_ATOL, DIM, SloccClass, make_density
from .twirl import coords_of_density, twirl


def check_density_batch(X, atol: float = DENSITY_ATOL, validate: bool = True) -> np.ndarray:
    """Coerce ``X`` to a complex array of shape (n, 8, 8).

    Accepts a single 8x8 matrix, a stack (n, 8, 8), or flattened rows
    (n, 64). With ``validate`` every matrix must be a density matrix.
    """
    X = np.asarray(X)
    if X.ndim == 2 and X.shape == (DIM, DIM):
        X = X[None]
    elif X.ndim == 2 and X.shape[1] == DIM * DIM:
        X = X.reshape(-1, DIM, DIM)
    if X.ndim != 3 or X.shape[1:] != (DIM, DIM):
        raise ValueError(f"expected density matrices of shape (n, 8, 8) or (n, 64), got {X.shape}")
    if X.shape[0] == 0:
        raise ValueError("empty batch")
    X = X.astype(complex)
    if validate:
        for rho in X:
            make_density(rho, atol=atol)
    return X


def check_coords(X) -> np.ndarray:
    X = check_array(X, dtype=np.float64)
    if X.shape[1] != 2:
        raise ValueError(f"expected (n, 2) triangle coordinates, got {X.shape[1]} columns")
    return X


class GHZSymmetrizer(TransformerMixin, BaseEstimator):
    """Project density matrices onto the GHZ-symmetric family.

    Parameters
    ----------
    output : {"coords", "matrix"}
        ``"coords"`` returns an (n, 2) array of triangle coordinates,
        ``"matrix"`` the (n, 8, 8) symmetrized states.
    validate : bool
        Check every input matrix for Hermiticity, unit trace and positivity.
    atol : float
        Tolerance of those checks.
    """

    def __init__(self, output="coords", validate=True, atol=DENSITY_ATOL):
        self.output = output
        self.validate = validate
        self.atol = atol

    def fit(self, X, y=None):
        if self.output not in ("coords", "matrix"):
            raise ValueError(f"output must be 'coords' or 'matrix', got {self.output!r}")
        check_density_batch(X, self.atol, self.validate)
        self.n_features_in_ = DIM * DIM
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_density_batch(X, self.atol, self.validate)
        if self.output == "matrix":
            return np.stack([twirl(rho) for rho in X])
        return np.array([coords_of_density(rho) for rho in X], dtype=float)


class SloccClassifier(ClassifierMixin, BaseEstimator):
    """Assign SLOCC classes to points of the triangle of GHZ-symmetric states.

    Predictions are :class:`SloccClass` integer codes (0 separable,
    1 biseparable, 2 W, 3 GHZ). Points on a boundary go to the lower class.

    Parameters
    ----------
    tol : float
        Slack added on the lower-class side of each boundary and on the
        triangle edges.
    """

    def __init__(self, tol=geometry.DEFAULT_TOL):
        self.tol = tol

    def fit(self, X=None, y=None):
        if X is not None:
            check_coords(X)
        self.thresholds_ = geometry.solve_thresholds()
        self.classes_ = np.array([int(c) for c in SloccClass])
        self.n_features_in_ = 2
        return self

    def predict(self, X):
        check_is_fitted(self, "classes_")
        X = check_coords(X)
        codes = geometry.classify_points(X[:, 0], X[:, 1], self.tol)
        if np.any(codes == geometry.OUTSIDE):
            bad = X[np.argmax(codes == geometry.OUTSIDE)]
            raise OutsideTriangleError(f"point ({bad[0]:.10g}, {bad[1]:.10g}) lies outside the state triangle")
        return codes

    def margins(self, X):
        """Signed ``x``-distance of each point to the sep, bisep, W boundaries and the edge, shape (n, 4)."""
        check_is_fitted(self, "classes_")
        X = check_coords(X)
        y = np.clip(X[:, 1], geometry.Y_MIN, geometry.Y_MAX)
        a = np.abs(X[:, 0])
        return np.column_stack(
            [geometry.x_sep(y) - a, geometry.x_bisep(y) - a, geometry.x_w(y) - a, geometry.x_edge(y) - a]
        )
