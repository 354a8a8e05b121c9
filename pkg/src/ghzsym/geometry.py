"""Class boundaries inside the triangle of GHZ-symmetric states.

All boundaries are given as the largest ``|x|`` reachable by a class at
height ``y``. Every function accepts scalars or numpy arrays. By mirror
symmetry only ``x >= 0`` is described.

Boundary points belong to the lower class.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .exceptions import (
    ConvergenceFailure,
    InvalidParameterError,
    NonMonotoneCurveError,
    OutOfRangeError,
    OutsideTriangleError,
)
from .statespace import SQRT3, SloccClass, TriangleCoords

Y_MIN = -1.0 / (4.0 * SQRT3)
Y_MAX = SQRT3 / 4.0
# heights where the sep / bisep / W boundaries leave the lower edge
Y_SEP_JOIN = 0.0
Y_BISEP_JOIN = 1.0 / (4.0 * SQRT3)
Y_W_JOIN = 1.0 / (2.0 * SQRT3)

P_SEP = 1.0 / 5.0
P_BISEP = 3.0 / 7.0

DEFAULT_TOL = 1e-9
_RANGE_SLACK = 1e-12
_BISECT_XTOL = 1e-14
_MONOTONE_GRID = 10_000

OUTSIDE = -1


def _as_y(y, lo=Y_MIN, hi=Y_MAX):
    arr = np.asarray(y, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < lo - _RANGE_SLACK) or np.any(arr > hi + _RANGE_SLACK):
        raise OutOfRangeError(f"y outside [{lo:.10g}, {hi:.10g}]")
    return np.clip(arr, lo, hi)


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def x_edge(y):
    """Largest ``|x|`` of any state at height ``y`` (the lower triangle edges)."""
    y = _as_y(y)
    return _out(SQRT3 * y / 2.0 + 0.125)


def x_sep_pure(y):
    """Largest ``x`` of a symmetrized separable pure state, valid for ``0 <= y <= sqrt(3)/4``."""
    y = _as_y(y, 0.0, Y_MAX)
    return _out(np.maximum(0.25 - y / SQRT3, 0.0) ** 1.5)


def x_sep(y):
    y = _as_y(y)
    line = -SQRT3 / 6.0 * y + 0.125
    return _out(np.where(y >= Y_SEP_JOIN, line, SQRT3 * y / 2.0 + 0.125))


def x_bisep(y):
    y = _as_y(y)
    line = -SQRT3 / 2.0 * y + 0.375
    return _out(np.where(y >= Y_BISEP_JOIN, line, SQRT3 * y / 2.0 + 0.125))


def _check_v(v):
    arr = np.asarray(v, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise OutOfRangeError("curve parameter v must lie in [0, 1]")
    return arr


def _w_x(v):
    return (v**5 + 8.0 * v**3) / (8.0 * (4.0 - v**2))


def _w_deficit(v):
    # y(v) = sqrt(3)/4 * (1 - deficit(v)); kept separate to avoid cancellation near v = 0
    return v**4 / (4.0 - v**2)


def _w_y(v):
    return SQRT3 / 4.0 * (4.0 - v**2 - v**4) / (4.0 - v**2)


def w_curve(v):
    """Point of the W/GHZ boundary for curve parameter ``v`` in [0, 1].

    Returns a :class:`TriangleCoords` for scalar ``v``, otherwise a pair of arrays.
    """
    v = _check_v(v)
    x, y = _w_x(v), _w_y(v)
    if v.ndim == 0:
        return TriangleCoords(float(x), float(y))
    return x, y


_monotone_lock = threading.Lock()
_monotone_ok: bool | None = None


def check_w_monotone(n: int = _MONOTONE_GRID) -> None:
    """Verify that ``y(v)`` strictly decreases on an ``n``-point grid; required for inversion."""
    global _monotone_ok
    with _monotone_lock:
        if _monotone_ok is None:
            d = _w_deficit(np.linspace(0.0, 1.0, n))
            _monotone_ok = bool(np.all(np.diff(d) > 0.0))
        ok = _monotone_ok
    if not ok:
        raise NonMonotoneCurveError("y(v) is not strictly decreasing on [0, 1]")


def invert_w_curve(y):
    """Curve parameter ``v`` with ``y(v) = y`` for ``y`` in [1/(2 sqrt 3), sqrt(3)/4].

    Vectorized bisection; stops once the bracket is narrower than 1e-14.
    """
    check_w_monotone()
    y = _as_y(y, Y_W_JOIN, Y_MAX)
    lo = np.zeros_like(y)
    hi = np.ones_like(y)
    # 2**-50 < 1e-14
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        above = _w_y(mid) > y
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    return _out(0.5 * (lo + hi))


def x_w(y):
    y = _as_y(y)
    on_curve = y >= Y_W_JOIN
    v = invert_w_curve(np.where(on_curve, y, Y_W_JOIN))
    return _out(np.where(on_curve, _w_x(np.asarray(v)), SQRT3 * y / 2.0 + 0.125))


def classify_points(x, y, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Vectorized classification; returns SloccClass integer codes, ``OUTSIDE`` (-1) off the triangle."""
    x = np.abs(np.asarray(x, dtype=float))
    y = np.asarray(y, dtype=float)
    x, y = np.broadcast_arrays(x, y)
    inside = (y <= Y_MAX + tol) & (y >= Y_MIN - tol) & (x <= SQRT3 * y / 2.0 + 0.125 + tol)
    out = np.full(x.shape, OUTSIDE, dtype=int)
    if not np.any(inside):
        return out
    xi = x[inside]
    yi = np.clip(y[inside], Y_MIN, Y_MAX)
    cls = np.full(xi.shape, int(SloccClass.GHZ))
    cls = np.where(xi <= np.asarray(x_w(yi)) + tol, int(SloccClass.W), cls)
    cls = np.where(xi <= np.asarray(x_bisep(yi)) + tol, int(SloccClass.BISEPARABLE), cls)
    cls = np.where(xi <= np.asarray(x_sep(yi)) + tol, int(SloccClass.SEPARABLE), cls)
    out[inside] = cls
    return out


def classify(c, tol: float = DEFAULT_TOL) -> SloccClass:
    """SLOCC class of the GHZ-symmetric state at triangle point ``c``.

    Raises
    ------
    OutsideTriangleError
        If ``c`` lies more than ``tol`` outside the triangle.
    """
    x, y = float(c[0]), float(c[1])
    code = int(classify_points(x, y, tol))
    if code == OUTSIDE:
        raise OutsideTriangleError(f"({x:.10g}, {y:.10g}) lies outside the state triangle")
    return SloccClass(code)


def boundary_margins(c) -> dict[str, float]:
    """Signed distance in ``x`` from ``|x|`` to each boundary; positive means inside it."""
    y = float(np.clip(c[1], Y_MIN, Y_MAX))
    a = abs(float(c[0]))
    return {
        "sep": x_sep(y) - a,
        "bisep": x_bisep(y) - a,
        "w": x_w(y) - a,
        "edge": x_edge(y) - a,
    }


@dataclass(frozen=True)
class Thresholds:
    """Werner-line weights where the class changes."""

    p_sep: float
    p_bisep: float
    p_w: float
    v_w: float

    def __post_init__(self):
        if not 0.0 < self.p_sep < self.p_bisep < self.p_w < 1.0:
            raise ConvergenceFailure(f"threshold ordering violated: {self}")


def _werner_crossing(v):
    return 4.0 * (4.0 - v**2 - v**4) - v**3 * (v**2 + 8.0)


def solve_thresholds(tol: float = _BISECT_XTOL) -> Thresholds:
    if tol <= 0:
        raise InvalidParameterError("tol must be positive")
    try:
        v_w = optimize.bisect(_werner_crossing, 0.0, 1.0, xtol=tol, maxiter=200)
    except (RuntimeError, ValueError) as exc:
        raise ConvergenceFailure(f"Werner/W-curve crossing not found: {exc}") from exc
    return Thresholds(p_sep=P_SEP, p_bisep=P_BISEP, p_w=2.0 * float(_w_x(v_w)), v_w=float(v_w))


_THRESHOLDS: Thresholds | None = None
_thresholds_lock = threading.Lock()


def thresholds() -> Thresholds:
    """Cached :func:`solve_thresholds` at the default tolerance."""
    global _THRESHOLDS
    with _thresholds_lock:
        if _THRESHOLDS is None:
            _THRESHOLDS = solve_thresholds()
        return _THRESHOLDS


def werner_coords(p: float) -> TriangleCoords:
    return TriangleCoords(p / 2.0, SQRT3 * p / 4.0)


def class_of_werner(p: float) -> SloccClass:
    if not np.isfinite(p) or not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"werner weight p must lie in [0, 1], got {p!r}")
    t = thresholds()
    if p <= t.p_sep:
        return SloccClass.SEPARABLE
    if p <= t.p_bisep:
        return SloccClass.BISEPARABLE
    if p <= t.p_w:
        return SloccClass.W
    return SloccClass.GHZ
