"""SLOCC invariants and separability checks used to certify samples."""
from __future__ import annotations

import numpy as np

from ..exceptions import InvalidParameterError

CUTS = ("1|23", "2|13", "3|12")


def hyperdeterminant(psi) -> complex:
    """Cayley's hyperdeterminant of the 2x2x2 amplitude tensor.

    Vanishes exactly on the closure of the W orbit (W, biseparable and
    product states); ``4 |Det|`` is the three-tangle of a normalized state.
    Accepts a single ket of shape (8,) or a batch of shape (n, 8).
    """
    a = np.asarray(psi, dtype=complex)
    a = a.reshape(a.shape[:-1] + (2, 2, 2))
    a000, a001, a010, a011 = a[..., 0, 0, 0], a[..., 0, 0, 1], a[..., 0, 1, 0], a[..., 0, 1, 1]
    a100, a101, a110, a111 = a[..., 1, 0, 0], a[..., 1, 0, 1], a[..., 1, 1, 0], a[..., 1, 1, 1]
    d = (
        a000**2 * a111**2 + a001**2 * a110**2 + a010**2 * a101**2 + a100**2 * a011**2
        - 2.0 * (
            a000 * a111 * a011 * a100
            + a000 * a111 * a101 * a010
            + a000 * a111 * a110 * a001
            + a011 * a100 * a101 * a010
            + a011 * a100 * a110 * a001
            + a101 * a010 * a110 * a001
        )
        + 4.0 * (a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100)
    )
    return complex(d) if np.ndim(d) == 0 else d


def three_tangle(psi) -> float:
    return 4.0 * np.abs(hyperdeterminant(psi))


def partial_transpose(rho, cut: str) -> np.ndarray:
    """Partial transpose on the single qubit named first in ``cut`` (``"1|23"`` transposes qubit 1)."""
    if cut not in CUTS:
        raise InvalidParameterError(f"cut must be one of {CUTS}, got {cut!r}")
    k = int(cut[0]) - 1
    t = np.asarray(rho, dtype=complex).reshape((2,) * 6)
    axes = list(range(6))
    axes[k], axes[k + 3] = axes[k + 3], axes[k]
    return t.transpose(axes).reshape(8, 8)


def ppt_min_eigenvalue(rho, cut: str) -> float:
    pt = partial_transpose(rho, cut)
    return float(np.linalg.eigvalsh(0.5 * (pt + pt.conj().T))[0])
