"""Three-qubit state space: validated states, reference states, local operations.

Basis order is big-endian: index ``4*q1 + 2*q2 + q3`` for the ket
``|q1 q2 q3>``, so ``rho[0, 7]`` is the ``<000|rho|111>`` element.

States are plain ``numpy`` arrays (complex128) marked read-only once
validated. That keeps them cheap to pass around and trivially shareable
between threads.
"""
from __future__ import annotations

import enum
from typing import NamedTuple

import numpy as np

from .exceptions import (
    InvalidParameterError,
    InvalidStateError,
    NotHermitianError,
    NotNormalizedError,
    NotPositiveError,
    SingularOperatorError,
    TraceNotOneError,
)

DIM = 8
SQRT3 = np.sqrt(3.0)

DENSITY_ATOL = 1e-10
PURE_ATOL = 1e-12
DET_ATOL = 1e-12


class SloccClass(enum.IntEnum):
    """SLOCC class label, ordered by the inclusion hierarchy of the convex hulls."""

    SEPARABLE = 0
    BISEPARABLE = 1
    W = 2
    GHZ = 3

    @property
    def short(self) -> str:
        return _SHORT_NAMES[self]

    @classmethod
    def from_short(cls, name: str) -> "SloccClass":
        try:
            return _FROM_SHORT[name.lower()]
        except KeyError:
            raise InvalidParameterError(f"unknown SLOCC class {name!r}") from None


_SHORT_NAMES = {
    SloccClass.SEPARABLE: "sep",
    SloccClass.BISEPARABLE: "bisep",
    SloccClass.W: "w",
    SloccClass.GHZ: "ghz",
}
_FROM_SHORT = {v: k for k, v in _SHORT_NAMES.items()}


class TriangleCoords(NamedTuple):
    """Position of a GHZ-symmetric state in the Hilbert-Schmidt plane."""

    x: float
    y: float


class LocalOp(NamedTuple):
    """One invertible 2x2 complex matrix per qubit."""

    g1: np.ndarray
    g2: np.ndarray
    g3: np.ndarray

    def matrix(self) -> np.ndarray:
        return np.kron(np.kron(self.g1, self.g2), self.g3)

    def apply(self, psi: np.ndarray, normalize: bool = True) -> np.ndarray:
        """Apply the operator to a ket; unnormalized output if ``normalize`` is False."""
        t = np.asarray(psi, dtype=complex).reshape(2, 2, 2)
        out = np.einsum("ai,bj,ck,ijk->abc", self.g1, self.g2, self.g3, t).reshape(DIM)
        if normalize:
            out = out / np.linalg.norm(out)
        return out


def local_op(g1, g2, g3, atol: float = DET_ATOL) -> LocalOp:
    mats = []
    for j, g in enumerate((g1, g2, g3), start=1):
        g = np.array(g, dtype=complex)
        if g.shape != (2, 2):
            raise InvalidParameterError(f"G{j} must be 2x2, got shape {g.shape}")
        det = abs(np.linalg.det(g))
        if det < atol:
            raise SingularOperatorError(f"G{j} is not invertible: |det| = {det:.3e} < {atol:g}")
        g.setflags(write=False)
        mats.append(g)
    return LocalOp(*mats)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def make_density(entries, atol: float = DENSITY_ATOL) -> np.ndarray:
    """Validate an 8x8 matrix as a three-qubit density matrix.

    Parameters
    ----------
    entries : array_like
        8x8 complex matrix in big-endian basis order.
    atol : float
        Tolerance shared by the Hermiticity, trace and positivity checks.

    Returns
    -------
    numpy.ndarray
        Read-only complex128 copy of ``entries``.

    Raises
    ------
    NotHermitianError, TraceNotOneError, NotPositiveError
        The message carries the size of the violation.
    """
    rho = np.array(entries, dtype=complex)
    if rho.shape != (DIM, DIM):
        raise InvalidStateError(f"density matrix must be 8x8, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidStateError("density matrix has non-finite entries")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > atol:
        raise NotHermitianError(f"Hermiticity violated: max |rho - rho^dagger| = {herm:.3e}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > atol:
        raise TraceNotOneError(f"unit trace violated: |tr rho - 1| = {abs(tr - 1.0):.3e}")
    lam_min = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0]
    if lam_min < -atol:
        raise NotPositiveError(f"positivity violated: smallest eigenvalue = {lam_min:.3e}")
    return _frozen(rho)


def make_pure(amplitudes, atol: float = PURE_ATOL) -> np.ndarray:
    psi = np.array(amplitudes, dtype=complex).reshape(-1)
    if psi.shape != (DIM,):
        raise InvalidStateError(f"pure state must have 8 amplitudes, got {psi.size}")
    norm2 = float(np.vdot(psi, psi).real)
    if abs(norm2 - 1.0) > atol:
        raise NotNormalizedError(f"normalization violated: |<psi|psi> - 1| = {abs(norm2 - 1.0):.3e}")
    return _frozen(psi)


def pure_to_density(psi) -> np.ndarray:
    psi = make_pure(psi)
    return _frozen(np.outer(psi, psi.conj()))


def basis_ket(bits: str) -> np.ndarray:
    """Computational basis ket, e.g. ``basis_ket("001")``."""
    if len(bits) != 3 or set(bits) - {"0", "1"}:
        raise InvalidParameterError(f"expected three bits, got {bits!r}")
    psi = np.zeros(DIM, dtype=complex)
    psi[int(bits, 2)] = 1.0
    return _frozen(psi)


def product_ket(a, b, c) -> np.ndarray:
    return np.kron(np.kron(np.asarray(a, complex), np.asarray(b, complex)), np.asarray(c, complex))


GHZ_PLUS = _frozen(np.array([1, 0, 0, 0, 0, 0, 0, 1], dtype=complex) / np.sqrt(2))
GHZ_MINUS = _frozen(np.array([1, 0, 0, 0, 0, 0, 0, -1], dtype=complex) / np.sqrt(2))
W_KET = _frozen(np.array([0, 1, 1, 0, 1, 0, 0, 0], dtype=complex) / SQRT3)
PHI_PLUS = _frozen(np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2))


def reference_state(name: str, p: float | None = None) -> np.ndarray:
    """Named reference density matrix.

    ``name`` is one of ``ghz_plus``, ``ghz_minus``, ``maximally_mixed`` or
    ``werner``; the last one needs the mixing weight ``p`` in [0, 1] and
    returns ``p |GHZ+><GHZ+| + (1 - p) I/8``.
    """
    if name == "ghz_plus":
        return pure_to_density(GHZ_PLUS)
    if name == "ghz_minus":
        return pure_to_density(GHZ_MINUS)
    if name == "maximally_mixed":
        return _frozen(np.eye(DIM, dtype=complex) / DIM)
    if name == "werner":
        if p is None or not np.isfinite(p) or not 0.0 <= p <= 1.0:
            raise InvalidParameterError(f"werner weight p must lie in [0, 1], got {p!r}")
        rho = p * np.outer(GHZ_PLUS, GHZ_PLUS.conj()) + (1.0 - p) / DIM * np.eye(DIM)
        return _frozen(rho.astype(complex))
    raise InvalidParameterError(f"unknown reference state {name!r}")


def werner(p: float) -> np.ndarray:
    return reference_state("werner", p)
