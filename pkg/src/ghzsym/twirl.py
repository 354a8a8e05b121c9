"""GHZ symmetrization channel and the triangle coordinate maps.

The symmetry group is generated by qubit permutations, the simultaneous
flip ``X (x) X (x) X`` and the phase rotations
``exp(i a Z) (x) exp(i b Z) (x) exp(-i (a + b) Z)``. Averaging over it
keeps only the diagonal and the ``<000|rho|111>`` coherence, so the
channel reduces to a closed-form projection onto a two-parameter family.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

import numpy as np

from .exceptions import InvalidParameterError, OutsideTriangleError
from .statespace import DIM, SQRT3, TriangleCoords

_MIDDLE = slice(1, 7)


@dataclass(frozen=True)
class QubitPermutation:
    """Send qubit ``j`` to position ``perm[j - 1]`` (1-based labels)."""

    perm: tuple[int, int, int] = (1, 2, 3)

    def __post_init__(self):
        if sorted(self.perm) != [1, 2, 3]:
            raise InvalidParameterError(f"not a permutation of (1, 2, 3): {self.perm!r}")

    def unitary(self) -> np.ndarray:
        u = np.zeros((DIM, DIM), dtype=complex)
        for idx in range(DIM):
            bits = [(idx >> (2 - j)) & 1 for j in range(3)]
            out = [0, 0, 0]
            for j, b in enumerate(bits):
                out[self.perm[j] - 1] = b
            u[4 * out[0] + 2 * out[1] + out[2], idx] = 1.0
        return u


@dataclass(frozen=True)
class TripleFlip:
    def unitary(self) -> np.ndarray:
        return np.eye(DIM, dtype=complex)[::-1].copy()


@dataclass(frozen=True)
class ZRotation:
    phi1: float
    phi2: float

    def unitary(self) -> np.ndarray:
        z = np.array([1.0, -1.0])
        phases = np.add.outer(np.add.outer(self.phi1 * z, self.phi2 * z), -(self.phi1 + self.phi2) * z)
        return np.diag(np.exp(1j * phases.reshape(DIM)))


SymmetryElement = Union[QubitPermutation, TripleFlip, ZRotation]

PERMUTATIONS = tuple(QubitPermutation(p) for p in itertools.permutations((1, 2, 3)))


def apply_symmetry(rho, g: SymmetryElement) -> np.ndarray:
    u = g.unitary()
    out = u @ np.asarray(rho, dtype=complex) @ u.conj().T
    out.setflags(write=False)
    return out


def coords_of_density(rho) -> TriangleCoords:
    """Triangle coordinates of the symmetrized image of ``rho``.

    Only four matrix elements enter, so ``rho`` need not be symmetric.
    """
    rho = np.asarray(rho)
    x = 0.5 * (rho[0, 7] + rho[7, 0]).real
    y = ((rho[0, 0] + rho[7, 7]).real - 0.25) / SQRT3
    return TriangleCoords(float(x), float(y))


def coords_of_pure(psi) -> TriangleCoords:
    """Triangle coordinates of the symmetrized pure state; a batch of shape (n, 8) gives arrays."""
    psi = np.asarray(psi, dtype=complex)
    a, b = psi[..., 0], psi[..., 7]
    x = (np.conj(a) * b).real
    y = (np.abs(a) ** 2 + np.abs(b) ** 2 - 0.25) / SQRT3
    if psi.ndim == 1:
        return TriangleCoords(float(x), float(y))
    return TriangleCoords(x, y)


def _symmetric_matrix(d0: float, off: float) -> np.ndarray:
    rho = np.zeros((DIM, DIM), dtype=complex)
    rho[0, 0] = rho[7, 7] = d0
    rho[_MIDDLE, _MIDDLE] = np.diag(np.full(6, (1.0 - 2.0 * d0) / 6.0))
    rho[0, 7] = rho[7, 0] = off
    return rho


def twirl(rho) -> np.ndarray:
    """Project ``rho`` onto the GHZ-symmetric family (the group average)."""
    rho = np.asarray(rho)
    d0 = 0.5 * (rho[0, 0] + rho[7, 7]).real
    off = 0.5 * (rho[0, 7] + rho[7, 0]).real
    out = _symmetric_matrix(d0, off)
    out.setflags(write=False)
    return out


def symmetric_from_coords(c, atol: float = 1e-12) -> np.ndarray:
    """The unique GHZ-symmetric density matrix at triangle point ``c``."""
    x, y = float(c[0]), float(c[1])
    if y > SQRT3 / 4 + atol or abs(x) > SQRT3 * y / 2 + 0.125 + atol:
        raise OutsideTriangleError(f"({x:.6g}, {y:.6g}) is not inside the state triangle")
    d0 = 0.5 * (SQRT3 * y + 0.25)
    out = _symmetric_matrix(d0, x)
    out.setflags(write=False)
    return out


def hs_distance(a, b) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def is_ghz_symmetric(rho, tol: float = 1e-9) -> bool:
    if tol <= 0:
        raise InvalidParameterError("tol must be positive")
    return hs_distance(rho, twirl(rho)) <= tol

