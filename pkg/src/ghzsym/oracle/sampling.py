"""Random pure states of a prescribed SLOCC class.

Each class is sampled as the orbit of a representative ket under random
local operations whose 2x2 factors are complex Ginibre matrices. Product
states use Haar-random single-qubit kets instead.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import SamplerFailure
from ..geometry import classify_points
from ..statespace import DET_ATOL, GHZ_PLUS, PHI_PLUS, W_KET, SloccClass
from ..twirl import coords_of_pure

MAX_ATTEMPTS = 100
_PERM_AXES = tuple(itertools.permutations(range(3)))


def task_rng(seed: int, *task) -> np.random.Generator:
    """Independent generator for one task; streams depend only on ``(seed, task)``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(int(t) for t in task)))


def ginibre(rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` invertible 2x2 complex Ginibre matrices, shape (n, 2, 2)."""
    g = (rng.standard_normal((n, 2, 2)) + 1j * rng.standard_normal((n, 2, 2))) / np.sqrt(2.0)
    bad = np.abs(np.linalg.det(g)) < DET_ATOL
    attempts = 0
    while np.any(bad):
        attempts += 1
        if attempts > MAX_ATTEMPTS:
            raise SamplerFailure("could not draw an invertible 2x2 matrix")
        k = int(bad.sum())
        g[bad] = (rng.standard_normal((k, 2, 2)) + 1j * rng.standard_normal((k, 2, 2))) / np.sqrt(2.0)
        bad = np.abs(np.linalg.det(g)) < DET_ATOL
    return g


def _haar_qubits(rng, n):
    v = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _local(g1, g2, g3, ket):
    t = np.asarray(ket, dtype=complex).reshape(2, 2, 2)
    out = np.einsum("nai,nbj,nck,ijk->nabc", g1, g2, g3, t).reshape(-1, 8)
    return out / np.linalg.norm(out, axis=1, keepdims=True)


def sample_batch(target: SloccClass, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` normalized kets of class ``target`` (almost surely), shape (n, 8)."""
    target = SloccClass(target)
    if target is SloccClass.SEPARABLE:
        a, b, c = (_haar_qubits(rng, n) for _ in range(3))
        return np.einsum("na,nb,nc->nabc", a, b, c).reshape(n, 8)
    g1, g2, g3 = ginibre(rng, n), ginibre(rng, n), ginibre(rng, n)
    if target is SloccClass.BISEPARABLE:
        psi = _local(g1, g2, g3, np.kron([1.0, 0.0], PHI_PLUS)).reshape(n, 2, 2, 2)
        which = rng.integers(len(_PERM_AXES), size=n)
        out = np.empty_like(psi)
        for k, axes in enumerate(_PERM_AXES):
            sel = which == k
            out[sel] = psi[sel].transpose((0,) + tuple(a + 1 for a in axes))
        return out.reshape(n, 8)
    if target is SloccClass.W:
        return _local(g1, g2, g3, W_KET)
    return _local(g1, g2, g3, GHZ_PLUS)


@dataclass
class ClassSampler:
    """Deterministic stream of random pure states of one SLOCC class."""

    target: SloccClass
    rng_seed: int
    _rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        self.target = SloccClass(self.target)
        if not 0 <= int(self.rng_seed) < 2**64:
            raise ValueError("rng_seed must be an unsigned 64-bit integer")
        self._rng = np.random.default_rng(int(self.rng_seed))

    def draw(self, n: int) -> np.ndarray:
        return sample_batch(self.target, n, self._rng)


def sample_pure(sampler: ClassSampler) -> np.ndarray:
    """Next state from ``sampler``."""
    return sampler.draw(1)[0]


def containment_test(
    target: SloccClass,
    n: int,
    seed: int = 0,
    tol: float = 1e-9,
    chunk: int = 1000,
) -> float:
    """Fraction of random ``target``-class pure states whose symmetrized image lies in a region <= ``target``.

    Draws are made in chunks, each with its own stream keyed by
    ``(seed, target, chunk index)``, so the result does not depend on the
    order chunks are processed in. Anything below 1.0 contradicts either
    the sampler or a boundary.
    """
    target = SloccClass(target)
    if n < 1:
        raise ValueError("n must be at least 1")
    hits = 0
    for k, start in enumerate(range(0, n, chunk)):
        psi = sample_batch(target, min(chunk, n - start), task_rng(seed, int(target), k))
        x, y = coords_of_pure(psi)
        codes = classify_points(x, y, tol)
        hits += int(np.sum((codes >= 0) & (codes <= int(target))))
    return hits / n
