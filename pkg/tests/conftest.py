"""Shared test oracles and builders.

The oracles here are deliberately independent of the package internals:
cofactor expansion for determinants, explicit index loops for the
permutation maps, and the pure-state closed form for concurrence. They stay
naive so that agreement with the fast implementations is meaningful.
"""

from __future__ import annotations

import numpy as np

from permutangle import DensityMatrix, haar_random_pure, reduce, substream


def cofactor_determinant(m: np.ndarray) -> complex:
    """Recursive cofactor (Laplace) expansion along the first row."""
    a = np.asarray(m, dtype=complex)
    n = a.shape[0]
    if n == 1:
        return complex(a[0, 0])
    total = 0.0 + 0.0j
    for col in range(n):
        minor = np.delete(np.delete(a, 0, axis=0), col, axis=1)
        total += (-1) ** col * a[0, col] * cofactor_determinant(minor)
    return total


def realign_by_index(m: np.ndarray, d1: int, d2: int) -> np.ndarray:
    """Realignment from its defining index map, one entry at a time."""
    out = np.zeros((d1 * d1, d2 * d2), dtype=complex)
    for i in range(d1):
        for j in range(d1):
            for a in range(d2):
                for b in range(d2):
                    out[i * d1 + j, a * d2 + b] = m[i * d2 + a, j * d2 + b]
    return out


def partial_transpose_by_index(m: np.ndarray, d1: int, d2: int, subsystem: int) -> np.ndarray:
    """Partial transpose from its defining index map, one entry at a time."""
    out = np.zeros_like(np.asarray(m, dtype=complex))
    for i in range(d1):
        for j in range(d1):
            for a in range(d2):
                for b in range(d2):
                    if subsystem == 2:
                        out[i * d2 + a, j * d2 + b] = m[i * d2 + b, j * d2 + a]
                    else:
                        out[i * d2 + a, j * d2 + b] = m[j * d2 + a, i * d2 + b]
    return out


def random_complex_matrix(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.uniform(-1, 1, (rows, cols)) + 1j * rng.uniform(-1, 1, (rows, cols))


def random_density_matrix(rng: np.random.Generator, rank: int) -> DensityMatrix:
    """Random two-qubit density matrix of the given rank (1 to 4)."""
    if rank == 1:
        return haar_random_pure((2, 2), rng).density_matrix()
    psi = haar_random_pure((2, 2, rank), rng)
    return reduce(psi, (1, 2))


def haar_state(seed: int, dims=(2, 2, 2)):
    return haar_random_pure(dims, substream(seed, 0))
