"""Shared builders for covariance-matrix tests.

The random-state generator composes elementary symplectic operations
(rotations, squeezers, beamsplitters, two-mode squeezers) applied to a
thermal diagonal, so every generated matrix is physical by construction.
"""

from __future__ import annotations

import numpy as np
import pytest


def tmsv_cov(r: float) -> np.ndarray:
    """Two-mode squeezed vacuum covariance matrix (vacuum variance 1/2)."""
    ch = 0.5 * np.cosh(2.0 * r)
    sh = 0.5 * np.sinh(2.0 * r)
    return np.array([
        [ch, 0.0, sh, 0.0],
        [0.0, ch, 0.0, -sh],
        [sh, 0.0, ch, 0.0],
        [0.0, -sh, 0.0, ch],
    ])


def _embed(op4: np.ndarray, n: int, j: int, k: int) -> np.ndarray:
    s = np.eye(2 * n)
    idx = [2 * j, 2 * j + 1, 2 * k, 2 * k + 1]
    s[np.ix_(idx, idx)] = op4
    return s


def rotation(n: int, j: int, phi: float) -> np.ndarray:
    s = np.eye(2 * n)
    c, sn = np.cos(phi), np.sin(phi)
    s[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = [[c, sn], [-sn, c]]
    return s


def squeezer(n: int, j: int, r: float) -> np.ndarray:
    s = np.eye(2 * n)
    s[2 * j, 2 * j] = np.exp(r)
    s[2 * j + 1, 2 * j + 1] = np.exp(-r)
    return s


def beamsplitter(n: int, j: int, k: int, phi: float) -> np.ndarray:
    c, sn = np.cos(phi), np.sin(phi)
    eye2 = np.eye(2)
    op = np.block([[c * eye2, sn * eye2], [-sn * eye2, c * eye2]])
    return _embed(op, n, j, k)


def two_mode_squeezer(n: int, j: int, k: int, r: float) -> np.ndarray:
    ch, sh = np.cosh(r), np.sinh(r)
    op = np.array([
        [ch, 0.0, sh, 0.0],
        [0.0, ch, 0.0, -sh],
        [sh, 0.0, ch, 0.0],
        [0.0, -sh, 0.0, ch],
    ])
    return _embed(op, n, j, k)


def random_symplectic(n: int, rng: np.random.Generator, n_ops: int = 8) -> np.ndarray:
    s = np.eye(2 * n)
    for _ in range(n_ops):
        kind = rng.integers(0, 4)
        j = int(rng.integers(0, n))
        if kind == 0:
            op = rotation(n, j, rng.uniform(0, 2 * np.pi))
        elif kind == 1:
            op = squeezer(n, j, rng.uniform(-0.8, 0.8))
        elif n > 1:
            k = int((j + 1 + rng.integers(0, n - 1)) % n)
            if kind == 2:
                op = beamsplitter(n, j, k, rng.uniform(0, 2 * np.pi))
            else:
                op = two_mode_squeezer(n, j, k, rng.uniform(-0.8, 0.8))
        else:
            op = rotation(n, j, rng.uniform(0, 2 * np.pi))
        s = op @ s
    return s


def random_physical_cov(n: int, rng: np.random.Generator, nu_max: float = 3.0) -> np.ndarray:
    """Random physical covariance matrix O diag(nu_i) O^T with symplectic O."""
    nus = rng.uniform(0.5, nu_max, size=n)
    d = np.diag(np.repeat(nus, 2))
    s = random_symplectic(n, rng)
    c = s @ d @ s.T
    return 0.5 * (c + c.T)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
