"""Continuous-variable Gaussian-state algebra on covariance matrices.

Covariance matrices are plain real symmetric ``(2n, 2n)`` arrays of
symmetrized quadrature second moments, quadrature order
``(q1, p1, q2, p2, ..., x, y)`` with the optical mode last for the
three-mode system.  Convention: hbar = 1, [q, p] = i, vacuum variance 1/2,
so a two-mode state is entangled iff the minimum symplectic eigenvalue of
its partial transpose drops below 1/2.

Mode indices are 1-based throughout, matching the partition labels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from . import numerics

TWO_MODE_PARTITIONS = ("M1M2", "CM1", "CM2")
ONE_VS_TWO_PARTITIONS = ("1|23", "2|31", "3|12")

#: Relative tolerance for +/- pairing of the spectrum of (i Omega) c.
PAIRING_RTOL = 1e-9

#: Margin below which the uncertainty-principle test fails.
PHYSICALITY_TOL = 1e-9

#: Entanglement threshold buffer: minimum symplectic eigenvalues within
#: 1e-12 of 1/2 count as separable, so E_N > 0 iff mu < 1/2 - 1e-12.
SEPARABLE_MU = 0.5 - 1e-12


class PairingError(ValueError):
    """Absolute eigenvalues failed to pair up; the input covariance matrix
    is corrupted or badly conditioned."""


@dataclass(frozen=True)
class ResidualContangle:
    """Residual contangles of the three one-vs-two splits and their minimum."""

    r1: float
    r2: float
    r3: float
    r_min: float


def symplectic_form(n_modes: int) -> NDArray[np.float64]:
    """Block-diagonal symplectic form with per-mode blocks [[0, 1], [-1, 0]]."""
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1, got {n_modes}")
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((2 * n_modes, 2 * n_modes))
    for j in range(n_modes):
        out[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = block
    return out


def _n_modes(c: NDArray[np.float64]) -> int:
    c = np.asarray(c)
    if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] % 2 != 0:
        raise ValueError(f"covariance matrix must be square of even dimension, got {c.shape}")
    return c.shape[0] // 2


def reduce(c: NDArray[np.float64], pair: tuple[int, int]) -> NDArray[np.float64]:
    """4x4 reduction of a three-mode covariance matrix to the given mode pair.

    Mode order in the output follows the lower index first.
    """
    n = _n_modes(c)
    i, j = pair
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"mode indices {pair} out of range for {n} modes")
    if i == j:
        raise ValueError(f"mode indices must be distinct, got {pair}")
    i, j = sorted((i, j))
    idx = [2 * (i - 1), 2 * (i - 1) + 1, 2 * (j - 1), 2 * (j - 1) + 1]
    return np.asarray(c)[np.ix_(idx, idx)]


def partial_transpose(c: NDArray[np.float64], mode: int) -> NDArray[np.float64]:
    """Flip the sign of the momentum quadrature of one mode: P c P.

    The Gaussian image of transposition; an exact involution.
    """
    n = _n_modes(c)
    if not 1 <= mode <= n:
        raise ValueError(f"mode index {mode} out of range for {n} modes")
    signs = np.ones(2 * n)
    signs[2 * (mode - 1) + 1] = -1.0
    return signs[:, None] * np.asarray(c) * signs[None, :]


def symplectic_eigenvalues(c: NDArray[np.float64]) -> NDArray[np.float64]:
    """Absolute spectrum of (i Omega) c, deduplicated over +/- pairs, ascending.

    The input must be symmetric but need not be physical: partially
    transposed matrices are the main use case.  Eigenvalues of ``Omega @ c``
    come in +/- pairs for any symmetric ``c``; the pairing is verified to
    ``PAIRING_RTOL`` and a failure raises :class:`PairingError` rather than
    silently deduplicating.
    """
    c = np.asarray(c, dtype=float)
    n = _n_modes(c)
    ev = numerics.eig_complex(symplectic_form(n) @ c)
    mags = np.sort(np.abs(ev))
    floor = 1e-12 * max(1.0, np.linalg.norm(c, "fro"))
    out = np.empty(n)
    for k in range(n):
        a, b = mags[2 * k], mags[2 * k + 1]
        if abs(b - a) > max(PAIRING_RTOL * max(a, b), floor):
            raise PairingError(
                f"unpaired absolute eigenvalues {a!r} and {b!r}; covariance input is corrupted"
            )
        out[k] = 0.5 * (a + b)
    return out


def _logneg_from_mu(mu_min: float) -> float:
    if mu_min >= SEPARABLE_MU:
        return 0.0
    return -np.log(2.0 * mu_min)


def log_negativity(c: NDArray[np.float64], partition: str) -> float:
    """Logarithmic negativity max(0, -ln 2 mu) for the given partition.

    Two-mode labels (``M1M2``, ``CM1``, ``CM2``) expect a two-mode matrix;
    one-vs-two labels (``1|23``, ``2|31``, ``3|12``) expect the full
    three-mode matrix and transpose the single-mode side.  Strictly
    positive iff the minimum symplectic eigenvalue of the partial
    transpose is below ``SEPARABLE_MU`` (the PPT threshold, buffered by
    1e-12 so floating-point noise on separable states maps to exactly 0).
    """
    n = _n_modes(c)
    if partition in TWO_MODE_PARTITIONS:
        if n != 2:
            raise ValueError(f"partition {partition!r} expects 2 modes, got {n}")
        flipped = partial_transpose(c, 1)
    elif partition in ONE_VS_TWO_PARTITIONS:
        if n != 3:
            raise ValueError(f"partition {partition!r} expects 3 modes, got {n}")
        flipped = partial_transpose(c, int(partition[0]))
    else:
        raise ValueError(f"unknown partition label {partition!r}")
    return _logneg_from_mu(symplectic_eigenvalues(flipped)[0])


def two_mode_logneg_invariant(c: NDArray[np.float64]) -> float:
    """Two-mode logarithmic negativity from symplectic invariants.

    Independent cross-check of :func:`log_negativity`: with blocks
    ``[[A, K], [K.T, B]]``, computes
    ``mu^2 = (Sigma - sqrt(Sigma^2 - 4 det c)) / 2`` where
    ``Sigma = det A + det B - 2 det K``.
    """
    c = np.asarray(c, dtype=float)
    if _n_modes(c) != 2:
        raise ValueError(f"expected a two-mode covariance matrix, got shape {c.shape}")
    a = np.linalg.det(c[:2, :2])
    b = np.linalg.det(c[2:, 2:])
    k = np.linalg.det(c[:2, 2:])
    sigma = a + b - 2.0 * k
    det_c = np.linalg.det(c)
    disc = sigma * sigma - 4.0 * det_c
    if disc < -1e-12:
        raise ValueError(f"invariant discriminant is negative ({disc:.3e}); input is unphysical")
    disc = max(disc, 0.0)
    # (sigma - sqrt(disc)) / 2 rewritten to avoid cancellation when the
    # minimum eigenvalue is far below the larger one
    mu_sq = 2.0 * det_c / (sigma + np.sqrt(disc))
    mu_min = np.sqrt(max(mu_sq, 0.0))
    return _logneg_from_mu(mu_min)


def residual_contangle(c: NDArray[np.float64]) -> ResidualContangle:
    """Residual contangle of each one-vs-two split of a three-mode state.

    For split A|BC the residual is the contangle (squared logarithmic
    negativity) of the split minus the two pairwise contangles of A, with
    B = A + 1 cyclically and C the remaining mode.
    """
    if _n_modes(c) != 3:
        raise ValueError(f"expected a three-mode covariance matrix, got shape {np.shape(c)}")
    e = {
        (1, 2): log_negativity(reduce(c, (1, 2)), "M1M2"),
        (1, 3): log_negativity(reduce(c, (1, 3)), "CM1"),
        (2, 3): log_negativity(reduce(c, (2, 3)), "CM2"),
    }
    e_one = {a: log_negativity(c, label) for a, label in zip((1, 2, 3), ONE_VS_TWO_PARTITIONS)}

    def pairwise(a: int, b: int) -> float:
        return e[(min(a, b), max(a, b))]

    residuals = []
    for a in (1, 2, 3):
        b = a % 3 + 1
        other = 6 - a - b
        residuals.append(e_one[a] ** 2 - pairwise(a, b) ** 2 - pairwise(a, other) ** 2)
    r1, r2, r3 = residuals
    return ResidualContangle(r1, r2, r3, min(residuals))


def check_physical(c: NDArray[np.float64]) -> tuple[bool, float]:
    """Uncertainty-principle gate: min eig of c + (i/2) Omega >= -tol.

    Returns ``(physical, margin)`` with ``margin`` the minimum eigenvalue
    of the Hermitian matrix ``c + (i/2) Omega``.
    """
    c = np.asarray(c, dtype=float)
    n = _n_modes(c)
    herm = c.astype(complex) + 0.5j * symplectic_form(n)
    margin = float(np.linalg.eigvalsh(herm)[0])
    return margin >= -PHYSICALITY_TOL, margin


def two_mode_squeezed_cov(r: float) -> NDArray[np.float64]:
    """Covariance matrix of a two-mode squeezed vacuum with parameter r."""
    ch, sh = 0.5 * np.cosh(2.0 * r), 0.5 * np.sinh(2.0 * r)
    sz = np.diag([1.0, -1.0])
    eye = np.eye(2)
    return np.block([[ch * eye, sh * sz], [sh * sz, ch * eye]])


def thermal_cov(occupations: list[float] | NDArray[np.float64]) -> NDArray[np.float64]:
    """Product of thermal states with the given mean occupation numbers."""
    diag = np.repeat(np.asarray(occupations, dtype=float) + 0.5, 2)
    return np.diag(diag)
