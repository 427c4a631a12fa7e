"""Dense linear-algebra kernels sized for small drift/noise problems.

Everything here operates on plain ``numpy`` arrays of modest dimension
(<= 64): nonsymmetric eigenvalue extraction, pivoted linear solves with an
explicit singularity gate, a continuous-time Lyapunov solver built on
Kronecker vectorization, and a Hurwitz stability test with margin.
"""

from __future__ import annotations

import warnings
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

MAX_DIM = 64

#: Pivot threshold, relative to the infinity norm of the coefficient matrix.
PIVOT_RTOL = 1e-14

#: Relative band around zero that is still classified as unstable.
HURWITZ_MARGIN_RTOL = 1e-9


class SingularMatrixError(ValueError):
    """Coefficient matrix is singular or numerically singular."""


class NoUniqueSolutionError(ValueError):
    """The Lyapunov system has no unique solution (two eigenvalues of the
    drift matrix sum to zero); callers treat this as outside the stable
    stationary regime."""


class NonConvergenceError(RuntimeError):
    """Eigenvalue iteration failed to converge."""


class Stability(NamedTuple):
    stable: bool
    margin: float


def _require_square(m: NDArray[np.float64], name: str = "matrix") -> int:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    return m.shape[0]


def eig_complex(m: NDArray[np.float64]) -> NDArray[np.complex128]:
    """All eigenvalues of a square real matrix, with multiplicity.

    Ordered by descending real part, ties broken by descending imaginary
    part.  Dimension is capped at ``MAX_DIM``.
    """
    d = _require_square(m)
    if d > MAX_DIM:
        raise ValueError(f"matrix dimension {d} exceeds supported maximum {MAX_DIM}")
    try:
        ev = np.linalg.eigvals(np.asarray(m, dtype=float))
    except np.linalg.LinAlgError as exc:
        raise NonConvergenceError(f"eigenvalue iteration failed for {d}x{d} matrix") from exc
    order = np.lexsort((-ev.imag, -ev.real))
    return ev[order]


def solve_linear(a: NDArray[np.float64], b: NDArray[np.float64]) -> NDArray[np.float64]:
    """Solve ``a @ x = b`` by pivoted LU.

    Raises :class:`SingularMatrixError` when any pivot falls below
    ``PIVOT_RTOL * norm(a, inf)``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = _require_square(a, "coefficient matrix")
    if b.shape[0] != d:
        raise ValueError(f"right-hand side has {b.shape[0]} rows, expected {d}")
    with warnings.catch_warnings():
        # exact zeros on the LU diagonal are caught by the pivot gate below
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(a)
    pivots = np.abs(np.diag(lu))
    threshold = PIVOT_RTOL * max(np.linalg.norm(a, np.inf), np.finfo(float).tiny)
    if np.min(pivots) < threshold:
        raise SingularMatrixError(
            f"matrix is singular to working precision (min pivot {np.min(pivots):.3e})"
        )
    return lu_solve((lu, piv), b)


def solve_lyapunov(s: NDArray[np.float64], n: NDArray[np.float64]) -> NDArray[np.float64]:
    """Solve ``s @ C + C @ s.T + n = 0`` for symmetric ``C``.

    Uses the d^2-dimensional vectorized system ``(I (x) s + s (x) I) vec(C)
    = -vec(n)``; at d = 6 the dense 36x36 solve is exact and fast.  The
    result is symmetrized as ``(C + C.T) / 2`` before return.

    Raises :class:`NoUniqueSolutionError` when the vectorized system is
    singular, which happens exactly when two eigenvalues of ``s`` sum to
    zero.
    """
    s = np.asarray(s, dtype=float)
    n = np.asarray(n, dtype=float)
    d = _require_square(s, "drift matrix")
    if n.shape != (d, d):
        raise ValueError(f"noise matrix has shape {n.shape}, expected {(d, d)}")
    eye = np.eye(d)
    kron = np.kron(eye, s) + np.kron(s, eye)
    try:
        vec_c = solve_linear(kron, -n.flatten(order="F"))
    except SingularMatrixError as exc:
        raise NoUniqueSolutionError(
            "Lyapunov system is singular (an eigenvalue pair of the drift matrix sums to zero)"
        ) from exc
    c = vec_c.reshape((d, d), order="F")
    return 0.5 * (c + c.T)


def is_hurwitz(s: NDArray[np.float64]) -> Stability:
    """Stability of the linear system ``u' = s u``.

    Returns ``(stable, margin)`` where ``margin = max Re(eig(s))``.  Points
    with ``margin`` in ``[-HURWITZ_MARGIN_RTOL * ||s||_F, 0]`` are
    classified unstable: the stationary state is ill-defined at the margin.
    """
    ev = eig_complex(s)
    margin = float(np.max(ev.real))
    scale = np.linalg.norm(np.asarray(s, dtype=float), "fro")
    return Stability(margin < -HURWITZ_MARGIN_RTOL * scale, margin)
