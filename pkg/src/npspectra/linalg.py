"""Dense complex linear algebra used by the spectral computations.

Thin, contract-carrying wrappers around LAPACK (via numpy/scipy): row-sum
infinity norms, eigenvalues of general complex matrices, lower norms of
shifted resolvents, and extremal eigenpairs of Hermitian matrices.  The
lower norm is computed from the explicitly inverted matrix rather than an
estimator; certificates rely on it being a true value.  All functions are
pure; LAPACK releases the GIL, so independent calls may run concurrently.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

__all__ = [
    "EigenSolverError",
    "inf_norm",
    "eigenvalues",
    "resolvent_lower_norm",
    "hermitian_top_eigenpair",
]


class EigenSolverError(RuntimeError):
    """Eigenvalue iteration failed to converge; carries the matrix metadata."""

    def __init__(self, message: str, shape=None, context=None):
        self.shape = shape
        self.context = context
        detail = f"{message} (shape={shape}" + (f", {context}" if context else "") + ")"
        super().__init__(detail)


def _as_matrix(a) -> np.ndarray:
    m = np.asarray(getattr(a, "matrix", a))
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    if not np.isfinite(m).all():
        raise ValueError("matrix has non-finite entries")
    return m


def inf_norm(a) -> float:
    """Maximum absolute row sum."""
    m = _as_matrix(a)
    if m.size == 0:
        return 0.0
    return float(np.abs(m).sum(axis=1).max())


def eigenvalues(a, context=None) -> np.ndarray:
    """All eigenvalues (with multiplicity) of a square complex matrix."""
    m = _as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"eigenvalues need a square matrix, got {m.shape}")
    try:
        return np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(str(exc), shape=m.shape, context=context) from exc


def resolvent_lower_norm(a, mu: complex) -> float:
    """Lower norm ||(A - mu I)^{-1}||_inf^{-1}; 0.0 for a singular shift."""
    m = _as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"resolvent needs a square matrix, got {m.shape}")
    shifted = m - mu * np.eye(m.shape[0], dtype=complex)
    try:
        inv = scipy.linalg.inv(shifted, overwrite_a=True, check_finite=False)
    except scipy.linalg.LinAlgError:
        return 0.0
    return 1.0 / inf_norm(inv)


def hermitian_top_eigenpair(h, atol: float = 1e-12) -> tuple[float, np.ndarray]:
    """Largest eigenvalue and a unit eigenvector of a Hermitian matrix."""
    m = _as_matrix(h)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got {m.shape}")
    defect = np.abs(m - m.conj().T).max() if m.size else 0.0
    if defect > atol:
        raise ValueError(f"matrix is not Hermitian within {atol:g} (defect {defect:g})")
    vals, vecs = np.linalg.eigh(m)
    vec = vecs[:, -1]
    return float(vals[-1]), vec / np.linalg.norm(vec)
