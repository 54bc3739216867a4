"""Dense complex linear algebra with a single scale-aware tolerance policy.

Everything downstream compares against zero through ``Tolerance``:
``abs_eps * max(1, scale)`` for absolute checks, ``rel_eps * scale`` for
residuals.  Matrices are plain complex128 ndarrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "Tolerance",
    "as_cmatrix",
    "hermitian_eig",
    "kron",
    "lift12",
    "lift13",
    "lift23",
    "opnorm",
    "pinv",
    "polar_complete",
    "psd_leq",
    "trace_norm",
]


@dataclass(frozen=True)
class Tolerance:
    abs_eps: float = 1e-10
    rel_eps: float = 1e-9

    def __post_init__(self):
        if not (np.isfinite(self.abs_eps) and self.abs_eps >= 0):
            raise ValueError(f"abs_eps must be finite and >= 0, got {self.abs_eps}")
        if not (np.isfinite(self.rel_eps) and self.rel_eps >= 0):
            raise ValueError(f"rel_eps must be finite and >= 0, got {self.rel_eps}")

    def zero(self, scale: float = 1.0) -> float:
        """Threshold for 'is zero' at the given operand scale."""
        return self.abs_eps * max(1.0, scale)

    def residual(self, scale: float = 1.0) -> float:
        return self.rel_eps * max(1.0, scale)


DEFAULT_TOL = Tolerance()


def as_cmatrix(a) -> np.ndarray:
    """Validate and convert to a complex128 matrix with finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def opnorm(m) -> float:
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def trace_norm(m) -> float:
    return float(np.linalg.svd(np.asarray(m, dtype=np.complex128), compute_uv=False).sum())


def _require_square(m: np.ndarray, what: str = "matrix"):
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{what} must be square, got shape {m.shape}")


def hermitian_eig(m, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending, real) and a unitary eigenvector matrix.

    The input must be Hermitian up to ``tol``; it is symmetrized before the
    solve so the factorization is exact for the symmetrized matrix.
    """
    m = as_cmatrix(m)
    _require_square(m)
    scale = opnorm(m)
    herm_defect = opnorm(m - m.conj().T)
    if herm_defect > tol.zero(scale):
        raise ValueError(
            f"matrix is not Hermitian: defect {herm_defect:.3e} at scale {scale:.3e}"
        )
    sym = (m + m.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(sym)
    return vals[::-1].copy(), vecs[:, ::-1].copy()


def psd_margin(diff, tol: Tolerance = DEFAULT_TOL) -> float:
    """Smallest eigenvalue of a Hermitian matrix (the PSD margin of >= 0)."""
    vals, _ = hermitian_eig(diff, tol)
    return float(vals[-1])


def psd_leq(a, b, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Order check A <= B in the positive-semidefinite sense.

    Returns (holds, margin) where margin is the smallest eigenvalue of B - A;
    holds iff margin >= -abs_eps * max(1, ||B||).
    """
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    if a.shape != b.shape:
        raise ValueError(f"size mismatch: {a.shape} vs {b.shape}")
    margin = psd_margin(b - a, tol)
    return margin >= -tol.zero(opnorm(b)), margin


def pinv(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse; singular values below
    rel_eps * sigma_max are treated as zero."""
    m = as_cmatrix(m)
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return m.conj().T
    cut = tol.rel_eps * s[0]
    inv = np.where(s > cut, 1.0 / np.where(s > cut, s, 1.0), 0.0)
    return (vh.conj().T * inv) @ u.conj().T


def polar_complete(m, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Polar data of a square matrix: M = V P with a unitary completion U.

    P = (M*M)^{1/2}; V is the partial isometry whose initial projection is
    the range projection of P; U is the unitary extending V obtained by
    pairing the left/right singular bases across the kernel in index order.
    Returns (U, P, V).
    """
    m = as_cmatrix(m)
    _require_square(m)
    u, s, vh = np.linalg.svd(m)
    p = (vh.conj().T * s) @ vh
    p = (p + p.conj().T) / 2.0
    cut = tol.rel_eps * (s[0] if s.size else 0.0)
    r = int(np.count_nonzero(s > cut))
    v_iso = u[:, :r] @ vh[:r, :]
    u_full = u @ vh
    return u_full, p, v_iso


def kron(a, b) -> np.ndarray:
    """Kronecker product with indexing ((i,k),(j,l)) -> A[i,j] * B[k,l]."""
    return np.kron(np.asarray(a), np.asarray(b))


def lift12(x, n: int) -> np.ndarray:
    """Operator on legs (1,2) of an n-fold triple tensor: X x I."""
    return np.kron(np.asarray(x), np.eye(n))


def lift23(x, n: int) -> np.ndarray:
    """Operator on legs (2,3): I x X."""
    return np.kron(np.eye(n), np.asarray(x))


def lift13(x, n: int) -> np.ndarray:
    """Operator on legs (1,3): X acting on the outer pair, identity inside."""
    x4 = np.asarray(x, dtype=np.complex128).reshape(n, n, n, n)
    out = np.einsum("imjl,kp->ikmjpl", x4, np.eye(n))
    return out.reshape(n**3, n**3)
