"""The weighted Fourier algebra as A(G) with the twisted product.

For a weight inverse w with cocycle O, the product
u .O v = Gamma_*(O (u (x) v)) turns A(G) into a commutative Banach algebra
isometric to w A(G) under pointwise multiplication; lambda_O is its
canonical representation (f (x) id)(W O).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    AFunction,
    AlgElement,
    ag_norm,
    embed,
    fundamental_w,
    module_action,
    module_matrix,
    project2,
)
from .groups import FiniteGroup
from .linalg import DEFAULT_TOL, Tolerance, as_cmatrix, opnorm
from .weights import WeightInverse

__all__ = [
    "TwistedAlgebra",
    "cocycle_symmetry_check",
    "flip_matrix",
    "lambda_omega",
    "omega_product",
    "weighted_norm",
]


def _cocycle_coeffs(omega_matrix, group: FiniteGroup, tol: Tolerance) -> np.ndarray:
    coeffs, residual = project2(as_cmatrix(omega_matrix), group)
    if residual > tol.residual(opnorm(omega_matrix)):
        from .algebra import NotInAlgebraError

        raise NotInAlgebraError(
            f"cocycle is not in VN({group.name} x {group.name})", residual
        )
    return coeffs


def omega_product(
    u: AFunction,
    v: AFunction,
    cocycle,
    tol: Tolerance = DEFAULT_TOL,
) -> AFunction:
    """(u .O v)(s) = sum_{g,h} c[g,h] u(s g) v(s h).

    ``cocycle`` may be the dense operator on l2(G x G) or a precomputed
    coefficient square.  For the identity cocycle this is the pointwise
    product.
    """
    if u.group is not v.group and not u.group.same_as(v.group):
        raise ValueError("functions live on different groups")
    g = u.group
    n = g.order
    c = np.asarray(cocycle, dtype=np.complex128)
    if c.shape == (n, n):
        coeffs = c  # precomputed coefficient square (coincides with the
        # dense operator when n == 1)
    elif c.shape == (n * n, n * n):
        coeffs = _cocycle_coeffs(c, g, tol)
    else:
        raise ValueError(f"cocycle shape {c.shape} fits neither ({n},{n}) nor ({n*n},{n*n})")
    trans_u = u.values[g.table]  # trans_u[s, g] = u(s g)
    trans_v = v.values[g.table]
    vals = np.einsum("gh,sg,sh->s", coeffs, trans_u, trans_v)
    return AFunction(g, vals)


def weighted_norm(
    wu: AFunction, weight: WeightInverse | AlgElement, tol: Tolerance = DEFAULT_TOL
) -> float:
    """||w f||_w := ||f||_{A(G)} for the unique f with w.f = wu.

    f is recovered through the module-action linear system; an input
    outside the range of the action (impossible for a weight inverse, which
    is invertible) is reported via the solve residual.
    """
    omega = weight.omega if isinstance(weight, WeightInverse) else weight
    mat = module_matrix(omega)
    f_vals, *_ = np.linalg.lstsq(mat, wu.values, rcond=None)
    residual = float(np.linalg.norm(mat @ f_vals - wu.values))
    if residual > tol.residual(float(np.linalg.norm(wu.values))):
        raise ValueError(
            f"function is not in the range of the weight action (residual {residual:.3e})"
        )
    return ag_norm(AFunction(wu.group, f_vals))


def lambda_omega(f: AFunction, cocycle, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """The representation lambda_O(f) = (f (x) id)(W O).

    Entry (t, t') is <(W O)(delta_e (x) delta_{t'}), conj(f) (x) delta_t>,
    using the canonical vector realization of f.
    """
    g = f.group
    n = g.order
    w = fundamental_w(g)
    x = (w @ as_cmatrix(cocycle)).reshape(n, n, n, n)
    return np.einsum("a,atT->tT", f.values, x[:, :, g.identity, :])


def flip_matrix(n: int) -> np.ndarray:
    """Permutation matrix of the tensor swap (i, j) -> (j, i) on C^n (x) C^n."""
    idx = np.arange(n * n)
    i, j = np.divmod(idx, n)
    m = np.zeros((n * n, n * n))
    m[j * n + i, idx] = 1.0
    return m


@dataclass(frozen=True)
class SymmetryReport:
    residual: float
    symmetric: bool


def cocycle_symmetry_check(
    cocycle, group: FiniteGroup, tol: Tolerance = DEFAULT_TOL
) -> SymmetryReport:
    """||flip(O) - O|| where flip conjugates by the tensor swap."""
    o = as_cmatrix(cocycle)
    f = flip_matrix(group.order)
    residual = opnorm(f @ o @ f - o)
    return SymmetryReport(residual, residual <= tol.residual(max(1.0, opnorm(o))))


class TwistedAlgebra:
    """A(G) with the product twisted by the cocycle of a weight inverse."""

    def __init__(self, weight: WeightInverse):
        self.weight = weight
        self.group = weight.group
        self._coeffs = weight.cocycle_coeffs

    def product(self, u: AFunction, v: AFunction) -> AFunction:
        return omega_product(u, v, self._coeffs, self.weight.tol)

    def norm(self, wu: AFunction) -> float:
        return weighted_norm(wu, self.weight, self.weight.tol)

    def represent(self, f: AFunction) -> np.ndarray:
        return lambda_omega(f, self.weight.cocycle, self.weight.tol)

    def weighted_function(self, f: AFunction) -> AFunction:
        """The element w.f of w A(G)."""
        return module_action(self.weight.omega, f)

    def symmetry(self) -> SymmetryReport:
        return cocycle_symmetry_check(self.weight.cocycle, self.group, self.weight.tol)
