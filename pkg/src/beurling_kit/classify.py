"""Partial weight inverses on a finite group and their normal form.

Every nonzero x in VN(G) with xx* (x) xx* <= Gamma(xx*) factors as
P_H T P_H U over a finite subgroup H: the range projection of x is the
averaging projection of H, T is positive invertible, U unitary.  The
converse direction rescales any such product by alpha = c^2/d^4 back into
a partial weight inverse.  The module also covers group-like projections,
the Hadamard inequality alpha w <= w * w <= w, and pre-dual weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    AFunction,
    AlgElement,
    antipode,
    coproduct,
    embed,
    haar_trace,
    hadamard,
    is_positive_definite,
    project,
    subgroup_projection,
    tensor_coeffs,
)
from .groups import FiniteGroup, Subgroup, closure
from .linalg import DEFAULT_TOL, Tolerance, hermitian_eig, kron, opnorm, psd_margin
from .weights import NotPartialWeightError, build_cocycle, verify_weight_inverse

__all__ = [
    "DecompositionError",
    "GroupLikeError",
    "GroupLikeProjection",
    "PartialWeightDecomposition",
    "PartialWeightReport",
    "decompose",
    "grouplike_projection_check",
    "hadamard_inequalities",
    "predual_weight_check",
    "subgroup_from_projection",
    "synthesize",
    "verify_partial",
]


class GroupLikeError(ValueError):
    """A projection fails one of the group-like identities."""


class DecompositionError(ArithmeticError):
    """A structural fact guaranteed by the classification failed numerically."""


@dataclass(frozen=True)
class PartialWeightReport:
    is_partial: bool
    margin: float
    cocycle_norm: float
    weight_eq_residual: float


def verify_partial(x: AlgElement, tol: Tolerance = DEFAULT_TOL) -> PartialWeightReport:
    """Margin of Gamma(xx*) - xx* (x) xx*, plus the synthesized partial
    cocycle's contraction bound and defining residual."""
    check = verify_weight_inverse(x, tol)
    if not check.is_partial:
        return PartialWeightReport(False, check.margin, float("nan"), float("nan"))
    cocycle = build_cocycle(x, tol)
    from .algebra import embed2

    ww = embed2(tensor_coeffs(x, x), x.group)
    residual = opnorm(coproduct(x) @ cocycle - ww)
    return PartialWeightReport(True, check.margin, opnorm(cocycle), residual)


@dataclass(frozen=True)
class GroupLikeProjection:
    projection: AlgElement
    subgroup: Subgroup
    order_margin: float       # margin of P (x) P <= Gamma(P)
    antipode_residual: float  # || S(P) - P ||
    grouplike_residual: float  # || (P (x) I) Gamma(P) - P (x) P ||


def subgroup_from_projection(p: AlgElement, tol: Tolerance = DEFAULT_TOL) -> Subgroup:
    """Read the subgroup off the coefficient pattern 1/|H| on H, 0 elsewhere.

    A pattern that is not of this form contradicts the classification and is
    reported as a hard failure, never repaired.
    """
    g = p.group
    c = p.coeffs
    ce = c[g.identity].real
    if ce <= tol.zero() or abs(c[g.identity].imag) > tol.zero():
        raise DecompositionError(
            f"identity coefficient {c[g.identity]:.3e} is not a positive weight"
        )
    members = [h for h in range(g.order) if abs(c[h] - ce) <= tol.zero()]
    rest = [h for h in range(g.order) if h not in members]
    if any(abs(c[h]) > tol.zero() for h in rest):
        raise DecompositionError("coefficients are neither 0 nor the identity value")
    if abs(ce - 1.0 / len(members)) > tol.zero():
        raise DecompositionError(
            f"coefficient value {ce:.6g} differs from 1/|H| = {1.0/len(members):.6g}"
        )
    elems = tuple(sorted(members))
    if closure(g, elems) != elems:
        raise DecompositionError(f"detected support {elems} is not closed")
    return Subgroup(g, elems)


def grouplike_projection_check(
    p: AlgElement, tol: Tolerance = DEFAULT_TOL
) -> GroupLikeProjection:
    """Verify P^2 = P = P*, P (x) P <= Gamma(P), S(P) = P and the slice
    identity (P (x) I) Gamma(P) = P (x) P; detect the subgroup."""
    m = embed(p)
    scale = max(1.0, opnorm(m))
    if opnorm(m - m.conj().T) > tol.zero(scale) or opnorm(m @ m - m) > tol.zero(scale):
        raise GroupLikeError("not an orthogonal projection")
    gm = coproduct(p)
    diff = gm - kron(m, m)
    vals, vecs = hermitian_eig(diff, tol)
    margin = float(vals[-1])
    if margin < -tol.zero(opnorm(gm)):
        witness = vecs[:, -1]
        raise GroupLikeError(
            f"P (x) P <= Gamma(P) fails: margin {margin:.3e}, witness vector "
            f"{np.array2string(witness, precision=3)}"
        )
    s_res = opnorm(embed(antipode(p)) - m)
    gl_res = opnorm(kron(m, np.eye(p.group.order)) @ gm - kron(m, m))
    if s_res > tol.zero(scale):
        raise GroupLikeError(f"S(P) != P: residual {s_res:.3e}")
    if gl_res > tol.zero(scale):
        raise GroupLikeError(f"(P (x) I) Gamma(P) != P (x) P: residual {gl_res:.3e}")
    sub = subgroup_from_projection(p, tol)
    return GroupLikeProjection(p, sub, margin, s_res, gl_res)


# ---------------------------------------------------------------------------
# the normal form


@dataclass(frozen=True)
class PartialWeightDecomposition:
    subgroup: Subgroup
    t_element: AlgElement
    unitary: AlgElement
    alpha: float | None
    reconstruction_residual: float
    invertible: bool
    smallest_singular_value: float


def _complete_isometry(v: np.ndarray, group: FiniteGroup, tol: Tolerance) -> np.ndarray:
    """Extend a partial isometry of VN(G) to a unitary inside VN(G).

    Index-paired singular bases would leave the algebra, so the kernel is
    matched to the cokernel through the polar part of a fixed generic
    algebra element compressed to the two corners.  Row and column ranks of
    elements of VN(G) agree blockwise, so the corner has full rank for
    generic choices; a few deterministic retries guard degenerate draws.
    """
    n = group.order
    p = v.conj().T @ v
    q = v @ v.conj().T
    ker_p = np.eye(n) - p
    ker_q = np.eye(n) - q
    rank = int(round(np.trace(p).real))
    if rank == n:
        return v
    if opnorm(p - q) <= tol.zero():
        return v + ker_p  # kernel equals cokernel: identity completion
    want = n - rank
    for attempt in range(8):
        rng = np.random.default_rng(1234 + attempt)
        r = AlgElement(group, rng.standard_normal(n) + 1j * rng.standard_normal(n))
        x = ker_q @ embed(r) @ ker_p
        u_x, s_x, vh_x = np.linalg.svd(x)
        if s_x[want - 1] <= 1e-8 * (s_x[0] if s_x[0] > 0 else 1.0):
            continue
        w = u_x[:, :want] @ vh_x[:want, :]
        u = v + w
        if opnorm(u @ u.conj().T - np.eye(n)) <= 1e3 * tol.zero():
            return u
    raise DecompositionError("could not complete the partial isometry inside VN(G)")


def decompose(
    x: AlgElement, tol: Tolerance = DEFAULT_TOL
) -> PartialWeightDecomposition:
    """Normal form x = P_H T P_H U of a partial weight inverse.

    P_H is the range projection of x (necessarily group-like), T =
    (xx*)^{1/2} + I - P_H is positive invertible, U the unitary from the
    polar decomposition of x*, completed across the kernel inside VN(G).
    A weight inverse decomposes with H = {e} and is certified invertible.
    """
    report = verify_partial(x, tol)
    if not report.is_partial:
        raise NotPartialWeightError("decompose requires a partial weight inverse", report.margin)
    g = x.group
    n = g.order
    m = embed(x)
    # all polar data comes straight from one SVD: going through
    # sqrt(eig(m m*)) would halve the precision near the kernel
    u_svd, svals, vh_svd = np.linalg.svd(m)
    rank = int(np.count_nonzero(svals > tol.abs_eps * svals[0]))
    p_mat = u_svd[:, :rank] @ u_svd[:, :rank].conj().T
    p = project(p_mat, g, tol)
    glp = grouplike_projection_check(p, tol)

    sqrt_ww = (u_svd * svals) @ u_svd.conj().T  # (x x*)^{1/2}
    sqrt_ww = (sqrt_ww + sqrt_ww.conj().T) / 2.0
    t_mat = sqrt_ww + np.eye(n) - p_mat
    t = project(t_mat, g, tol)

    # polar of x*: x* = V (x x*)^{1/2} with V = V_svd U_svd* on the range
    v_mat = vh_svd[:rank, :].conj().T @ u_svd[:, :rank].conj().T
    u_completed = _complete_isometry(v_mat, g, tol)
    u = project(u_completed.conj().T, g, tol)

    reconstruction = p_mat @ t_mat @ p_mat @ embed(u)
    residual = opnorm(reconstruction - m)
    if residual > tol.residual(max(1.0, opnorm(m))):
        raise DecompositionError(f"reconstruction residual {residual:.3e}")
    invertible = bool(svals[-1] > tol.abs_eps * float(svals[0]))
    return PartialWeightDecomposition(
        subgroup=glp.subgroup,
        t_element=t,
        unitary=u,
        alpha=None,
        reconstruction_residual=residual,
        invertible=invertible,
        smallest_singular_value=float(svals[-1]),
    )


def synthesize(
    sub: Subgroup,
    t: AlgElement,
    u: AlgElement,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[float, AlgElement]:
    """Converse direction: alpha P_H T P_H U is a partial weight inverse
    for alpha = c^2/d^4, c and d the spectral bounds of T."""
    if not t.group.same_as(sub.parent) or not u.group.same_as(sub.parent):
        raise ValueError("components live on different groups")
    t_mat = embed(t)
    vals, _ = hermitian_eig(t_mat, tol)
    c, d = float(vals[-1]), float(vals[0])
    if c <= tol.zero(d):
        raise ValueError(f"T is not invertible: smallest eigenvalue {c:.3e}")
    u_mat = embed(u)
    n = sub.parent.order
    if opnorm(u_mat @ u_mat.conj().T - np.eye(n)) > tol.zero():
        raise ValueError("U is not unitary")
    alpha = c**2 / d**4
    p = subgroup_projection(sub)
    omega = alpha * (p @ t @ p @ u)
    report = verify_partial(omega, tol)
    if not report.is_partial:
        raise DecompositionError(
            f"synthesized element fails the order inequality: margin {report.margin:.3e}"
        )
    return alpha, omega


# ---------------------------------------------------------------------------
# Hadamard calculus and pre-dual weights


def _require_spwi(w: AlgElement, tol: Tolerance) -> None:
    m = embed(w)
    scale = max(1.0, opnorm(m))
    if opnorm(m - m.conj().T) > tol.zero(scale):
        raise ValueError("w must be self-adjoint")
    if psd_margin(m, tol) < -tol.zero(scale):
        raise ValueError("w must be positive semidefinite")
    margin = psd_margin(coproduct(w) - kron(m, m), tol)
    if margin < -tol.zero(scale**2):
        raise NotPartialWeightError("w (x) w <= Gamma(w) fails", margin)


@dataclass(frozen=True)
class HadamardReport:
    alpha: float
    lower_margins: tuple[float, ...]  # eigenvalues of w*w - alpha w, ascending
    upper_margins: tuple[float, ...]  # eigenvalues of w - w*w, ascending


def hadamard_inequalities(
    w: AlgElement, tol: Tolerance = DEFAULT_TOL
) -> HadamardReport:
    """alpha w <= w * w <= w with alpha = h(S(w) w) > 0, for a squared
    partial weight inverse w; the full eigenvalue lists of both differences
    are reported."""
    _require_spwi(w, tol)
    alpha = haar_trace(antipode(w) @ w).real
    if alpha <= tol.zero():
        raise DecompositionError(f"h(S(w) w) = {alpha:.3e} is not positive")
    ww = hadamard(w, w)
    lower = np.linalg.eigvalsh(embed(ww - alpha * w))
    upper = np.linalg.eigvalsh(embed(w - ww))
    return HadamardReport(
        alpha=float(alpha),
        lower_margins=tuple(float(v) for v in lower),
        upper_margins=tuple(float(v) for v in upper),
    )


@dataclass(frozen=True)
class PredualWeightReport:
    predual: AFunction
    pd_margin: float          # min eigenvalue of the kernel matrix of f
    pd_defect_margin: float   # same for f - f^2
    module_margin: float      # order margin for f.w


def predual_weight_check(
    w: AlgElement, tol: Tolerance = DEFAULT_TOL
) -> PredualWeightReport:
    """f = w-hat (f(g) = h(w lambda(g))) is a pre-dual weight: f and f - f^2
    are positive definite, and f.w is again a squared partial weight inverse."""
    _require_spwi(w, tol)
    g = w.group
    f = AFunction(g, w.coeffs[g.inverse])  # h(w lambda(g)) = coeffs[g^{-1}]
    _, pd_margin = is_positive_definite(f, tol)
    f2 = AFunction(g, f.values - f.values**2)
    _, defect_margin = is_positive_definite(f2, tol)
    fw = AlgElement(g, f.values * w.coeffs)
    m = embed(fw)
    module_margin = psd_margin(coproduct(fw) - kron(m, m), tol)
    return PredualWeightReport(
        predual=f,
        pd_margin=pd_margin,
        pd_defect_margin=defect_margin,
        module_margin=module_margin,
    )
