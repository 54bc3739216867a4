"""Weight inverses on the dual of a finite group and their 2-cocycles.

A weight inverse is a contraction w in VN(G) with trivial kernel and
cokernel satisfying ww* (x) ww* <= Gamma(ww*); its cocycle is the unique
contraction O with w (x) w = Gamma(w) O.  The module verifies and
synthesizes these, and builds the standard families: inverse-transformed
dual weight functions on abelian groups, central weights from character
data, subgroup extensions, polar parts, fractional powers, and the
two-weight comparison.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    AlgElement,
    adjoint_coeffs,
    coeff_opnorm_bound,
    conv_coeffs,
    cop_lift,
    coproduct,
    embed,
    identity_element,
    pad_lift,
    project,
    project2,
    tensor_coeffs,
)
from .characters import character_table
from .groups import FiniteGroup, Subgroup
from .linalg import DEFAULT_TOL, Tolerance, hermitian_eig, kron, opnorm, pinv, psd_margin

__all__ = [
    "DualWeightFunction",
    "NotPartialWeightError",
    "NotWeightInverseError",
    "SubmultiplicativityError",
    "WeightCheck",
    "WeightInverse",
    "build_cocycle",
    "central_weight",
    "cocycle_normality",
    "cyclic_embedding",
    "extend_from_subgroup",
    "extend_via_embedding",
    "intertwine_residual",
    "loewner_power",
    "polar_weight",
    "swift_margin",
    "two_cocycle_residual",
    "verify_weight_inverse",
    "weight_equivalence",
    "weight_from_dual_function",
    "weight_inverse",
]


class NotPartialWeightError(ValueError):
    """The inequality xx* (x) xx* <= Gamma(xx*) fails."""

    def __init__(self, message: str, margin: float):
        super().__init__(f"{message} (margin {margin:.3e})")
        self.margin = margin


class NotWeightInverseError(ValueError):
    """Partial inequality holds but a kernel is nontrivial, or worse."""


class SubmultiplicativityError(ValueError):
    def __init__(self, s: int, t: int, lhs: float, rhs: float):
        super().__init__(
            f"sub-multiplicativity fails at pair ({s}, {t}): w(st)={lhs:.6g} > "
            f"w(s)w(t)={rhs:.6g}"
        )
        self.witness = (s, t)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class WeightCheck:
    is_partial: bool
    is_weight_inverse: bool
    margin: float
    kernel_certificates: tuple[float, float]


def _kernel_certificates(x: AlgElement) -> tuple[float, float]:
    m = embed(x)
    s1 = np.linalg.svd(m, compute_uv=False)
    s2 = np.linalg.svd(m.conj().T, compute_uv=False)
    return float(s1[-1]), float(s2[-1])


def iw_margin(x: AlgElement, tol: Tolerance = DEFAULT_TOL) -> float:
    """Smallest eigenvalue of Gamma(xx*) - xx* (x) xx*."""
    w = x @ x.adjoint()
    diff = coproduct(w) - kron(embed(w), embed(w))
    return psd_margin(diff, tol)


def verify_weight_inverse(x: AlgElement, tol: Tolerance = DEFAULT_TOL) -> WeightCheck:
    """Classify x: partial weight inverse, full weight inverse, or neither."""
    margin = iw_margin(x, tol)
    certs = _kernel_certificates(x)
    norm = opnorm(embed(x))
    is_partial = margin >= -tol.zero(max(1.0, norm) ** 2)
    cut = tol.zero(norm)
    is_full = is_partial and certs[0] > cut and certs[1] > cut
    return WeightCheck(is_partial, is_full, margin, certs)


def build_cocycle(omega: AlgElement, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """The 2-cocycle O = pinv(Gamma(w)) (w (x) w).

    The pseudoinverse has range equal to the range of Gamma(w)* and kernel
    equal to the cokernel of Gamma(w), so the range-projection identity
    Gamma(Q) O = O (Q the range projection of w*) holds by construction;
    for trivial kernels this is exactly Gamma(w)^{-1} (w (x) w).
    """
    check = verify_weight_inverse(omega, tol)
    if not check.is_partial:
        raise NotPartialWeightError(
            "not a partial weight inverse; cannot synthesize a cocycle", check.margin
        )
    gm = coproduct(omega)
    return pinv(gm, tol) @ kron(embed(omega), embed(omega))


def two_cocycle_residual(cocycle_coeffs: np.ndarray, group: FiniteGroup) -> float:
    """Residual of (id (x) Gamma)(O)(I (x) O) = (Gamma (x) id)(O)(O (x) I),
    evaluated by exact coefficient convolution on G^3.  The returned value
    bounds the operator norm of the difference from above."""
    c = cocycle_coeffs
    lhs = conv_coeffs(cop_lift(c, 2), pad_lift(c, "left", group), group)
    rhs = conv_coeffs(cop_lift(c, 1), pad_lift(c, "right", group), group)
    return coeff_opnorm_bound(lhs - rhs, group)


@dataclass(frozen=True, eq=False)
class WeightInverse:
    """A validated weight inverse with its synthesized 2-cocycle.

    ``cocycle`` is the dense operator on l2(G x G); ``cocycle_coeffs`` its
    coefficient square over G x G (cached once, used by the twisted product
    and the spectrum solver).  ``diagnostics`` records the residuals of the
    defining identities at construction time.
    """

    omega: AlgElement
    cocycle: np.ndarray
    cocycle_coeffs: np.ndarray
    margin_iw: float
    kernel_certificates: tuple[float, float]
    tol: Tolerance = DEFAULT_TOL
    diagnostics: dict = field(default_factory=dict)

    @property
    def group(self) -> FiniteGroup:
        return self.omega.group


def weight_inverse(x: AlgElement, tol: Tolerance = DEFAULT_TOL) -> WeightInverse:
    """Validate x as a weight inverse and assemble the full record.

    Checks, at the stated tolerances: the defining order inequality, the
    kernel certificates, the cocycle identity w (x) w = Gamma(w) O with
    ||O|| <= 1 and ||w|| <= 1, and the 2-cocycle relation.
    """
    check = verify_weight_inverse(x, tol)
    if not check.is_partial:
        raise NotPartialWeightError("not a partial weight inverse", check.margin)
    if not check.is_weight_inverse:
        raise NotWeightInverseError(
            f"kernel certificates {check.kernel_certificates} are not bounded away from zero"
        )
    omega_norm = opnorm(embed(x))
    if omega_norm > 1.0 + tol.zero():
        raise NotWeightInverseError(f"not a contraction: ||w|| = {omega_norm}")

    cocycle = build_cocycle(x, tol)
    gm = coproduct(x)
    ww = kron(embed(x), embed(x))
    weight_eq = opnorm(gm @ cocycle - ww)
    cocycle_norm = opnorm(cocycle)
    if weight_eq > tol.residual(max(1.0, opnorm(ww))):
        raise NotWeightInverseError(f"cocycle identity residual {weight_eq:.3e}")
    if cocycle_norm > 1.0 + tol.zero():
        raise NotWeightInverseError(f"cocycle is not a contraction: {cocycle_norm}")
    coeffs, membership = project2(cocycle, x.group)
    if membership > tol.residual(max(1.0, cocycle_norm)):
        raise NotWeightInverseError(
            f"cocycle left VN(G x G): membership residual {membership:.3e}"
        )
    relation = two_cocycle_residual(coeffs, x.group)
    if relation > tol.residual():
        raise NotWeightInverseError(f"2-cocycle relation residual {relation:.3e}")
    return WeightInverse(
        omega=x,
        cocycle=cocycle,
        cocycle_coeffs=coeffs,
        margin_iw=check.margin,
        kernel_certificates=check.kernel_certificates,
        tol=tol,
        diagnostics={
            "weight_eq_residual": weight_eq,
            "cocycle_norm": cocycle_norm,
            "omega_norm": omega_norm,
            "cocycle_membership_residual": membership,
            "two_cocycle_residual": relation,
        },
    )


# ---------------------------------------------------------------------------
# dual weight functions on abelian groups


@dataclass(frozen=True, eq=False)
class DualWeightFunction:
    """A sub-multiplicative function w >= 1 on a finite abelian group,
    playing the character group; index k is the k-th canonical character."""

    group: FiniteGroup
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.group.order,):
            raise ValueError("value length does not match group order")
        if not self.group.is_abelian():
            raise ValueError(f"{self.group.name} is not abelian")
        if v.min() <= 0:
            raise ValueError("weight function values must be positive")
        if v.min() < 1.0:
            warnings.warn(
                f"weight function minimum {v.min():.6g} < 1; rescaling to enforce w >= 1",
                stacklevel=2,
            )
            v = v / v.min()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        self.validate_submultiplicative()

    def validate_submultiplicative(self):
        v = self.values
        lhs = v[self.group.table]
        rhs = np.outer(v, v)
        bad = lhs > rhs * (1.0 + 1e-12)
        if np.any(bad):
            s, t = (int(i) for i in np.argwhere(bad)[0])
            raise SubmultiplicativityError(s, t, float(lhs[s, t]), float(rhs[s, t]))


def dual_character_matrix(group: FiniteGroup) -> np.ndarray:
    """Character matrix F[k, x] of an abelian group built from cyclic
    factors (row-major indexing, matching the product construction)."""
    if group.cyclic_factors is None:
        raise ValueError(
            f"{group.name} carries no cyclic-factor structure; construct it via "
            "make_group to get a canonical character basis"
        )
    f = np.ones((1, 1), dtype=np.complex128)
    for n in group.cyclic_factors:
        block = np.exp(2j * np.pi * np.outer(np.arange(n), np.arange(n)) / n)
        f = np.kron(f, block)
    return f


def weight_from_dual_function(
    w: DualWeightFunction, tol: Tolerance = DEFAULT_TOL
) -> WeightInverse:
    """Weight inverse F^{-1} diag(1/w) F on the group dual to w's group."""
    g = w.group
    f = dual_character_matrix(g)
    mat = (f.conj().T * (1.0 / w.values)) @ f / g.order
    x = project(mat, g, tol)
    return weight_inverse(x, tol)


# ---------------------------------------------------------------------------
# central weights


def central_weight(
    group: FiniteGroup, irrep_values, tol: Tolerance = DEFAULT_TOL
) -> AlgElement:
    """w = sum_pi values[pi] z_pi over the minimal central idempotents.

    Values are indexed by the canonical irreducible order (dimension
    ascending, then character values descending lexicographically), so the
    trivial representation comes first.  Raises NotPartialWeightError when
    the resulting operator fails the defining order inequality.
    """
    values = np.asarray(irrep_values, dtype=float)
    ct = character_table(group)
    if values.shape != (ct.n_irreducibles,):
        raise ValueError(
            f"expected {ct.n_irreducibles} irreducible values, got {values.shape}"
        )
    if values.min() <= 0:
        raise ValueError("irreducible values must be positive")
    coeffs = sum(v * z.coeffs for v, z in zip(values, ct.idempotents))
    x = AlgElement(group, coeffs)
    # centrality: coefficients are constant on conjugacy classes by
    # construction; verify against round-off anyway
    for cls in ct.classes:
        block = x.coeffs[list(cls)]
        if np.abs(block - block[0]).max() > tol.zero():
            raise ArithmeticError("central weight coefficients not class-constant")
    margin = iw_margin(x, tol)
    if margin < -tol.zero():
        raise NotPartialWeightError(
            "central weight fails the order inequality", margin
        )
    return x


# ---------------------------------------------------------------------------
# subgroup extension


def extend_via_embedding(
    group: FiniteGroup, embedding, x: AlgElement
) -> AlgElement:
    """Transplant coefficients through lambda_small(k) -> lambda_G(embedding[k]).

    ``embedding`` must be an injective homomorphism image list: it is
    validated exhaustively against both multiplication tables.
    """
    emb = list(int(i) for i in embedding)
    small = x.group
    if len(emb) != small.order or len(set(emb)) != small.order:
        raise ValueError("embedding must be injective and cover the small group")
    if emb[small.identity] != group.identity:
        raise ValueError("embedding must send identity to identity")
    for a in range(small.order):
        for b in range(small.order):
            if emb[small.mul(a, b)] != group.mul(emb[a], emb[b]):
                raise ValueError(f"embedding is not a homomorphism at ({a}, {b})")
    coeffs = np.zeros(group.order, dtype=np.complex128)
    coeffs[emb] = x.coeffs
    return AlgElement(group, coeffs)


def extend_from_subgroup(
    sub: Subgroup, omega_h: AlgElement, tol: Tolerance = DEFAULT_TOL
) -> AlgElement:
    """Extend a (partial) weight inverse on VN(H) to VN(G) by coefficient
    transplant along the subgroup inclusion."""
    h_group, mapping = sub.as_group()
    if not omega_h.group.same_as(h_group):
        raise ValueError(
            "omega must be expressed over the re-indexed subgroup "
            f"(expected table of {h_group.name})"
        )
    check = verify_weight_inverse(omega_h, tol)
    if not check.is_partial:
        raise NotPartialWeightError(
            "element is not a partial weight inverse on the subgroup", check.margin
        )
    return extend_via_embedding(sub.parent, mapping, omega_h)


def cyclic_embedding(group: FiniteGroup, m: int) -> list[int]:
    """Image list of Z_m -> G through the smallest element of order m."""
    for g in range(group.order):
        if group.element_order(g) == m:
            out = [group.identity]
            for _ in range(m - 1):
                out.append(group.mul(out[-1], g))
            return out
    raise ValueError(f"{group.name} has no element of order {m}")


# ---------------------------------------------------------------------------
# polar form, powers, equivalence


def polar_weight(
    omega: AlgElement, tol: Tolerance = DEFAULT_TOL
) -> tuple[AlgElement, AlgElement]:
    """Polar data of w*: returns (|w*|, U) with w* = U |w*|, U unitary.

    |w*| is again a weight inverse; both factors live in VN(G).  Computed
    from one SVD of the embedding: |w*| = (w w*)^{1/2} = U_s S U_s* and the
    unitary part is V_s U_s*.
    """
    check = verify_weight_inverse(omega, tol)
    if not check.is_weight_inverse:
        raise NotWeightInverseError("polar form requires a weight inverse")
    m = embed(omega)
    u_svd, svals, vh_svd = np.linalg.svd(m)
    p = (u_svd * svals) @ u_svd.conj().T
    p = (p + p.conj().T) / 2.0
    u = vh_svd.conj().T @ u_svd.conj().T
    absw = project(p, omega.group, tol)
    unitary = project(u, omega.group, tol)
    return absw, unitary


def loewner_power(
    weight: WeightInverse | AlgElement, s: float, tol: Tolerance = DEFAULT_TOL
) -> WeightInverse:
    """w^s for positive w, 0 < s <= 1, via functional calculus.

    Operator monotonicity of t -> t^s keeps the order inequality, so the
    result is validated as a full weight inverse.
    """
    omega = weight.omega if isinstance(weight, WeightInverse) else weight
    if not (0.0 < s <= 1.0):
        raise ValueError(f"power must lie in (0, 1], got {s}")
    m = embed(omega)
    vals, vecs = hermitian_eig(m, tol)  # raises unless Hermitian
    if vals[-1] < -tol.zero(float(vals[0]) if len(vals) else 1.0):
        raise ValueError(f"weight is not positive: min eigenvalue {vals[-1]:.3e}")
    powered = (vecs * np.clip(vals, 0.0, None) ** s) @ vecs.conj().T
    return weight_inverse(project(powered, omega.group, tol), tol)


def intertwine_residual(
    weight: WeightInverse, s: float, t: float, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Residual of Gamma(w^s) O_t = O_{t-s} (w^s (x) w^s) for 0 <= s <= t <= 1."""
    if not (0.0 <= s <= t <= 1.0):
        raise ValueError(f"need 0 <= s <= t <= 1, got s={s}, t={t}")
    n2 = weight.group.order ** 2

    def power_record(e: float):
        if e == 0.0:
            ident = identity_element(weight.group)
            return ident, np.eye(n2, dtype=np.complex128)
        if e == 1.0:
            return weight.omega, weight.cocycle
        rec = loewner_power(weight, e, tol)
        return rec.omega, rec.cocycle

    ws, _ = power_record(s)
    _, cocycle_t = power_record(t)
    _, cocycle_d = power_record(t - s)
    lhs = coproduct(ws) @ cocycle_t
    rhs = cocycle_d @ kron(embed(ws), embed(ws))
    return opnorm(lhs - rhs)


@dataclass(frozen=True)
class EquivalenceReport:
    a: AlgElement
    invertible: bool
    smallest_singular_value: float
    cocycle_relation_residual: float


def weight_equivalence(
    w1: WeightInverse, w2: WeightInverse, tol: Tolerance = DEFAULT_TOL
) -> EquivalenceReport:
    """The comparison element a with w1 = w2 a, and the residual of the
    cocycle relation Gamma(a) O_1 = O_2 (a (x) a)."""
    if not w1.group.same_as(w2.group):
        raise ValueError("weights live on different groups")
    m2 = embed(w2.omega)
    a_mat = np.linalg.solve(m2, embed(w1.omega))
    a = project(a_mat, w1.group, tol)
    svals = np.linalg.svd(a_mat, compute_uv=False)
    residual = opnorm(
        coproduct(a) @ w1.cocycle - w2.cocycle @ kron(a_mat, a_mat)
    )
    return EquivalenceReport(
        a=a,
        invertible=bool(svals[-1] > tol.zero(float(svals[0]))),
        smallest_singular_value=float(svals[-1]),
        cocycle_relation_residual=residual,
    )


# ---------------------------------------------------------------------------
# structural inequalities used by the acceptance checks


def swift_margin(omega: AlgElement, tol: Tolerance = DEFAULT_TOL) -> float:
    """PSD margin of (S(w) (x) I) Gamma(w) <= I (x) w for central positive w."""
    from .algebra import antipode

    n = omega.group.order
    lhs = kron(embed(antipode(omega)), np.eye(n)) @ coproduct(omega)
    rhs = kron(np.eye(n), embed(omega))
    return psd_margin(rhs - lhs, tol)


def cocycle_normality(weight: WeightInverse) -> float:
    """|| O O* - O* O ||; vanishes for central and extended-central weights."""
    o = weight.cocycle
    return opnorm(o @ o.conj().T - o.conj().T @ o)
