"""The group von Neumann algebra of a finite group, concretely.

Elements of VN(G) are coefficient vectors over G (x = sum_g coeffs[g] L_g,
with L_g the left-regular permutation matrix acting by (L_g xi)(t) =
xi(g^{-1} t)).  The module provides the embedding into dense matrices and
its inverse, the coproduct, antipode, normalized trace, fundamental unitary,
Hadamard product, predual functions with their module action, the A(G) norm,
and coefficient-space arithmetic for tensor powers of the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup, Subgroup
from .linalg import DEFAULT_TOL, Tolerance, as_cmatrix, opnorm, trace_norm

__all__ = [
    "AFunction",
    "AlgElement",
    "NotInAlgebraError",
    "ag_norm",
    "antipode",
    "coproduct",
    "duality_pair",
    "embed",
    "fundamental_w",
    "haar_trace",
    "hadamard",
    "identity_element",
    "lam",
    "module_action",
    "project",
    "subgroup_projection",
]


class NotInAlgebraError(ValueError):
    """A matrix is not in VN(G) (or a tensor power) within tolerance."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


def _check_same_group(a, b):
    if not a.group.same_as(b.group):
        raise ValueError(f"group mismatch: {a.group.name} vs {b.group.name}")


@dataclass(frozen=True, eq=False)
class AlgElement:
    """x = sum_g coeffs[g] * lambda(g) in VN(G)."""

    group: FiniteGroup
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.shape != (self.group.order,):
            raise ValueError(
                f"coefficient length {c.shape} does not match group order {self.group.order}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # -- algebra arithmetic ------------------------------------------------
    def __add__(self, other: "AlgElement") -> "AlgElement":
        _check_same_group(self, other)
        return AlgElement(self.group, self.coeffs + other.coeffs)

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        _check_same_group(self, other)
        return AlgElement(self.group, self.coeffs - other.coeffs)

    def __mul__(self, scalar) -> "AlgElement":
        return AlgElement(self.group, self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.group, -self.coeffs)

    def __matmul__(self, other: "AlgElement") -> "AlgElement":
        """Operator product: convolution of coefficients over the group."""
        _check_same_group(self, other)
        return AlgElement(self.group, self.coeffs @ other.coeffs[self.group.lquot])

    def adjoint(self) -> "AlgElement":
        """x* has coefficients conj(coeffs[g^{-1}])."""
        return AlgElement(self.group, self.coeffs[self.group.inverse].conj())

    def norm2(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def translate(self, s: int) -> "AlgElement":
        """lambda(s) @ x."""
        return lam(self.group, s) @ self

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @staticmethod
    def from_json(data: dict, group: FiniteGroup) -> "AlgElement":
        if data["group"] != group.name:
            raise ValueError(f"element is over {data['group']}, expected {group.name}")
        c = np.array([complex(re, im) for re, im in data["coeffs"]])
        return AlgElement(group, c)

    def __repr__(self):
        return f"AlgElement({self.group.name}, {np.array2string(self.coeffs, precision=4)})"


@dataclass(frozen=True, eq=False)
class AFunction:
    """u in A(G): a complex function on G, paired with VN(G) by
    (x, u) = sum_g coeffs[g] u(g)."""

    group: FiniteGroup
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (self.group.order,):
            raise ValueError(
                f"value length {v.shape} does not match group order {self.group.order}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __add__(self, other: "AFunction") -> "AFunction":
        _check_same_group(self, other)
        return AFunction(self.group, self.values + other.values)

    def __mul__(self, scalar) -> "AFunction":
        return AFunction(self.group, self.values * complex(scalar))

    __rmul__ = __mul__

    def pointwise(self, other: "AFunction") -> "AFunction":
        _check_same_group(self, other)
        return AFunction(self.group, self.values * other.values)

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "values": [[float(c.real), float(c.imag)] for c in self.values],
        }

    @staticmethod
    def from_json(data: dict, group: FiniteGroup) -> "AFunction":
        if data["group"] != group.name:
            raise ValueError(f"function is over {data['group']}, expected {group.name}")
        v = np.array([complex(re, im) for re, im in data["values"]])
        return AFunction(group, v)

    def __repr__(self):
        return f"AFunction({self.group.name}, {np.array2string(self.values, precision=4)})"


# ---------------------------------------------------------------------------
# constructors


def lam(group: FiniteGroup, s: int) -> AlgElement:
    c = np.zeros(group.order, dtype=np.complex128)
    c[s] = 1.0
    return AlgElement(group, c)


def identity_element(group: FiniteGroup) -> AlgElement:
    return lam(group, group.identity)


def subgroup_projection(sub: Subgroup) -> AlgElement:
    """The averaging projection P_H = (1/|H|) sum_{h in H} lambda(h)."""
    c = np.zeros(sub.parent.order, dtype=np.complex128)
    c[list(sub.elements)] = 1.0 / sub.order
    return AlgElement(sub.parent, c)


def random_element(group: FiniteGroup, rng: np.random.Generator) -> AlgElement:
    n = group.order
    return AlgElement(group, rng.standard_normal(n) + 1j * rng.standard_normal(n))


def random_function(group: FiniteGroup, rng: np.random.Generator) -> AFunction:
    n = group.order
    return AFunction(group, rng.standard_normal(n) + 1j * rng.standard_normal(n))


def random_unitary(group: FiniteGroup, rng: np.random.Generator) -> AlgElement:
    """Haar-ish unitary in VN(G): polar part of a generic element."""
    from .linalg import polar_complete

    u, _, _ = polar_complete(embed(random_element(group, rng)))
    return project(u, group)


def random_positive(
    group: FiniteGroup, rng: np.random.Generator, floor: float = 0.3
) -> AlgElement:
    """Positive invertible element r r* + floor * I."""
    r = random_element(group, rng)
    return r @ r.adjoint() + floor * identity_element(group)


# ---------------------------------------------------------------------------
# embedding and projection


def embed(x: AlgElement) -> np.ndarray:
    """Dense matrix of x on l2(G): entry (t, t') = coeffs[t * t'^{-1}]."""
    return x.coeffs[x.group.quot]


def project(m, group: FiniteGroup, tol: Tolerance = DEFAULT_TOL) -> AlgElement:
    """Inverse of ``embed``: a_g = h(M lambda(g^{-1})), averaging over the
    permutation pattern.  Raises NotInAlgebraError when M is not in VN(G)."""
    x, residual = project_with_residual(m, group)
    if residual > tol.residual(opnorm(m)):
        raise NotInAlgebraError(f"matrix is not in VN({group.name})", residual)
    return x


def project_with_residual(m, group: FiniteGroup) -> tuple[AlgElement, float]:
    m = as_cmatrix(m)
    n = group.order
    if m.shape != (n, n):
        raise ValueError(f"matrix shape {m.shape} does not match group order {n}")
    flat = group.quot.ravel()
    sums = np.bincount(flat, weights=m.real.ravel(), minlength=n) + 1j * np.bincount(
        flat, weights=m.imag.ravel(), minlength=n
    )
    x = AlgElement(group, sums / n)
    return x, opnorm(m - embed(x))


# ---------------------------------------------------------------------------
# Hopf structure


def antipode(x: AlgElement) -> AlgElement:
    """S(lambda(s)) = lambda(s^{-1}), extended linearly."""
    return AlgElement(x.group, x.coeffs[x.group.inverse])


def haar_trace(x: AlgElement) -> complex:
    """Normalized trace h(x) = <x delta_e, delta_e> = coeffs[e]."""
    return complex(x.coeffs[x.group.identity])


def coproduct(x: AlgElement) -> np.ndarray:
    """Gamma(x) = sum_g coeffs[g] L_g (x) L_g as a dense matrix on l2(GxG)."""
    c2 = np.zeros((x.group.order,) * 2, dtype=np.complex128)
    np.fill_diagonal(c2, x.coeffs)
    return embed2(c2, x.group)


def fundamental_w_perm(group: FiniteGroup) -> np.ndarray:
    """The fundamental unitary as a basis permutation (u, v) -> (v^{-1} u, v)."""
    n = group.order
    u, v = np.divmod(np.arange(n * n), n)
    return group.table[group.inverse[v], u] * n + v


def fundamental_w(group: FiniteGroup) -> np.ndarray:
    """Dense fundamental unitary W implementing the coproduct."""
    n = group.order
    perm = fundamental_w_perm(group)
    w = np.zeros((n * n, n * n), dtype=np.complex128)
    w[perm, np.arange(n * n)] = 1.0
    return w


def pentagon_residual(group: FiniteGroup) -> float:
    """|| W23 W12 - W12 W13 W23 || via exact permutation composition."""
    n = group.order
    inv = group.inverse
    tbl = group.table
    idx = np.arange(n**3)
    u, rest = np.divmod(idx, n * n)
    v, w = np.divmod(rest, n)

    def pack(a, b, c):
        return (a * n + b) * n + c

    def p12(a, b, c):
        return pack(tbl[inv[b], a], b, c)

    def p23(a, b, c):
        return pack(a, tbl[inv[c], b], c)

    def p13(a, b, c):
        return pack(tbl[inv[c], a], b, c)

    # matrix product P_pi P_rho moves basis vectors by pi o rho
    lhs = p23(*_unpack(p12(u, v, w), n))
    rhs = p12(*_unpack(p13(*_unpack(p23(u, v, w), n)), n))
    if np.array_equal(lhs, rhs):
        return 0.0
    # operator norm of the difference of two permutation matrices is <= 2;
    # report a crude but honest upper bound from the mismatch count
    return float(np.sqrt(2.0 * np.count_nonzero(lhs != rhs)))


def _unpack(idx, n):
    ab, c = np.divmod(idx, n)
    a, b = np.divmod(ab, n)
    return a, b, c


# ---------------------------------------------------------------------------
# Hadamard product, module action, norms


def hadamard(v: AlgElement, u: AlgElement) -> AlgElement:
    """Coefficientwise product; equals (h (x) id)((S(v) (x) I) Gamma(u))."""
    _check_same_group(v, u)
    return AlgElement(v.group, v.coeffs * u.coeffs)


def module_matrix(t: AlgElement) -> np.ndarray:
    """Matrix of f -> t.f on A(G): entry (s, r) = coeffs[s^{-1} r]."""
    return t.coeffs[t.group.lquot]


def module_action(t: AlgElement, f: AFunction) -> AFunction:
    """(t f)(s) = sum_g coeffs[g] f(s g), so that (x, t f) = (x t, f)."""
    _check_same_group(t, f)
    return AFunction(f.group, module_matrix(t) @ f.values)


def function_element(u: AFunction) -> AlgElement:
    """Lambda(u) = sum_g u(g) lambda(g), the coefficient transplant."""
    return AlgElement(u.group, u.values)


def ag_norm(u: AFunction) -> float:
    """Fourier-algebra norm via the finite closed form
    ||u|| = (1/|G|) * trace-norm of Lambda(u).

    Validated in the test suite against brute-force maximization of
    |sum a_g u(g)| over the operator-norm unit ball of VN(G).
    """
    return trace_norm(embed(function_element(u))) / u.group.order


def duality_pair(t: AlgElement, u: AFunction) -> complex:
    """(t, u) = sum_g coeffs[g] u(g); satisfies (lambda(s), u) = u(s)."""
    _check_same_group(t, u)
    return complex(t.coeffs @ u.values)


def is_positive_definite(u: AFunction, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Positive definiteness of u via the kernel matrix f(s t^{-1}),
    which is exactly embed(Lambda(u))."""
    m = embed(function_element(u))
    vals = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
    margin = float(vals[0])
    return margin >= -tol.zero(opnorm(m)), margin


def vector_realization(f: AFunction) -> tuple[np.ndarray, np.ndarray]:
    """Canonical vectors (xi, eta) = (delta_e, conj(f)) with
    f(s) = <lambda(s) xi, eta>."""
    xi = np.zeros(f.group.order, dtype=np.complex128)
    xi[f.group.identity] = 1.0
    return xi, f.values.conj()


def slice_first_leg(x, f: AFunction) -> np.ndarray:
    """(f (x) id)(X) for X on l2(G) (x) l2(G), using the canonical vector
    realization of f:  out[t, t'] = sum_a X[(a,t),(e,t')] f(a)."""
    n = f.group.order
    x4 = as_cmatrix(x).reshape(n, n, n, n)
    return np.einsum("a,atT->tT", f.values, x4[:, :, f.group.identity, :])


def slice_trace_leg(x, group: FiniteGroup) -> np.ndarray:
    """(h (x) id)(X): compress the first leg with the trace vector delta_e."""
    n = group.order
    x4 = as_cmatrix(x).reshape(n, n, n, n)
    return x4[group.identity, :, group.identity, :]


# ---------------------------------------------------------------------------
# tensor squares and cubes, in coefficient space

def embed2(c2: np.ndarray, group: FiniteGroup) -> np.ndarray:
    """Dense matrix on l2(GxG) of sum_{g,h} c2[g,h] L_g (x) L_h."""
    q = group.quot
    return np.ascontiguousarray(c2[q[:, None, :, None], q[None, :, None, :]]).reshape(
        group.order**2, group.order**2
    )


def project2(m, group: FiniteGroup, tol: Tolerance | None = None) -> tuple[np.ndarray, float]:
    """Coefficients of a matrix in VN(G x G), with the projection residual."""
    m = as_cmatrix(m)
    n = group.order
    if m.shape != (n * n, n * n):
        raise ValueError(f"matrix shape {m.shape} does not match order {n}^2")
    q = group.quot
    flat = (q[:, None, :, None] * n + q[None, :, None, :]).reshape(-1)
    sums = np.bincount(flat, weights=m.real.ravel(), minlength=n * n) + 1j * np.bincount(
        flat, weights=m.imag.ravel(), minlength=n * n
    )
    c2 = (sums / (n * n)).reshape(n, n)
    residual = opnorm(m - embed2(c2, group))
    if tol is not None and residual > tol.residual(opnorm(m)):
        raise NotInAlgebraError(f"matrix is not in VN({group.name} x {group.name})", residual)
    return c2, residual


def tensor_coeffs(x: AlgElement, y: AlgElement) -> np.ndarray:
    """Coefficient array of x (x) y in VN(G x G)."""
    _check_same_group(x, y)
    return np.outer(x.coeffs, y.coeffs)


def adjoint_coeffs(c: np.ndarray, group: FiniteGroup) -> np.ndarray:
    """Adjoint in coefficient space on any tensor power of VN(G)."""
    out = c.conj()
    for axis in range(c.ndim):
        out = np.take(out, group.inverse, axis=axis)
    return out


def conv_coeffs(x: np.ndarray, y: np.ndarray, group: FiniteGroup) -> np.ndarray:
    """Group-algebra product on G^k in coefficient space:
    (x y)_p = sum_a x_a y_{a^{-1} p}, componentwise on index tuples.

    Iterates over the nonzero entries of the sparser factor; exact group
    arithmetic, no dense tensor-cube matrices.
    """
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if x.shape != y.shape:
        raise ValueError(f"tensor shapes differ: {x.shape} vs {y.shape}")
    tbl = group.table
    inv = group.inverse
    out = np.zeros(x.shape, dtype=np.complex128)
    if np.count_nonzero(x) <= np.count_nonzero(y):
        for idx in zip(*np.nonzero(x)):
            # out[p] += x_a * y[a^{-1} p]
            out += x[idx] * y[np.ix_(*(tbl[inv[i], :] for i in idx))]
    else:
        for idx in zip(*np.nonzero(y)):
            # out[p] += y_b * x[p b^{-1}]
            out += y[idx] * x[np.ix_(*(tbl[:, inv[i]] for i in idx))]
    return out


def cop_lift(c2: np.ndarray, leg: int) -> np.ndarray:
    """Apply the coproduct to one leg of a coefficient square.

    leg=1: (g, h) -> (g, g, h); leg=2: (g, h) -> (g, h, h).
    """
    n = c2.shape[0]
    out = np.zeros((n, n, n), dtype=np.complex128)
    g, h = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    if leg == 1:
        out[g, g, h] = c2
    elif leg == 2:
        out[g, h, h] = c2
    else:
        raise ValueError("leg must be 1 or 2")
    return out


def pad_lift(c2: np.ndarray, side: str, group: FiniteGroup) -> np.ndarray:
    """Tensor a coefficient square with the identity on the left or right:
    I (x) X  (side='left')  or  X (x) I  (side='right')."""
    n = c2.shape[0]
    e = group.identity
    out = np.zeros((n, n, n), dtype=np.complex128)
    if side == "left":
        out[e, :, :] = c2
    elif side == "right":
        out[:, :, e] = c2
    else:
        raise ValueError("side must be 'left' or 'right'")
    return out


def coeff_opnorm_bound(c: np.ndarray, group: FiniteGroup) -> float:
    """Upper bound on the operator norm of the embedded tensor element.

    The lambda-basis matrices on G^k have disjoint supports, so the
    Frobenius norm of the embedding is sqrt(|G|^k) * ||c||_2 and dominates
    the operator norm.
    """
    k = c.ndim
    return float(np.sqrt(group.order**k) * np.linalg.norm(c.ravel()))
