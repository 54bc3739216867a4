import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beurling_kit import algebra as alg
from beurling_kit.groups import Subgroup, make_group
from beurling_kit.linalg import kron, opnorm

Z2 = make_group("Z2")
Z4 = make_group("Z4")
S3 = make_group("S3")

coeff_lists = st.lists(
    st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
    min_size=6,
    max_size=6,
)


# -- embedding ---------------------------------------------------------------


def test_embed_examples():
    assert np.allclose(alg.embed(alg.lam(Z2, 0)), np.eye(2))
    assert np.allclose(alg.embed(alg.lam(Z2, 1)), [[0, 1], [1, 0]])
    x = alg.AlgElement(Z2, [0.75, 0.25])
    assert np.allclose(alg.embed(x), [[0.75, 0.25], [0.25, 0.75]])


def test_project_examples(rng):
    assert np.allclose(alg.project(np.eye(2), Z2).coeffs, [1, 0])
    x = alg.random_element(S3, rng)
    back = alg.project(alg.embed(x), S3)
    assert np.allclose(back.coeffs, x.coeffs)
    with pytest.raises(alg.NotInAlgebraError):
        alg.project(np.diag([1.0, 2.0]), Z2)


def test_embed_is_algebra_hom(rng):
    for g in (Z4, S3):
        x, y = alg.random_element(g, rng), alg.random_element(g, rng)
        assert opnorm(alg.embed(x) @ alg.embed(y) - alg.embed(x @ y)) < 1e-12
        assert opnorm(alg.embed(x.adjoint()) - alg.embed(x).conj().T) < 1e-13


# -- coproduct, antipode, trace ---------------------------------------------


def test_coproduct_grouplike():
    for s in range(S3.order):
        l = alg.embed(alg.lam(S3, s))
        assert np.allclose(alg.coproduct(alg.lam(S3, s)), kron(l, l))
    assert np.allclose(alg.coproduct(alg.identity_element(S3)), np.eye(36))


def test_coproduct_z2_multipliers():
    # one-dimensional characters diagonalize everything on an abelian group:
    # Gamma(omega) acts by 1/w(i+j) with w = (1, 2)
    omega = alg.AlgElement(Z2, [0.75, 0.25])
    f = np.array([[1, 1], [1, -1]], dtype=complex)
    f2 = np.kron(f, f) / 2.0
    d = f2 @ alg.coproduct(omega) @ f2.conj().T
    assert np.allclose(np.diag(d), [1.0, 0.5, 0.5, 1.0], atol=1e-14)
    assert opnorm(d - np.diag(np.diag(d))) < 1e-14


def test_antipode_examples():
    assert np.allclose(alg.antipode(alg.lam(Z4, 0)).coeffs, alg.lam(Z4, 0).coeffs)
    assert np.allclose(alg.antipode(alg.lam(Z4, 1)).coeffs, alg.lam(Z4, 3).coeffs)


@settings(max_examples=25, deadline=None)
@given(coeff_lists, coeff_lists)
def test_antipode_antihom(a, b):
    x, y = alg.AlgElement(S3, a), alg.AlgElement(S3, b)
    lhs = alg.antipode(x @ y)
    rhs = alg.antipode(y) @ alg.antipode(x)
    assert np.allclose(lhs.coeffs, rhs.coeffs, atol=1e-9)
    assert np.allclose(alg.antipode(alg.antipode(x)).coeffs, x.coeffs)


def test_haar_trace():
    for s in range(S3.order):
        assert alg.haar_trace(alg.lam(S3, s)) == (1.0 if s == 0 else 0.0)
    assert alg.haar_trace(alg.identity_element(S3)) == 1.0
    p = alg.subgroup_projection(Subgroup(Z4, (0, 2)))
    assert abs(alg.haar_trace(p) - 0.5) < 1e-15


@settings(max_examples=25, deadline=None)
@given(coeff_lists, coeff_lists)
def test_trace_tracial_faithful(a, b):
    x, y = alg.AlgElement(S3, a), alg.AlgElement(S3, b)
    assert abs(alg.haar_trace(x @ y) - alg.haar_trace(y @ x)) < 1e-8
    # faithfulness in closed form: h(x*x) is the coefficient l2 mass
    assert abs(alg.haar_trace(x.adjoint() @ x) - np.sum(np.abs(x.coeffs) ** 2)) < 1e-8


# -- fundamental unitary ------------------------------------------------------


def test_fundamental_w_z2():
    w = alg.fundamental_w(Z2)
    assert w.shape == (4, 4)
    assert np.allclose(w @ w, np.eye(4))  # (s,t) -> (s+t,t) is an involution mod 2
    assert np.allclose(w @ w.conj().T, np.eye(4))


def test_w_implements_coproduct(rng):
    for g in (Z4, S3):
        w = alg.fundamental_w(g)
        x = alg.random_element(g, rng)
        m = w.conj().T @ kron(np.eye(g.order), alg.embed(x)) @ w
        assert opnorm(m - alg.coproduct(x)) < 1e-12


def test_pentagon():
    for name in ("Z1", "Z3", "S3", "D4", "Z12"):
        assert alg.pentagon_residual(make_group(name)) == 0.0


# -- Hadamard product ---------------------------------------------------------


def test_hadamard_basis():
    for g1 in range(S3.order):
        for g2 in range(S3.order):
            h = alg.hadamard(alg.lam(S3, g1), alg.lam(S3, g2))
            expected = alg.lam(S3, g2).coeffs if g1 == g2 else np.zeros(6)
            assert np.allclose(h.coeffs, expected)


def test_hadamard_identity_compression(rng):
    v = alg.random_element(S3, rng)
    h = alg.hadamard(v, alg.lam(S3, 0))
    expected = np.zeros(6, complex)
    expected[0] = v.coeffs[0]
    assert np.allclose(h.coeffs, expected)


def test_hadamard_projection():
    p = alg.subgroup_projection(Subgroup(Z4, (0, 2)))
    h = alg.hadamard(p, p)
    assert np.allclose(h.coeffs, 0.5 * p.coeffs)


def test_hadamard_slice_forms(rng):
    for g in (Z4, S3):
        n = g.order
        v, u = alg.random_element(g, rng), alg.random_element(g, rng)
        direct = alg.embed(alg.hadamard(v, u))
        slice1 = alg.slice_trace_leg(
            kron(alg.embed(alg.antipode(v)), np.eye(n)) @ alg.coproduct(u), g
        )
        w = alg.fundamental_w(g)
        slice2 = alg.slice_trace_leg(
            w @ kron(alg.embed(v), alg.embed(u)) @ w.conj().T, g
        )
        assert opnorm(direct - slice1) < 1e-10
        assert opnorm(direct - slice2) < 1e-10


def test_hadamard_positivity(rng):
    for _ in range(5):
        a = alg.random_positive(S3, rng, 0.0)
        b = alg.random_positive(S3, rng, 0.0)
        vals = np.linalg.eigvalsh(alg.embed(alg.hadamard(a, b)))
        assert vals[0] > -1e-10


# -- module action, norms, duality -------------------------------------------


def test_module_action_examples(rng):
    f = alg.random_function(S3, rng)
    assert np.allclose(alg.module_action(alg.identity_element(S3), f).values, f.values)
    s = 3
    shifted = alg.module_action(alg.lam(S3, s), f)
    expected = [f.values[S3.mul(t, s)] for t in range(6)]
    assert np.allclose(shifted.values, expected)

    omega = alg.AlgElement(Z2, [0.75, 0.25])
    ind = alg.AFunction(Z2, [1.0, 0.0])
    assert np.allclose(alg.module_action(omega, ind).values, [0.75, 0.25])


def test_module_duality(rng):
    t = alg.random_element(S3, rng)
    f = alg.random_function(S3, rng)
    tf = alg.module_action(t, f)
    for s in range(6):
        lhs = alg.duality_pair(alg.lam(S3, s), tf)
        rhs = alg.duality_pair(alg.lam(S3, s) @ t, f)
        assert abs(lhs - rhs) < 1e-10


def test_ag_norm_derived_values():
    # indicator of one point: Lambda(u) is a permutation, trace norm |G|
    for g in (Z4, S3):
        u = alg.AFunction(g, np.eye(g.order)[min(1, g.order - 1)])
        assert abs(alg.ag_norm(u) - 1.0) < 1e-12
        ones = alg.AFunction(g, np.ones(g.order))
        assert abs(alg.ag_norm(ones) - 1.0) < 1e-12
    # indicator of {e, g} with g an involution: eigenvalues 2 and 0, half each
    u = alg.AFunction(Z2, [1.0, 1.0])
    assert abs(alg.ag_norm(u) - 1.0) < 1e-12
    u2 = alg.AFunction(Z4, [1.0, 0.0, 1.0, 0.0])
    assert abs(alg.ag_norm(u2) - 1.0) < 1e-12


def test_ag_norm_banach(rng):
    for _ in range(20):
        u, v = alg.random_function(S3, rng), alg.random_function(S3, rng)
        assert alg.ag_norm(u.pointwise(v)) <= alg.ag_norm(u) * alg.ag_norm(v) + 1e-10


def test_duality_pair(rng):
    u = alg.random_function(S3, rng)
    for s in range(6):
        assert abs(alg.duality_pair(alg.lam(S3, s), u) - u.values[s]) < 1e-14
    assert abs(alg.duality_pair(alg.identity_element(S3), u) - u.values[0]) < 1e-14
    for _ in range(10):
        t = alg.random_element(S3, rng)
        bound = opnorm(alg.embed(t)) * alg.ag_norm(u)
        assert abs(alg.duality_pair(t, u)) <= bound + 1e-10


def test_positive_definite_bridge(rng):
    # b-bar * b-check is positive definite, and the kernel matrix of any f
    # is exactly the embedding of its coefficient transplant
    b = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    f_vals = np.array(
        [sum(np.conj(b[t]) * b[S3.mul(s, t)] for t in range(6)) for s in range(6)]
    )
    ok, margin = alg.is_positive_definite(alg.AFunction(S3, f_vals))
    assert ok and margin > -1e-10
    u = alg.random_function(S3, rng)
    kernel = np.array([[u.values[S3.mul(s, S3.inv(t))] for t in range(6)] for s in range(6)])
    assert np.allclose(kernel, alg.embed(alg.function_element(u)))


# -- coefficient tensors ------------------------------------------------------


def test_embed2_project2_roundtrip(rng):
    c = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    m = alg.embed2(c, S3)
    back, residual = alg.project2(m, S3)
    assert residual < 1e-10
    assert np.allclose(back, c)


def test_conv_coeffs_matches_matrix_product(rng):
    x1, y1 = alg.random_element(S3, rng), alg.random_element(S3, rng)
    x2, y2 = alg.random_element(S3, rng), alg.random_element(S3, rng)
    c1 = alg.tensor_coeffs(x1, y1)
    c2 = alg.tensor_coeffs(x2, y2)
    prod = alg.conv_coeffs(c1, c2, S3)
    assert opnorm(alg.embed2(prod, S3) - alg.embed2(c1, S3) @ alg.embed2(c2, S3)) < 1e-9


def test_serialization_roundtrip(rng):
    x = alg.random_element(S3, rng)
    assert np.allclose(alg.AlgElement.from_json(x.to_json(), S3).coeffs, x.coeffs)
    u = alg.random_function(S3, rng)
    assert np.allclose(alg.AFunction.from_json(u.to_json(), S3).values, u.values)
    with pytest.raises(ValueError, match="over"):
        alg.AlgElement.from_json(x.to_json(), Z4)


def test_group_mismatch_errors(rng):
    with pytest.raises(ValueError, match="mismatch"):
        alg.random_element(S3, rng) @ alg.random_element(Z4, rng)
    with pytest.raises(ValueError, match="mismatch"):
        alg.hadamard(alg.random_element(S3, rng), alg.random_element(Z4, rng))
    with pytest.raises(ValueError, match="mismatch"):
        alg.module_action(alg.random_element(S3, rng), alg.random_function(Z4, rng))
