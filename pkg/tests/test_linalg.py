import numpy as np
import pytest

from beurling_kit.linalg import (
    Tolerance,
    as_cmatrix,
    hermitian_eig,
    kron,
    lift12,
    lift13,
    lift23,
    opnorm,
    pinv,
    polar_complete,
    psd_leq,
    trace_norm,
)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(abs_eps=-1.0)
    with pytest.raises(ValueError):
        Tolerance(rel_eps=float("nan"))
    t = Tolerance()
    assert t.zero(100.0) == 1e-10 * 100.0
    assert t.zero(0.5) == 1e-10


def test_as_cmatrix_rejects_nonfinite():
    with pytest.raises(ValueError):
        as_cmatrix([[1.0, np.inf], [0, 0]])


def test_hermitian_eig_identity():
    vals, vecs = hermitian_eig(np.eye(3))
    assert np.allclose(vals, [1, 1, 1])
    assert np.allclose(vecs @ vecs.conj().T, np.eye(3))


def test_hermitian_eig_swap():
    vals, _ = hermitian_eig(np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.allclose(vals, [1, -1])


def test_hermitian_eig_weight_square():
    # circulant [[5/8, 3/8], [3/8, 5/8]] has eigenvalues 5/8 +- 3/8
    m = np.array([[5 / 8, 3 / 8], [3 / 8, 5 / 8]])
    vals, vecs = hermitian_eig(m)
    assert np.allclose(vals, [1.0, 0.25], atol=1e-14)
    assert opnorm((vecs * vals) @ vecs.conj().T - m) < 1e-14


def test_hermitian_eig_errors():
    with pytest.raises(ValueError, match="square"):
        hermitian_eig(np.ones((2, 3)))
    with pytest.raises(ValueError, match="Hermitian"):
        hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))


def test_hermitian_eig_reconstruction(rng):
    a = random_complex(rng, (7, 7))
    m = a + a.conj().T
    vals, vecs = hermitian_eig(m)
    assert list(vals) == sorted(vals, reverse=True)
    assert opnorm((vecs * vals) @ vecs.conj().T - m) <= 1e-9 * opnorm(m)
    assert opnorm(vecs.conj().T @ vecs - np.eye(7)) < 1e-10


def test_psd_leq_basic():
    holds, margin = psd_leq(np.zeros((2, 2)), np.eye(2))
    assert holds and abs(margin - 1.0) < 1e-14
    holds, margin = psd_leq(2 * np.eye(2), np.eye(2))
    assert not holds and abs(margin + 1.0) < 1e-14
    with pytest.raises(ValueError, match="mismatch"):
        psd_leq(np.eye(2), np.eye(3))


def test_psd_leq_partial_order(rng):
    a = random_complex(rng, (4, 4))
    h = a + a.conj().T
    holds, margin = psd_leq(h, h)
    assert holds and abs(margin) < 1e-12


def test_polar_complete_unitary_input():
    theta = 0.3
    u = np.array(
        [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]],
        dtype=complex,
    )
    uu, p, v = polar_complete(u)
    assert opnorm(p - np.eye(2)) < 1e-12
    assert opnorm(uu - u) < 1e-12 and opnorm(v - u) < 1e-12


def test_polar_complete_kernel():
    m = np.diag([2.0, 0.0]).astype(complex)
    u, p, v = polar_complete(m)
    assert np.allclose(p, np.diag([2.0, 0.0]))
    assert np.allclose(v, np.diag([1.0, 0.0]))
    assert opnorm(u @ u.conj().T - np.eye(2)) < 1e-12
    assert opnorm(m - v @ p) < 1e-12


def test_polar_complete_properties(rng):
    for n in (3, 5):
        m = random_complex(rng, (n, n))
        m[:, 0] = 0  # force rank deficiency
        u, p, v = polar_complete(m)
        assert opnorm(u @ u.conj().T - np.eye(n)) < 1e-10
        assert opnorm(u.conj().T @ u - np.eye(n)) < 1e-10
        assert opnorm(m - v @ p) <= 1e-9 * max(1.0, opnorm(m))
        # U agrees with V on the initial space (range projection of P)
        vals, vecs = hermitian_eig(p)
        basis = vecs[:, vals > 1e-9 * vals[0]]
        proj = basis @ basis.conj().T
        assert opnorm(u @ proj - v) < 1e-9


def test_pinv_examples():
    assert np.allclose(pinv(np.eye(3)), np.eye(3))
    assert np.allclose(pinv(np.diag([2.0, 0.0])), np.diag([0.5, 0.0]))


def test_pinv_moore_penrose(rng):
    for shape in [(4, 4), (5, 3), (3, 5)]:
        m = random_complex(rng, shape)
        mp = pinv(m)
        scale = 1e-9 * max(1.0, opnorm(m))
        assert opnorm(m @ mp @ m - m) < scale
        assert opnorm(mp @ m @ mp - mp) < scale * max(1.0, opnorm(mp) ** 2)
        assert opnorm((m @ mp).conj().T - m @ mp) < scale
        assert opnorm((mp @ m).conj().T - mp @ m) < scale


def test_trace_norm():
    assert abs(trace_norm(np.diag([3.0, -4.0])) - 7.0) < 1e-12


def test_kron_indexing():
    a = np.array([[1, 2], [3, 4]])
    b = np.array([[0, 1], [1, 0]])
    k = kron(a, b)
    # ((i,k),(j,l)) -> A[i,j] B[k,l]
    assert k[0 * 2 + 1, 1 * 2 + 0] == a[0, 1] * b[1, 0]


def test_leg_lifts(rng):
    n = 3
    a = random_complex(rng, (n, n))
    b = random_complex(rng, (n, n))
    x = kron(a, b)
    assert np.allclose(lift12(x, n), kron(kron(a, b), np.eye(n)))
    assert np.allclose(lift23(x, n), kron(np.eye(n), kron(a, b)))
    assert np.allclose(lift13(x, n), kron(kron(a, np.eye(n)), b))
