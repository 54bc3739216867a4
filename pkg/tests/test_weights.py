import numpy as np
import pytest

from beurling_kit import algebra as alg
from beurling_kit import weights as wt
from beurling_kit.groups import Subgroup, enumerate_subgroups, make_group
from beurling_kit.linalg import kron, opnorm
from beurling_kit.twisted import cocycle_symmetry_check

Z2 = make_group("Z2")
Z4 = make_group("Z4")
Z6 = make_group("Z6")
S3 = make_group("S3")

F2 = np.array([[1, 1], [1, -1]], dtype=complex)


def character_multipliers(x, f):
    n = f.shape[0]
    d = f @ alg.embed(x) @ f.conj().T / n
    assert opnorm(d - np.diag(np.diag(d))) < 1e-10
    return np.diag(d)


@pytest.fixture(scope="module")
def z2_weight():
    return wt.weight_from_dual_function(wt.DualWeightFunction(Z2, [1.0, 2.0]))


# -- verification -------------------------------------------------------------


def test_translations_are_weight_inverses():
    for s in range(S3.order):
        chk = wt.verify_weight_inverse(alg.lam(S3, s))
        assert chk.is_weight_inverse
        assert abs(chk.margin) < 1e-12  # group-likes saturate the inequality


def test_z2_iw_eigenvalues(z2_weight):
    om = z2_weight.omega
    w = om @ om.adjoint()
    diff = alg.coproduct(w) - kron(alg.embed(w), alg.embed(w))
    vals = np.sort(np.linalg.eigvalsh(diff))
    assert np.allclose(vals, [0, 0, 0, 15 / 16], atol=1e-12)


def test_projection_is_partial_not_full():
    p = alg.subgroup_projection(Subgroup(Z4, (0, 2)))
    chk = wt.verify_weight_inverse(p)
    assert chk.is_partial and not chk.is_weight_inverse
    assert min(chk.kernel_certificates) < 1e-12


# -- cocycle synthesis --------------------------------------------------------


def test_cocycle_translation_is_identity():
    for s in (0, 2):
        coc = wt.build_cocycle(alg.lam(S3, s))
        assert opnorm(coc - np.eye(36)) < 1e-12


def test_cocycle_z2_multipliers(z2_weight):
    f2 = np.kron(F2, F2) / 2.0
    d = f2 @ z2_weight.cocycle @ f2.conj().T
    assert np.allclose(np.diag(d), [1, 1, 1, 0.25], atol=1e-13)
    assert opnorm(d - np.diag(np.diag(d))) < 1e-13
    assert abs(opnorm(z2_weight.cocycle) - 1.0) < 1e-12


def test_cocycle_projection_case():
    p = alg.subgroup_projection(Subgroup(Z4, (0, 2)))
    coc = wt.build_cocycle(p)
    pp = kron(alg.embed(p), alg.embed(p))
    assert opnorm(coc - pp) < 1e-12
    assert opnorm(alg.coproduct(p) @ coc - pp) < 1e-12
    # range-projection identity comes free with the pseudoinverse route
    q = alg.coproduct(alg.project(alg.embed(p), Z4))  # range proj of p* is p
    assert opnorm(q @ coc - coc) < 1e-12


def test_build_cocycle_rejects_non_partial():
    x = alg.AlgElement(Z2, [1.0, 1.0])  # 2 P_G: violates the order inequality
    with pytest.raises(wt.NotPartialWeightError):
        wt.build_cocycle(x)


def test_weight_eq_implies_iw(z2_weight, rng):
    # any x = Gamma(x) O with a contraction O satisfies the order inequality:
    # here x = lambda(s) omega reuses the weight's own cocycle
    for s in range(2):
        x = z2_weight.omega.translate(s)
        lhs = kron(alg.embed(x), alg.embed(x))
        assert opnorm(alg.coproduct(x) @ z2_weight.cocycle - lhs) < 1e-12
        assert wt.verify_weight_inverse(x).margin >= -1e-12


# -- dual weight functions ----------------------------------------------------


def test_dual_function_identity():
    rec = wt.weight_from_dual_function(wt.DualWeightFunction(Z2, [1.0, 1.0]))
    assert np.allclose(rec.omega.coeffs, [1.0, 0.0])


def test_dual_function_z2(z2_weight):
    assert np.allclose(z2_weight.omega.coeffs, [0.75, 0.25], atol=1e-14)
    assert z2_weight.margin_iw >= -1e-12
    assert min(z2_weight.kernel_certificates) > 0.49


def test_dual_function_z6_metric():
    d = np.minimum(np.arange(6), 6 - np.arange(6))
    rec = wt.weight_from_dual_function(wt.DualWeightFunction(Z6, 2.0**d))
    assert wt.verify_weight_inverse(rec.omega).is_weight_inverse


def test_submultiplicativity_witness():
    # on Z4, w = (1, 2, 8, 2): w(1+1) = 8 > w(1)^2 = 4
    with pytest.raises(wt.SubmultiplicativityError) as err:
        wt.DualWeightFunction(Z4, [1.0, 2.0, 8.0, 2.0])
    assert err.value.witness == (1, 1)


def test_dual_function_rescale_warning():
    with pytest.warns(UserWarning, match="rescal"):
        w = wt.DualWeightFunction(Z2, [0.5, 1.0])
    assert w.values.min() == 1.0


def test_dual_function_requires_structure():
    s3 = make_group("S3")
    with pytest.raises(ValueError, match="abelian"):
        wt.DualWeightFunction(s3, np.ones(6))


def test_super_multiplicative_square(z2_weight):
    # |multiplier|^2 of the weight inverse is super-multiplicative on the dual
    mult = np.abs(character_multipliers(z2_weight.omega, F2)) ** 2
    for s in range(2):
        for t in range(2):
            assert mult[s] * mult[t] <= mult[(s + t) % 2] + 1e-12


# -- central weights ----------------------------------------------------------


def test_central_weight_identity():
    x = wt.central_weight(S3, [1.0, 1.0, 1.0])
    assert np.allclose(x.coeffs, alg.identity_element(S3).coeffs, atol=1e-10)


def test_central_weight_s3():
    x = wt.central_weight(S3, [1.0, 1.0, 0.5])
    chk = wt.verify_weight_inverse(x)
    assert chk.is_weight_inverse
    for s in range(6):
        l = alg.embed(alg.lam(S3, s))
        assert opnorm(alg.embed(x) @ l - l @ alg.embed(x)) < 1e-12


def test_central_weight_rejects_super():
    with pytest.raises(wt.NotPartialWeightError) as err:
        wt.central_weight(S3, [1.0, 1.0, 2.0])
    assert err.value.margin < -0.1


def test_central_weight_validation():
    with pytest.raises(ValueError, match="positive"):
        wt.central_weight(S3, [1.0, -1.0, 0.5])
    with pytest.raises(ValueError, match="expected 3"):
        wt.central_weight(S3, [1.0, 1.0])


# -- subgroup extension -------------------------------------------------------


def test_extend_z2_into_z4(z2_weight):
    emb = wt.cyclic_embedding(Z4, 2)
    assert emb == [0, 2]
    ext = wt.extend_via_embedding(Z4, emb, z2_weight.omega)
    assert np.allclose(ext.coeffs, [0.75, 0, 0.25, 0], atol=1e-14)
    assert wt.verify_weight_inverse(ext).is_weight_inverse


def test_extend_from_subgroup_op(z2_weight):
    sub = next(s for s in enumerate_subgroups(S3) if s.order == 2)
    h_group, _ = sub.as_group()
    omega_h = alg.AlgElement(h_group, z2_weight.omega.coeffs)
    ext = wt.extend_from_subgroup(sub, omega_h)
    assert wt.verify_weight_inverse(ext).is_weight_inverse
    # identity transplant through H = G
    full = Subgroup(Z2, (0, 1))
    hg, _ = full.as_group()
    same = wt.extend_from_subgroup(full, alg.AlgElement(hg, z2_weight.omega.coeffs))
    assert np.allclose(same.coeffs, z2_weight.omega.coeffs)


def test_extend_rejects_non_weight():
    sub = next(s for s in enumerate_subgroups(Z4) if s.order == 2)
    hg, _ = sub.as_group()
    with pytest.raises(wt.NotPartialWeightError):
        wt.extend_from_subgroup(sub, alg.AlgElement(hg, [1.0, 1.0]))


def test_embedding_validation():
    with pytest.raises(ValueError, match="homomorphism"):
        wt.extend_via_embedding(Z4, [0, 1], alg.AlgElement(Z2, [1.0, 0.0]))
    with pytest.raises(ValueError, match="identity"):
        wt.extend_via_embedding(Z4, [1, 3], alg.AlgElement(Z2, [1.0, 0.0]))


# -- polar, powers, equivalence ----------------------------------------------


def test_polar_weight_positive(z2_weight):
    absw, u = wt.polar_weight(z2_weight.omega)
    assert np.allclose(absw.coeffs, z2_weight.omega.coeffs, atol=1e-12)
    assert np.allclose(alg.embed(u), np.eye(2), atol=1e-12)


def test_polar_weight_translation(z2_weight):
    x = z2_weight.omega.translate(1)
    absw, u = wt.polar_weight(x)
    assert opnorm(alg.embed(x.adjoint()) - alg.embed(u) @ alg.embed(absw)) < 1e-12
    assert wt.verify_weight_inverse(absw).is_weight_inverse
    m = alg.embed(u)
    assert opnorm(m @ m.conj().T - np.eye(2)) < 1e-12


def test_polar_weight_phases():
    mat = (F2.conj().T * np.array([1.0, 0.5j])) @ F2 / 2.0
    x = alg.project(mat, Z2)
    absw, _ = wt.polar_weight(x)
    mult = character_multipliers(absw, F2).real
    assert np.allclose(sorted(mult), [0.5, 1.0], atol=1e-12)


def test_loewner_power_z2(z2_weight):
    half = wt.loewner_power(z2_weight, 0.5)
    mult = character_multipliers(half.omega, F2).real
    assert np.allclose(sorted(mult), sorted([1.0, 2**-0.5]), atol=1e-12)
    assert half.margin_iw >= -1e-12
    same = wt.loewner_power(z2_weight, 1.0)
    assert np.allclose(same.omega.coeffs, z2_weight.omega.coeffs, atol=1e-12)


def test_loewner_power_validation(z2_weight):
    with pytest.raises(ValueError, match="power"):
        wt.loewner_power(z2_weight, 1.5)
    skew = alg.AlgElement(Z2, [0.75, 0.25j])  # not self-adjoint
    with pytest.raises(ValueError):
        wt.loewner_power(skew, 0.5)


def test_intertwine(z2_weight):
    assert wt.intertwine_residual(z2_weight, 0.5, 1.0) < 1e-12
    assert wt.intertwine_residual(z2_weight, 1.0, 1.0) < 1e-12
    rec6 = wt.weight_from_dual_function(
        wt.DualWeightFunction(Z6, 2.0 ** np.minimum(np.arange(6), 6 - np.arange(6)))
    )
    assert wt.intertwine_residual(rec6, 0.25, 0.75) < 1e-12


def test_weight_equivalence_same(z2_weight):
    eq = wt.weight_equivalence(z2_weight, z2_weight)
    assert eq.invertible
    assert np.allclose(eq.a.coeffs, [1.0, 0.0], atol=1e-12)
    assert eq.cocycle_relation_residual < 1e-12


def test_weight_equivalence_translation(z2_weight):
    shifted = wt.weight_inverse(z2_weight.omega.translate(1))
    eq = wt.weight_equivalence(shifted, z2_weight)
    assert eq.invertible and eq.cocycle_relation_residual < 1e-10


def test_weight_equivalence_ratio(z2_weight):
    other = wt.weight_from_dual_function(wt.DualWeightFunction(Z2, [1.0, 4.0]))
    eq = wt.weight_equivalence(z2_weight, other)
    mult = character_multipliers(eq.a, F2).real
    assert np.allclose(sorted(mult), [1.0, 2.0], atol=1e-12)
    assert eq.invertible and eq.cocycle_relation_residual < 1e-10


# -- structural inequalities --------------------------------------------------


def test_swift_margin_central():
    x = wt.central_weight(S3, [1.0, 1.0, 0.5])
    assert wt.swift_margin(x) >= -1e-10


def test_swift_margin_abelian(z2_weight):
    assert wt.swift_margin(z2_weight.omega) >= -1e-10


def test_cocycle_normality_central():
    x = wt.central_weight(S3, [1.0, 1.0, 0.5])
    assert wt.cocycle_normality(wt.weight_inverse(x)) < 1e-12


def test_cocycle_symmetry(z2_weight):
    rep = cocycle_symmetry_check(z2_weight.cocycle, Z2)
    assert rep.symmetric and rep.residual < 1e-13
