import json

import numpy as np
import pytest

from beurling_kit import algebra as alg
from beurling_kit import spectrum as sp
from beurling_kit import weights as wt
from beurling_kit.groups import make_group

Z2 = make_group("Z2")
Z3 = make_group("Z3")
Z4 = make_group("Z4")
S3 = make_group("S3")


@pytest.fixture(scope="module")
def z2_weight():
    return wt.weight_from_dual_function(wt.DualWeightFunction(Z2, [1.0, 2.0]))


@pytest.fixture(scope="module")
def s3_weight():
    emb = wt.cyclic_embedding(S3, 2)
    base = wt.weight_from_dual_function(wt.DualWeightFunction(Z2, [1.0, 2.0]))
    return wt.weight_inverse(wt.extend_via_embedding(S3, emb, base.omega))


def test_candidates_z2(z2_weight):
    cands = sp.candidates(z2_weight)
    assert len(cands) == 2
    assert np.allclose(cands[0].sigma.coeffs, [0.75, 0.25])
    assert np.allclose(cands[1].sigma.coeffs, [0.25, 0.75])
    assert all(p.residual < 1e-12 for p in cands)
    assert cands[0].residual < 1e-14  # sigma = omega satisfies it exactly
    assert all(
        np.allclose(p.t_element.coeffs, alg.lam(Z2, p.group_element).coeffs)
        for p in cands
    )


def test_candidates_s3(s3_weight):
    cands = sp.candidates(s3_weight)
    assert len(cands) == 6
    assert max(p.residual for p in cands) < 1e-12


def test_verify_point(z2_weight, rng):
    zero = alg.AlgElement(Z2, [0.0, 0.0])
    assert sp.verify_point(zero, z2_weight, rng=rng).residual < 1e-15

    good = z2_weight.omega.translate(1)
    chk = sp.verify_point(good, z2_weight, rng=rng)
    assert chk.residual < 1e-12 and chk.functional_residual < 1e-10

    perturbed = z2_weight.omega + 0.1 * z2_weight.omega.translate(1)
    chk2 = sp.verify_point(perturbed, z2_weight, rng=rng)
    assert chk2.residual > 1e-3


def test_probe_z2(z2_weight):
    report = sp.completeness_probe(z2_weight, n_starts=200, seed=42)
    assert report.complete
    assert len(report.probe_solutions) == 2
    assert not report.unmatched
    assert sorted(report.matched_candidates) == [0, 1]


def test_probe_trivial_weight_z3():
    rec = wt.weight_inverse(alg.identity_element(Z3))
    report = sp.completeness_probe(rec, n_starts=200, seed=42)
    assert report.complete and len(report.probe_solutions) == 3
    for x in report.probe_solutions:
        assert any(
            np.linalg.norm(x.coeffs - alg.lam(Z3, s).coeffs) < 1e-8 for s in range(3)
        )


def test_probe_s3_extension(s3_weight):
    report = sp.completeness_probe(s3_weight, n_starts=300, seed=42)
    assert report.complete and len(report.probe_solutions) == 6


def test_grouplike_trivial_group():
    sols = sp.grouplike_solve(make_group("Z1"), n_starts=20, seed=7)
    assert len(sols) == 1 and abs(sols[0].coeffs[0] - 1.0) < 1e-9


def test_grouplike_z4():
    sols = sp.grouplike_solve(Z4, n_starts=500, seed=7)
    assert len(sols) == 4
    for x in sols:
        assert any(
            np.linalg.norm(x.coeffs - alg.lam(Z4, s).coeffs) < 1e-8 for s in range(4)
        )


def test_antipode_invariant(z2_weight, s3_weight):
    assert sp.antipode_invariant(z2_weight.omega, z2_weight) < 1e-15
    for p in sp.candidates(s3_weight):
        assert sp.antipode_invariant(p.sigma, s3_weight) < 1e-12


def test_polar_part_trivial(s3_weight):
    for p in sp.candidates(s3_weight):
        assert sp.polar_part_residual(p.sigma, s3_weight) < 1e-10


def test_points_are_weight_inverses(s3_weight):
    for p in sp.candidates(s3_weight):
        chk = wt.verify_weight_inverse(p.sigma)
        assert chk.is_weight_inverse


def test_report_serialization(z2_weight):
    report = sp.completeness_probe(z2_weight, n_starts=100, seed=42)
    blob = json.dumps(report.to_json())
    data = json.loads(blob)
    assert data["complete"] is True
    assert data["n_candidates"] == 2
    sigma = alg.AlgElement.from_json(data["candidates"][0]["sigma"], Z2)
    assert np.allclose(sigma.coeffs, [0.75, 0.25])
