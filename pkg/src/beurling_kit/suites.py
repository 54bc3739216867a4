"""Named verification checks over the (group, weight) grid.

Every check has a stable id and an anchor string quoting the identity it
verifies, so a report reads as an inequality-by-inequality scoreboard.
The same functions back the command-line driver and the test suite.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from . import classify as cl
from . import spectrum as sp
from . import twisted as tw
from . import weights as wt
from .catalog import CatalogWeight, base_weight_of
from .groups import FiniteGroup, enumerate_subgroups
from .linalg import DEFAULT_TOL, Tolerance, kron, opnorm, psd_margin

__all__ = ["CheckResult", "SUITE_IDS", "run_all"]

SUITE_IDS = ("algebra", "weights", "beurling", "spectrum", "classify")

N_RANDOM = 20  # random instances per law in the driver (tests pin their own)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    anchor: str
    group: str
    weight: str
    passed: bool
    margin: float
    runtime_ms: float


def cell_rng(seed: int, *key: str) -> np.random.Generator:
    """Deterministic per-cell generator, independent of execution order."""
    material = ":".join((str(seed),) + key).encode()
    child = int.from_bytes(hashlib.sha256(material).digest()[:8], "big")
    return np.random.default_rng(child)


def _result(check_id, anchor, group, weight, passed, margin, t0) -> CheckResult:
    return CheckResult(
        check_id=check_id,
        anchor=anchor,
        group=group,
        weight=weight,
        passed=bool(passed),
        margin=float(margin),
        runtime_ms=(time.perf_counter() - t0) * 1000.0,
    )


# ---------------------------------------------------------------------------
# algebra suite (per group)


def algebra_checks(group: FiniteGroup, tol: Tolerance, seed: int) -> list[CheckResult]:
    out = []
    g = group
    n = g.order
    rng = cell_rng(seed, g.name, "algebra")
    lim = tol.rel_eps

    def law(check_id, anchor, residual):
        t0 = time.perf_counter()
        r = residual()
        out.append(_result(check_id, anchor, g.name, "-", r <= lim, r, t0))

    def rand_pairs():
        return (alg.random_element(g, rng), alg.random_element(g, rng))

    def gamma_hom():
        worst = 0.0
        for _ in range(N_RANDOM):
            x, y = rand_pairs()
            s = max(1.0, opnorm(alg.embed(x)) * opnorm(alg.embed(y)))
            worst = max(
                worst,
                opnorm(alg.coproduct(x) @ alg.coproduct(y) - alg.coproduct(x @ y)) / s,
                opnorm(alg.coproduct(x.adjoint()) - alg.coproduct(x).conj().T)
                / max(1.0, opnorm(alg.embed(x))),
            )
        return worst

    law("algebra.gamma_hom", "Γ(xy) = Γ(x)Γ(y), Γ(x*) = Γ(x)*", gamma_hom)

    def gamma_w():
        w = alg.fundamental_w(g)
        worst = 0.0
        for _ in range(N_RANDOM):
            x = alg.random_element(g, rng)
            m = w.conj().T @ kron(np.eye(n), alg.embed(x)) @ w
            worst = max(
                worst, opnorm(m - alg.coproduct(x)) / max(1.0, opnorm(alg.embed(x)))
            )
        return worst

    law("algebra.gamma_w", "Γ(x) = W*(1⊗x)W", gamma_w)
    law("algebra.pentagon", "W₂₃W₁₂ = W₁₂W₁₃W₂₃", lambda: alg.pentagon_residual(g))

    def coassoc():
        worst = 0.0
        for _ in range(N_RANDOM):
            x = alg.random_element(g, rng)
            c2, res = alg.project2(alg.coproduct(x), g)
            gap = alg.coeff_opnorm_bound(
                alg.cop_lift(c2, 1) - alg.cop_lift(c2, 2), g
            )
            worst = max(worst, (gap + res) / max(1.0, opnorm(alg.embed(x))))
        return worst

    law("algebra.coassoc", "(ι⊗Γ)Γ = (Γ⊗ι)Γ", coassoc)

    def antipode_laws():
        worst = 0.0
        for _ in range(N_RANDOM):
            x, y = rand_pairs()
            worst = max(
                worst,
                np.linalg.norm(alg.antipode(alg.antipode(x)).coeffs - x.coeffs),
                abs(alg.haar_trace(alg.antipode(x)) - alg.haar_trace(x)),
                opnorm(
                    alg.embed(alg.antipode(x @ y))
                    - alg.embed(alg.antipode(y) @ alg.antipode(x))
                )
                / max(1.0, opnorm(alg.embed(x)) * opnorm(alg.embed(y))),
            )
        return worst

    law("algebra.antipode", "S² = id, h∘S = h, S(xy) = S(y)S(x)", antipode_laws)

    def trace_laws():
        worst = 0.0
        for _ in range(N_RANDOM):
            x, y = rand_pairs()
            worst = max(worst, abs(alg.haar_trace(x @ y) - alg.haar_trace(y @ x)))
            # faithfulness is an exact identity here: h(x*x) = sum |coeffs|^2
            worst = max(
                worst,
                abs(alg.haar_trace(x.adjoint() @ x) - np.sum(np.abs(x.coeffs) ** 2)),
            )
        return worst

    law("algebra.trace", "h(xy) = h(yx), h(x*x) = Σ|a_g|²", trace_laws)

    def hadamard_laws():
        worst = 0.0
        for _ in range(N_RANDOM):
            x, y = rand_pairs()
            m = kron(alg.embed(alg.antipode(x)), np.eye(n)) @ alg.coproduct(y)
            worst = max(
                worst,
                opnorm(alg.slice_trace_leg(m, g) - alg.embed(alg.hadamard(x, y)))
                / max(1.0, opnorm(alg.embed(x)) * opnorm(alg.embed(y))),
            )
        # positivity preservation on a PSD pair
        p1 = alg.random_positive(g, rng, 0.0)
        p2 = alg.random_positive(g, rng, 0.0)
        had = alg.hadamard(p1, p2)
        ev = np.linalg.eigvalsh(alg.embed(had))
        worst = max(worst, max(0.0, -float(ev[0])))
        return worst

    law("algebra.hadamard", "v∗u = (h⊗ι)((S(v)⊗1)Γ(u)), PSD∗PSD ⪰ 0", hadamard_laws)

    def module_duality():
        worst = 0.0
        for _ in range(N_RANDOM):
            x = alg.random_element(g, rng)
            f = alg.random_function(g, rng)
            tf = alg.module_action(x, f)
            for s in range(n):
                lhs = alg.duality_pair(alg.lam(g, s), tf)
                rhs = alg.duality_pair(alg.lam(g, s) @ x, f)
                worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
        return worst

    law("algebra.module", "(λ(s), x·f) = (λ(s)x, f)", module_duality)

    def banach():
        worst = 0.0
        for _ in range(N_RANDOM):
            u = alg.random_function(g, rng)
            v = alg.random_function(g, rng)
            gap = alg.ag_norm(u.pointwise(v)) - alg.ag_norm(u) * alg.ag_norm(v)
            worst = max(worst, gap)
            x = alg.random_element(g, rng)
            gap2 = abs(alg.duality_pair(x, u)) - opnorm(alg.embed(x)) * alg.ag_norm(u)
            worst = max(worst, gap2)
        return worst

    law("algebra.banach", "‖uv‖_A ≤ ‖u‖_A‖v‖_A, |(x,u)| ≤ ‖x‖·‖u‖_A", banach)
    return out


# ---------------------------------------------------------------------------
# weights suite (per (group, weight))


def weight_checks(
    group: FiniteGroup,
    entry: CatalogWeight,
    record: wt.WeightInverse,
    tol: Tolerance,
    seed: int,
) -> list[CheckResult]:
    out = []
    gname, wname = group.name, entry.id

    t0 = time.perf_counter()
    out.append(
        _result("weights.iw", "ωω*⊗ωω* ≤ Γ(ωω*)", gname, wname,
                record.margin_iw >= -tol.zero(), record.margin_iw, t0)
    )
    t0 = time.perf_counter()
    cert = min(record.kernel_certificates)
    out.append(
        _result("weights.kernel", "ker ω = ker ω* = {0}", gname, wname,
                cert > tol.zero(), cert, t0)
    )
    t0 = time.perf_counter()
    r = record.diagnostics["weight_eq_residual"]
    out.append(
        _result("weights.weight_eq", "ω⊗ω = Γ(ω)Ω", gname, wname,
                r <= tol.residual(), r, t0)
    )
    t0 = time.perf_counter()
    over = max(
        record.diagnostics["cocycle_norm"] - 1.0, record.diagnostics["omega_norm"] - 1.0
    )
    out.append(
        _result("weights.contraction", "‖Ω‖ ≤ 1, ‖ω‖ ≤ 1", gname, wname,
                over <= tol.zero(), over, t0)
    )
    t0 = time.perf_counter()
    r = record.diagnostics["two_cocycle_residual"]
    out.append(
        _result("weights.two_cocycle", "(ι⊗Γ)(Ω)(1⊗Ω) = (Γ⊗ι)(Ω)(Ω⊗1)", gname, wname,
                r <= tol.residual(), r, t0)
    )
    t0 = time.perf_counter()
    sym = tw.cocycle_symmetry_check(record.cocycle, group, tol)
    out.append(
        _result("weights.symmetry", "flip(Ω) = Ω", gname, wname,
                sym.residual <= 1e-12, sym.residual, t0)
    )

    if entry.is_central:
        t0 = time.perf_counter()
        m = wt.swift_margin(record.omega, tol)
        out.append(
            _result("weights.swift", "(S(ω)⊗1)Γ(ω) ≤ 1⊗ω", gname, wname,
                    m >= -tol.zero(), m, t0)
        )
    if entry.is_central or entry.is_extended_central:
        t0 = time.perf_counter()
        r = wt.cocycle_normality(record)
        out.append(
            _result("weights.normality", "ΩΩ* = Ω*Ω", gname, wname,
                    r <= tol.zero(), r, t0)
        )

    t0 = time.perf_counter()
    absw, unit = wt.polar_weight(record.omega, tol)
    polar_res = opnorm(
        alg.embed(record.omega.adjoint()) - alg.embed(unit) @ alg.embed(absw)
    )
    polar_ok = wt.verify_weight_inverse(absw, tol).is_weight_inverse
    out.append(
        _result("weights.polar", "ω* = U|ω*|, |ω*| again a weight inverse", gname,
                wname, polar_ok and polar_res <= tol.residual(), polar_res, t0)
    )

    # fractional powers apply to the positive representative |ω*|
    t0 = time.perf_counter()
    positive = wt.weight_inverse(absw, tol)
    inter = wt.intertwine_residual(positive, 0.5, 1.0, tol)
    out.append(
        _result("weights.loewner", "Γ(ω^s)Ω_t = Ω_{t−s}(ω^s⊗ω^s)", gname, wname,
                inter <= tol.residual(), inter, t0)
    )

    t0 = time.perf_counter()
    shifted = wt.weight_inverse(record.omega.translate(1 % group.order), tol)
    eq = wt.weight_equivalence(shifted, record, tol)
    out.append(
        _result("weights.equivalence", "ω₁ = ω₂a ⇒ Γ(a)Ω₁ = Ω₂(a⊗a)", gname, wname,
                eq.invertible and eq.cocycle_relation_residual <= tol.residual(),
                eq.cocycle_relation_residual, t0)
    )
    return out


# ---------------------------------------------------------------------------
# beurling suite (per (group, weight))


def beurling_checks(
    group: FiniteGroup,
    entry: CatalogWeight,
    record: wt.WeightInverse,
    tol: Tolerance,
    seed: int,
) -> list[CheckResult]:
    out = []
    g = group
    rng = cell_rng(seed, g.name, entry.id, "beurling")
    algebra = tw.TwistedAlgebra(record)
    lim = tol.rel_eps

    def law(check_id, anchor, residual):
        t0 = time.perf_counter()
        r = residual()
        out.append(_result(check_id, anchor, g.name, entry.id, r <= lim, r, t0))

    def assoc_comm():
        worst = 0.0
        for _ in range(N_RANDOM):
            u, v, w3 = (alg.random_function(g, rng) for _ in range(3))
            s = max(
                1.0,
                float(
                    np.linalg.norm(u.values)
                    * np.linalg.norm(v.values)
                    * np.linalg.norm(w3.values)
                ),
            )
            left = algebra.product(algebra.product(u, v), w3)
            right = algebra.product(u, algebra.product(v, w3))
            worst = max(worst, float(np.linalg.norm(left.values - right.values)) / s)
            comm = algebra.product(u, v).values - algebra.product(v, u).values
            worst = max(worst, float(np.linalg.norm(comm)) / s)
        return worst

    law("beurling.product", "u·v associative and commutative", assoc_comm)

    def banach():
        worst = 0.0
        for _ in range(N_RANDOM):
            u = alg.random_function(g, rng)
            v = alg.random_function(g, rng)
            worst = max(
                worst,
                alg.ag_norm(algebra.product(u, v)) - alg.ag_norm(u) * alg.ag_norm(v),
            )
        return max(worst, 0.0)

    law("beurling.banach", "‖u·v‖_A ≤ ‖u‖_A‖v‖_A", banach)

    def model():
        worst = 0.0
        for _ in range(N_RANDOM):
            u = alg.random_function(g, rng)
            v = alg.random_function(g, rng)
            lhs = algebra.weighted_function(u).values * algebra.weighted_function(v).values
            rhs = algebra.weighted_function(algebra.product(u, v)).values
            worst = max(
                worst,
                float(np.linalg.norm(lhs - rhs))
                / max(1.0, float(np.linalg.norm(u.values) * np.linalg.norm(v.values))),
            )
        return worst

    law("beurling.model", "(ωu)(ωv) = ω(u·v) pointwise", model)

    def norm_unit():
        ind = alg.AFunction(g, np.eye(g.order)[g.identity])
        return abs(algebra.norm(algebra.weighted_function(ind)) - 1.0)

    law("beurling.weighted_norm", "‖ω·1_{e}‖_ω = 1", norm_unit)

    def representation():
        worst = 0.0
        wm = alg.embed(record.omega)
        for _ in range(N_RANDOM):
            u = alg.random_function(g, rng)
            v = alg.random_function(g, rng)
            s = max(1.0, float(np.linalg.norm(u.values) * np.linalg.norm(v.values)))
            lu, lv = algebra.represent(u), algebra.represent(v)
            luv = algebra.represent(algebra.product(u, v))
            worst = max(worst, opnorm(lu @ lv - luv) / s)
            wf = algebra.weighted_function(u)
            m_check = np.diag(wf.values[g.inverse])
            worst = max(
                worst,
                opnorm(wm @ lu - m_check @ wm) / max(1.0, float(np.linalg.norm(u.values))),
            )
        return worst

    law("beurling.lambda", "λ_Ω(u·v) = λ_Ω(u)λ_Ω(v), ωλ_Ω(f) = M_{(ωf)ˇ}ω", representation)
    return out


# ---------------------------------------------------------------------------
# spectrum suite


def spectrum_checks(
    group: FiniteGroup,
    entry: CatalogWeight,
    record: wt.WeightInverse,
    tol: Tolerance,
    seed: int,
    n_starts: int,
) -> list[CheckResult]:
    out = []
    gname, wname = group.name, entry.id
    rng = cell_rng(seed, gname, wname, "spectrum")

    t0 = time.perf_counter()
    cands = sp.candidates(record)
    worst = max(p.residual for p in cands)
    out.append(
        _result("spectrum.candidates", "Γ(λ(s)ω)Ω = λ(s)ω ⊗ λ(s)ω", gname, wname,
                worst <= 1e-10, worst, t0)
    )

    t0 = time.perf_counter()
    report = sp.completeness_probe(record, n_starts=n_starts, tol=tol, seed=seed)
    ok = report.complete and len(report.probe_solutions) == group.order
    out.append(
        _result("spectrum.complete", "spec A(G,ω) = {λ(s)ω : s ∈ G}", gname, wname,
                ok, float(len(report.probe_solutions)), t0)
    )

    t0 = time.perf_counter()
    worst = max(
        (sp.antipode_invariant(x, record) for x in report.probe_solutions),
        default=float("nan"),
    )
    out.append(
        _result("spectrum.antipode", "S(σ)σ = S(ω)ω", gname, wname,
                worst <= 1e-9, worst, t0)
    )

    t0 = time.perf_counter()
    worst = 0.0
    for x in report.probe_solutions:
        chk = wt.verify_weight_inverse(x, tol)
        worst = max(worst, -chk.margin, tol.zero() - min(chk.kernel_certificates))
    out.append(
        _result("spectrum.points_are_weights", "σ ∈ spec ⇒ σ a weight inverse",
                gname, wname, worst <= tol.zero(), worst, t0)
    )

    t0 = time.perf_counter()
    worst = max(
        (sp.polar_part_residual(x, record, tol) for x in report.probe_solutions),
        default=float("nan"),
    )
    out.append(
        _result("spectrum.polar_part", "|T_σ| = 1", gname, wname,
                worst <= tol.residual(), worst, t0)
    )

    t0 = time.perf_counter()
    vp = sp.verify_point(cands[rng.integers(len(cands))].sigma, record, tol, rng)
    out.append(
        _result("spectrum.functional", "(σ,u)(σ,v) = (σ, u·v)", gname, wname,
                vp.functional_residual <= tol.residual(), vp.functional_residual, t0)
    )

    if entry.kind == "extended":
        t0 = time.perf_counter()
        embedding, base_group, base_rec = base_weight_of(entry, tol)
        base_cands = [p.sigma for p in sp.candidates(base_rec)]
        worst = 0.0
        for x in report.probe_solutions:
            best = np.inf
            for s in range(group.order):
                rest = (alg.lam(group, group.inv(s)) @ x).coeffs
                for bc in base_cands:
                    lifted = np.zeros(group.order, dtype=complex)
                    lifted[embedding] = bc.coeffs
                    best = min(best, float(np.linalg.norm(rest - lifted)))
            worst = max(worst, best)
        out.append(
            _result("spectrum.reduction", "σ = λ_G(s)·ι_H(σ̃)", gname, wname,
                    worst <= 1e-6, worst, t0)
        )
    return out


def grouplike_check(
    group: FiniteGroup, tol: Tolerance, seed: int, n_starts: int
) -> CheckResult:
    t0 = time.perf_counter()
    # basins of the identity-cocycle system shrink with the order; scale the
    # start budget so every permutation solution is reached
    n_starts = max(n_starts, 250 * group.order)
    sols = sp.grouplike_solve(group, n_starts=n_starts, tol=tol, seed=seed)
    ok = len(sols) == group.order and all(
        any(
            np.linalg.norm(s.coeffs - alg.lam(group, h).coeffs) < 1e-8
            for h in range(group.order)
        )
        for s in sols
    )
    return _result(
        "spectrum.grouplike", "Γ(T) = T⊗T, T ≠ 0 ⇒ T ∈ λ(G)", group.name, "-",
        ok, float(len(sols)), t0
    )


# ---------------------------------------------------------------------------
# classify suite


def classify_checks(
    group: FiniteGroup,
    entry: CatalogWeight,
    record: wt.WeightInverse,
    tol: Tolerance,
    seed: int,
) -> list[CheckResult]:
    out = []
    g = group
    gname, wname = g.name, entry.id
    rng = cell_rng(seed, gname, wname, "classify")

    t0 = time.perf_counter()
    dec = cl.decompose(record.omega, tol)
    ok = (
        dec.subgroup.elements == (g.identity,)
        and dec.invertible
        and dec.reconstruction_residual <= tol.residual()
    )
    out.append(
        _result("classify.weight_trivial_h", "weight inverse ⇒ H = {e}, ω invertible",
                gname, wname, ok, dec.reconstruction_residual, t0)
    )

    t0 = time.perf_counter()
    w = record.omega @ record.omega.adjoint()
    rep = cl.hadamard_inequalities(w, tol)
    margin = min(min(rep.lower_margins), min(rep.upper_margins))
    out.append(
        _result("classify.hadamard_ineq", "αw ≤ w∗w ≤ w, α = h(S(w)w)", gname, wname,
                rep.alpha > 0 and margin >= -tol.zero(), margin, t0)
    )

    t0 = time.perf_counter()
    prep = cl.predual_weight_check(w, tol)
    margin = min(prep.pd_margin, prep.pd_defect_margin, prep.module_margin)
    out.append(
        _result("classify.predual", "ŵ and ŵ−ŵ² positive definite, ŵ·w again squared",
                gname, wname, margin >= -tol.zero(), margin, t0)
    )

    t0 = time.perf_counter()
    v = alg.random_element(g, rng)
    conv = alg.hadamard(alg.antipode(v), v)
    sres = float(np.linalg.norm(alg.antipode(conv).coeffs - conv.coeffs))
    out.append(
        _result("classify.s_invariance", "S(S(v)∗v) = S(v)∗v", gname, wname,
                sres <= tol.zero(float(np.linalg.norm(v.coeffs)) ** 2), sres, t0)
    )

    t0 = time.perf_counter()
    worst = 0.0
    subs = enumerate_subgroups(g)
    for sub in subs[: min(3, len(subs))]:
        p = alg.subgroup_projection(sub)
        had = alg.hadamard(w, p)
        m = alg.embed(had)
        worst = max(
            worst,
            -psd_margin(m, tol),
            -psd_margin(alg.coproduct(had) - kron(m, m), tol),
        )
    out.append(
        _result("classify.hadamard_closure", "w₁∗w₂ again a squared partial weight",
                gname, wname, worst <= tol.zero(), worst, t0)
    )
    return out


def classify_group_checks(
    group: FiniteGroup, tol: Tolerance, seed: int, trials: int = 2
) -> list[CheckResult]:
    out = []
    g = group
    rng = cell_rng(seed, g.name, "classify-group")
    subs = enumerate_subgroups(g)

    t0 = time.perf_counter()
    worst = 0.0
    ok = True
    for sub in subs:
        p = alg.subgroup_projection(sub)
        try:
            glp = cl.grouplike_projection_check(p, tol)
            ok &= glp.subgroup.elements == sub.elements
            worst = max(worst, glp.grouplike_residual, glp.antipode_residual)
        except (cl.GroupLikeError, cl.DecompositionError):
            ok = False
    out.append(
        _result("classify.grouplike_projections",
                "(P_H⊗1)Γ(P_H) = P_H⊗P_H, S(P_H) = P_H", g.name, "-", ok, worst, t0)
    )

    t0 = time.perf_counter()
    ok = True
    worst = 0.0
    for sub in subs:
        for _ in range(trials):
            t_el = alg.random_positive(g, rng)
            u_el = alg.random_unitary(g, rng)
            _, omega = cl.synthesize(sub, t_el, u_el, tol)
            dec = cl.decompose(omega, tol)
            ok &= dec.subgroup.elements == sub.elements
            worst = max(worst, dec.reconstruction_residual)
    out.append(
        _result("classify.roundtrip", "ω = αP_H T P_H U ⇒ decompose recovers H",
                g.name, "-", ok and worst <= tol.residual(), worst, t0)
    )
    return out


# ---------------------------------------------------------------------------
# orchestration


def run_all(
    triples: list[tuple[FiniteGroup, CatalogWeight, wt.WeightInverse]],
    suites: tuple[str, ...] = SUITE_IDS,
    tol: Tolerance = DEFAULT_TOL,
    seed: int = 42,
    n_starts: int = 200,
) -> list[CheckResult]:
    """Run the selected suites over resolved (group, entry, record) cells.

    Group-level checks run once per distinct group; results come back
    sorted by (check id, group, weight) so reports are order-independent.
    """
    unknown = set(suites) - set(SUITE_IDS)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")
    results: list[CheckResult] = []
    groups: dict[str, FiniteGroup] = {}
    for g, _, _ in triples:
        groups.setdefault(g.name, g)

    if "algebra" in suites:
        for g in groups.values():
            results.extend(algebra_checks(g, tol, seed))
    if "weights" in suites:
        for g, entry, record in triples:
            results.extend(weight_checks(g, entry, record, tol, seed))
    if "beurling" in suites:
        for g, entry, record in triples:
            results.extend(beurling_checks(g, entry, record, tol, seed))
    if "spectrum" in suites:
        for g, entry, record in triples:
            results.extend(spectrum_checks(g, entry, record, tol, seed, n_starts))
        for g in groups.values():
            results.append(grouplike_check(g, tol, seed, n_starts))
    if "classify" in suites:
        for g, entry, record in triples:
            results.extend(classify_checks(g, entry, record, tol, seed))
        for g in groups.values():
            results.extend(classify_group_checks(g, tol, seed))

    results.sort(key=lambda r: (r.check_id, r.group, r.weight))
    return results
